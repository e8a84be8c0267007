#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "upset_alt/api.hpp"

namespace py = pybind11;
using namespace upset_alt;

namespace {

SetDataset load_dataset(const ConfigDocument& document, const std::optional<std::string>& data,
                        const std::string& data_format, std::vector<std::string>& warnings) {
    const auto format_of = [&](std::string_view text) {
        if (data_format == "csv") return DataFormat::csv;
        if (data_format == "json") return DataFormat::json;
        return sniff_format(text);
    };
    if (data) {
        auto parsed = parse_dataset(*data, format_of(*data));
        warnings.insert(warnings.end(), parsed.warnings.begin(), parsed.warnings.end());
        return std::move(parsed.value);
    }
    if (!document.data) throw Error(ErrorCategory::syntax, "MissingData", "no data given", "data");
    std::string text = document.data->content;
    auto format = document.data->kind == DataSource::Kind::inline_csv ? DataFormat::csv : DataFormat::json;
    if (document.data->kind == DataSource::Kind::file_reference) {
        std::ifstream in(document.data->content, std::ios::binary);
        if (!in) throw Error(ErrorCategory::syntax, "FileNotFound", "cannot read '" + text + "'", "data");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
        format = format_of(text);
    }
    auto parsed = parse_dataset(text, format);
    warnings.insert(warnings.end(), parsed.warnings.begin(), parsed.warnings.end());
    return std::move(parsed.value);
}

py::dict describe_py(const std::string& config, const std::optional<std::string>& data, const std::string& data_format,
                     bool bullets, bool glossary, std::optional<int> top_k) {
    auto document = parse_config_document(config);
    std::vector<std::string> warnings = document.warnings;
    const auto dataset = load_dataset(document, data, data_format, warnings);
    const auto plot = resolve_config(document, dataset);
    DescriptionOptions options;
    options.bullets = bullets;
    options.glossary = glossary;
    options.top_k = top_k;
    const auto doc = describe(dataset, plot, options);
    warnings.insert(warnings.end(), doc.warnings.begin(), doc.warnings.end());

    py::dict out;
    out["short_description"] = doc.short_text;
    out["long_description"] = doc.long_markdown;
    out["warnings"] = warnings;
    out["engine_version"] = std::string(engine_version());
    return out;
}

std::string analyze_py(const std::string& config, const std::optional<std::string>& data,
                       const std::string& data_format) {
    auto document = parse_config_document(config);
    std::vector<std::string> warnings;
    const auto dataset = load_dataset(document, data, data_format, warnings);
    return report_to_json(analyze(dataset, resolve_config(document, dataset)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Text descriptions for UpSet plots";

    static py::exception<Error> error_type(m, "UpsetAltError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetObject(error_type.ptr(), py::make_tuple(e.code(), e.what(), e.path()).ptr());
        }
    });

    m.def("engine_version", [] { return std::string(engine_version()); });
    m.def("describe", &describe_py, py::arg("config"), py::arg("data") = py::none(), py::arg("data_format") = "auto",
          py::arg("bullets") = true, py::arg("glossary") = true, py::arg("top_k") = py::none());
    m.def("analyze", &analyze_py, py::arg("config"), py::arg("data") = py::none(), py::arg("data_format") = "auto");
    m.def("http_describe", [](const std::string& body) {
        const auto res = http_describe(body, {});
        return py::make_tuple(res.status, res.body);
    });
    m.def("humanize_set_name", &humanize_set_name, py::arg("raw"), py::arg("max_len") = kDefaultMaxNameLength);
    m.def("classify_degree", [](std::size_t degree, std::size_t n_visible) {
        return std::string(to_string(classify_degree(degree, n_visible)));
    });
    m.def("classify_set_sizes", [](const std::vector<std::size_t>& sizes) {
        const auto d = classify_set_sizes(sizes);
        py::dict out;
        out["label"] = std::string(to_string(d.label));
        out["relative_range"] = d.relative_range;
        out["min"] = d.min_size;
        out["max"] = d.max_size;
        return out;
    });
    m.def("fit_distribution", [](const std::vector<double>& sizes) {
        const auto shape = fit_distribution(sizes);
        py::dict out;
        out["label"] = std::string(to_string(shape.label));
        out["family"] = shape.family ? py::object(py::str(std::string(to_string(*shape.family)))) : py::none();
        out["beta"] = shape.beta ? py::object(py::float_(*shape.beta)) : py::none();
        return out;
    });
    m.def("percentile_nearest_rank", [](std::vector<std::size_t> values, int percent) {
        std::sort(values.begin(), values.end());
        return percentile_nearest_rank(values, percent);
    });
    m.def("render_glossary", &render_glossary);
    m.def("config_schema", [] { return std::string(config_schema()); });
}
