#include "upset_alt/api.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

#include "upset_alt/version.hpp"

namespace upset_alt {

using json = nlohmann::ordered_json;

std::string_view engine_version() { return kEngineVersion; }

DescriptionDocument describe(const SetDataset& dataset, PlotConfig config, const DescriptionOptions& options) {
    if (options.top_k) {
        auto raw = to_raw(config);
        raw.top_k = options.top_k;
        config = validate_config(raw, dataset);
    }
    const auto report = analyze(dataset, config);
    return generate_description(report, config, options);
}

std::string report_to_json(const PatternReport& report) {
    const auto row_json = [](const Intersection& row) {
        return json{{"sets", row.names}, {"degree", row.degree()}, {"size", row.size}};
    };
    json rows = json::array();
    for (std::size_t i = 0; i < report.table.rows.size(); ++i) {
        auto r = row_json(report.table.rows[i]);
        r["degreeClass"] = to_string(report.degree_classes[i]);
        r["sizeClass"] = to_string(report.sizes.classes[i]);
        rows.push_back(std::move(r));
    }
    json sets = json::array();
    for (const auto& s : report.visible_sets) sets.push_back({{"name", s.name}, {"size", s.size}});

    const auto& dist = report.distribution;
    json residuals = json::object();
    if (dist.fit_residuals.exponential) residuals["exponential"] = *dist.fit_residuals.exponential;
    if (dist.fit_residuals.quadratic) residuals["quadratic"] = *dist.fit_residuals.quadratic;
    if (dist.fit_residuals.linear) residuals["linear"] = *dist.fit_residuals.linear;

    const auto& st = report.stats;
    json association = json::object();
    for (const auto& [degree, classes] : report.association.occupied) {
        json list = json::array();
        for (auto c : classes) list.push_back(to_string(c));
        association[std::string(to_string(degree))] = std::move(list);
    }
    json significant = json::array();
    for (const auto& [size, degree] : report.association.significant) {
        significant.push_back({{"sizeClass", to_string(size)}, {"degreeClass", to_string(degree)}});
    }
    json top = json::array();
    for (const auto& row : report.top.rows) top.push_back(row_json(row));

    json doc{
        {"totalSets", report.total_sets},
        {"totalElements", report.total_elements},
        {"itemLabel", {{"singular", report.item_label.singular}, {"plural", report.item_label.plural}}},
        {"visibleSets", sets},
        {"sortBy", to_string(report.table.sort_by)},
        {"sortOrder", to_string(report.table.sort_order)},
        {"intersections", rows},
        {"setSizeDivergence",
         {{"label", to_string(report.divergence.label)},
          {"relativeRange", report.divergence.relative_range},
          {"min", report.divergence.min_size},
          {"max", report.divergence.max_size}}},
        {"sizeThresholds",
         {{"median", report.sizes.thresholds.median},
          {"q1", report.sizes.thresholds.q1},
          {"q3", report.sizes.thresholds.q3},
          {"fence", report.sizes.thresholds.fence}}},
        {"special",
         {{"allSet", report.special.all_set ? json(*report.special.all_set) : json()},
          {"empty", report.special.empty ? json(*report.special.empty) : json()}}},
        {"distribution",
         {{"label", to_string(dist.label)},
          {"family", dist.family ? json(to_string(*dist.family)) : json()},
          {"beta", dist.beta ? json(*dist.beta) : json()},
          {"residuals", residuals}}},
        {"statistics",
         {{"mean", st.mean},
          {"median", st.median},
          {"p90", st.p90},
          {"p10", st.p10},
          {"largestSet", st.largest_set},
          {"largestSetPresence", st.largest_set_presence},
          {"smallestSet", st.smallest_set},
          {"smallestSetPresence", st.smallest_set_presence},
          {"dominanceFactor", st.dominance_factor ? json(*st.dominance_factor) : json()},
          {"peak", st.peak},
          {"tail", st.tail}}},
        {"degreeSizeAssociation", {{"occupied", association}, {"significant", significant}}},
        {"largestIntersections", top},
        {"majorSets", report.top.major_sets},
        {"otherLargeSets", report.top.other_sets},
    };
    return doc.dump(2);
}

// ---- HTTP ----------------------------------------------------------------

namespace {

Error request_error(std::string code, const std::string& message, std::string path = {}) {
    return Error(ErrorCategory::syntax, std::move(code), message, std::move(path));
}

bool parse_bool(std::string_view text, const std::string& name) {
    std::string v(text);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw request_error("InvalidOption", "option '" + name + "' must be true or false", name);
}

int parse_int(std::string_view text, const std::string& name) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(std::string(text), &used);
        if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
    throw request_error("InvalidOption", "option '" + name + "' must be an integer", name);
}

void apply_option(DescriptionOptions& options, const std::string& name, const std::string& value) {
    if (name == "bullets") {
        options.bullets = parse_bool(value, name);
    } else if (name == "glossary") {
        options.glossary = parse_bool(value, name);
    } else if (name == "topK") {
        options.top_k = parse_int(value, name);
    } else if (name == "verbosity") {
        if (value != "short" && value != "long" && value != "both") {
            throw request_error("InvalidOption", "verbosity must be short, long or both", name);
        }
    } else {
        throw request_error("InvalidOption", "unknown option '" + name + "'", name);
    }
}

void apply_body_options(DescriptionOptions& options, const json& body_options) {
    if (!body_options.is_object()) throw request_error("InvalidType", "options must be an object", "options");
    for (const auto& [name, value] : body_options.items()) {
        apply_option(options, name, value.is_string() ? value.get<std::string>() : value.dump());
    }
}

}  // namespace

int http_status_for(const Error& error) {
    return error.category() == ErrorCategory::config ? 422 : 400;
}

HttpResponse http_error(int status, std::string_view code, std::string_view message, std::string_view path) {
    json body{{"code", code}, {"message", message}, {"path", path}};
    return HttpResponse{status, "application/json", body.dump()};
}

HttpResponse http_describe(std::string_view body, const QueryParams& query, std::size_t max_body_bytes) {
    if (body.size() > max_body_bytes) {
        return http_error(413, "PayloadTooLarge",
                          "request body exceeds " + std::to_string(max_body_bytes) + " bytes");
    }
    try {
        DescriptionOptions options;
        std::string config_text(body);
        {
            json parsed;
            try {
                parsed = json::parse(body);
            } catch (const json::parse_error& e) {
                throw request_error("SyntaxError", e.what(), "byte " + std::to_string(e.byte));
            }
            if (parsed.is_object() && parsed.contains("config") && parsed["config"].is_object()) {
                config_text = parsed["config"].dump();
                if (parsed.contains("options")) apply_body_options(options, parsed["options"]);
            }
        }
        for (const auto& [name, value] : query) apply_option(options, name, value);

        const auto document = parse_config_document(config_text);
        if (!document.data) throw request_error("MissingData", "inline data is required", "data");
        if (document.data->kind == DataSource::Kind::file_reference) {
            throw request_error("InlineDataRequired", "the service accepts inline data only", "data");
        }
        auto dataset = parse_dataset(document.data->content, document.data->kind == DataSource::Kind::inline_csv
                                                                 ? DataFormat::csv
                                                                 : DataFormat::json);
        const auto config = resolve_config(document, dataset.value);
        auto doc = describe(dataset.value, config, options);

        std::vector<std::string> warnings = document.warnings;
        warnings.insert(warnings.end(), dataset.warnings.begin(), dataset.warnings.end());
        warnings.insert(warnings.end(), doc.warnings.begin(), doc.warnings.end());
        json response{{"shortDescription", doc.short_text},
                      {"longDescription", doc.long_markdown},
                      {"warnings", warnings},
                      {"engineVersion", engine_version()}};
        return HttpResponse{200, "application/json", response.dump()};
    } catch (const Error& e) {
        return http_error(http_status_for(e), e.code(), e.what(), e.path());
    } catch (const std::exception& e) {
        return http_error(500, "InternalError", e.what());
    }
}

HttpResponse http_health() { return HttpResponse{200, "text/plain", "ok"}; }

HttpResponse http_schema() { return HttpResponse{200, "application/schema+json", std::string(config_schema())}; }

}  // namespace upset_alt
