#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "upset_alt/api.hpp"

namespace upset_alt {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path, const std::string& flag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCategory::syntax, "FileNotFound", "cannot read '" + path.string() + "'", flag);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

DataFormat format_for(const fs::path& path, std::string_view content) {
    const auto ext = path.extension().string();
    if (ext == ".csv") return DataFormat::csv;
    if (ext == ".json") return DataFormat::json;
    return sniff_format(content);
}

void print_error(std::ostream& err, std::string_view code, std::string_view message, std::string_view path) {
    err << nlohmann::json{{"error", {{"code", code}, {"message", message}, {"path", path}}}}.dump() << '\n';
}

}  // namespace

int cli_run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Describe an UpSet plot as screen-reader friendly text.", "upset-alt"};
    std::string data_path;
    std::string config_path;
    std::string verbosity = "both";
    std::string format = "markdown";
    std::string output_path;
    bool bullets = true;
    bool glossary = true;
    std::optional<int> top_k;

    app.add_option("--data", data_path, "dataset file (.csv membership matrix or .json)")->required();
    app.add_option("--config", config_path, "plot configuration document (.json)");
    app.add_option("--verbosity", verbosity, "which description to print")
        ->check(CLI::IsMember({"short", "long", "both"}));
    app.add_flag("--bullets,!--no-bullets", bullets, "render long-form sentences as list items");
    app.add_flag("--glossary,!--no-glossary", glossary, "append the glossary to the long description");
    app.add_option("--top-k", top_k, "number of largest intersections to list (5-10)");
    app.add_option("--format", format, "output markup")->check(CLI::IsMember({"markdown", "text"}));
    app.add_option("--output", output_path, "write to this file instead of stdout");
    app.set_version_flag("--version", std::string(engine_version()));

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << engine_version() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        print_error(err, "UsageError", e.what(), "");
        return 2;
    }

    try {
        const fs::path data_file(data_path);
        const auto data_text = read_file(data_file, "--data");
        auto dataset = parse_dataset(data_text, format_for(data_file, data_text));

        ConfigDocument document;
        if (!config_path.empty()) document = parse_config_document(read_file(config_path, "--config"));
        if (document.data) document.warnings.push_back("data in the config document is ignored; using --data");
        const auto config = resolve_config(document, dataset.value);

        DescriptionOptions options;
        options.bullets = bullets;
        options.glossary = glossary;
        options.top_k = top_k;
        options.verbosity = verbosity == "short" ? Verbosity::short_only
                            : verbosity == "long" ? Verbosity::long_only
                                                  : Verbosity::both;
        const auto doc = describe(dataset.value, config, options);

        using Warnings = std::vector<std::string>;
        for (const Warnings* list : std::initializer_list<const Warnings*>{&document.warnings, &dataset.warnings,
                                                                            &doc.warnings}) {
            for (const auto& w : *list) err << "warning: " << w << '\n';
        }

        const auto long_text = format == "text" ? markdown_to_plain_text(doc.long_markdown) : doc.long_markdown;
        std::string rendered;
        switch (options.verbosity) {
            case Verbosity::short_only: rendered = doc.short_text + "\n"; break;
            case Verbosity::long_only: rendered = long_text; break;
            case Verbosity::both: rendered = doc.short_text + "\n\n" + long_text; break;
        }

        if (output_path.empty()) {
            out << rendered;
        } else {
            std::ofstream file(output_path, std::ios::binary);
            if (!file || !(file << rendered)) {
                print_error(err, "WriteFailed", "cannot write '" + output_path + "'", "--output");
                return 1;
            }
        }
        return 0;
    } catch (const Error& e) {
        print_error(err, e.code(), e.what(), e.path());
        return 2;
    } catch (const std::exception& e) {
        print_error(err, "InternalError", e.what(), "");
        return 1;
    }
}

}  // namespace upset_alt
