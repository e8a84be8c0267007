#include "upset_alt/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "upset_alt/error.hpp"

namespace upset_alt {

using json = nlohmann::ordered_json;

namespace {

Error syntax_error(std::string code, const std::string& message, std::string path = {}) {
    return Error(ErrorCategory::syntax, std::move(code), message, std::move(path));
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw syntax_error("SyntaxError", e.what(), "byte " + std::to_string(e.byte));
    }
}

std::string_view strip_bom(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    return text;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// ---- CSV -----------------------------------------------------------------

struct CsvRecord {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

std::vector<CsvRecord> split_csv(std::string_view text) {
    std::vector<CsvRecord> records;
    CsvRecord current;
    std::string field;
    bool quoted = false;
    bool any = false;
    std::size_t line = 1;
    current.line = 1;

    const auto end_record = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        const bool blank = current.fields.size() == 1 && trim(current.fields[0]).empty() && !any;
        if (!blank) records.push_back(std::move(current));
        current = CsvRecord{};
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                any = true;
                break;
            case ',':
                current.fields.push_back(std::move(field));
                field.clear();
                any = true;
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                ++line;
                current.line = line;
                break;
            default:
                field += c;
        }
    }
    if (quoted) throw Error(ErrorCategory::data, "MalformedRow", "unterminated quoted field", "line " + std::to_string(current.line));
    if (!field.empty() || !current.fields.empty() || any) end_record();
    return records;
}

std::string csv_escape(const std::string& value) {
    if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// ---- JSON helpers ----------------------------------------------------------

std::string expect_string(const json& value, const std::string& path) {
    if (!value.is_string()) throw syntax_error("InvalidType", path + " must be a string", path);
    return value.get<std::string>();
}

std::vector<std::string> expect_string_array(const json& value, const std::string& path) {
    if (!value.is_array()) throw syntax_error("InvalidType", path + " must be an array of strings", path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(expect_string(value[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::optional<std::string> optional_string(const json& object, const char* key) {
    const auto it = object.find(key);
    if (it == object.end() || it->is_null()) return std::nullopt;
    return expect_string(*it, key);
}

std::optional<NounPair> parse_item_label(const json& object) {
    const auto it = object.find("itemLabel");
    if (it == object.end() || it->is_null()) return std::nullopt;
    if (!it->is_object()) throw syntax_error("InvalidType", "itemLabel must be an object", "itemLabel");
    NounPair label;
    label.singular = trim(expect_string(it->value("singular", json()), "itemLabel.singular"));
    label.plural = trim(expect_string(it->value("plural", json()), "itemLabel.plural"));
    if (label.singular.empty() || label.plural.empty()) {
        throw syntax_error("InvalidValue", "itemLabel nouns must be non-empty", "itemLabel");
    }
    return label;
}

template <typename Enum>
Enum parse_enum(const json& value, const char* key, std::string code,
                std::initializer_list<std::pair<std::string_view, Enum>> choices) {
    const auto text = expect_string(value, key);
    for (const auto& [name, e] : choices) {
        if (text == name) return e;
    }
    throw syntax_error(std::move(code), "unsupported " + std::string(key) + " '" + text + "'", key);
}

const std::set<std::string, std::less<>> kUnusedKeys = {"aggregation", "attributes", "queries"};
const std::set<std::string, std::less<>> kConfigKeys = {"$schema",  "data",    "visibleSets", "sortBy",
                                                        "sortOrder", "direction", "title",       "caption",
                                                        "itemLabel", "setNoun", "topK"};

}  // namespace

Parsed<SetDataset> parse_dataset_csv(std::string_view text) {
    const auto records = split_csv(strip_bom(text));
    if (records.empty() || records.front().fields.empty() || trim(records.front().fields[0]).empty()) {
        throw Error(ErrorCategory::data, "EmptyHeader", "the CSV header row is missing or empty", "line 1");
    }
    const auto& header = records.front().fields;

    RawSetDataset raw;
    raw.set_names.assign(header.begin() + 1, header.end());
    for (auto& name : raw.set_names) name = trim(name);

    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const auto line = "line " + std::to_string(rec.line);
        if (rec.fields.size() != header.size()) {
            throw Error(ErrorCategory::data, "MalformedRow",
                        "expected " + std::to_string(header.size()) + " fields, found " +
                            std::to_string(rec.fields.size()),
                        line);
        }
        RawElement element{trim(rec.fields[0]), {}};
        for (std::size_t c = 1; c < rec.fields.size(); ++c) {
            const auto cell = lower(trim(rec.fields[c]));
            if (cell == "1" || cell == "true") {
                element.sets.push_back(raw.set_names[c - 1]);
            } else if (cell != "0" && cell != "false") {
                throw Error(ErrorCategory::data, "NonBinaryCell",
                            "cell '" + rec.fields[c] + "' is not 0/1 or true/false",
                            line + ", column " + std::to_string(c + 1));
            }
        }
        raw.elements.push_back(std::move(element));
    }
    return {validate_dataset(raw), {}};
}

Parsed<SetDataset> parse_dataset_json(std::string_view text) {
    const auto doc = parse_json(text);
    if (!doc.is_object()) throw syntax_error("SyntaxError", "dataset document must be an object");

    Parsed<SetDataset> result;
    RawSetDataset raw;
    raw.item_label = parse_item_label(doc);
    raw.set_noun = optional_string(doc, "setNoun");

    const auto sets_it = doc.find("sets");
    const auto elements_it = doc.find("elements");
    if (sets_it != doc.end() && sets_it->is_object()) {
        std::vector<std::string> order;
        std::unordered_map<std::string, std::size_t> position;
        const auto touch = [&](const std::string& id) {
            const auto key = trim(id);
            if (position.emplace(key, order.size()).second) order.push_back(key);
            return position[key];
        };
        if (elements_it != doc.end()) {
            for (const auto& id : expect_string_array(*elements_it, "elements")) touch(id);
        }
        std::vector<std::vector<std::string>> membership;
        for (const auto& [name, members] : sets_it->items()) {
            raw.set_names.push_back(name);
            std::unordered_set<std::string> seen;
            for (const auto& id : expect_string_array(members, "sets." + name)) {
                const auto key = trim(id);
                if (!seen.insert(key).second) {
                    result.warnings.push_back("element '" + key + "' is listed more than once in set '" + name +
                                              "'; counted once");
                    continue;
                }
                const auto idx = touch(key);
                if (membership.size() <= idx) membership.resize(idx + 1);
                membership[idx].push_back(name);
            }
        }
        membership.resize(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) raw.elements.push_back({order[i], membership[i]});
    } else if (elements_it != doc.end() && elements_it->is_array()) {
        const auto names_it = doc.find("setNames");
        const bool explicit_names = names_it != doc.end();
        if (explicit_names) raw.set_names = expect_string_array(*names_it, "setNames");
        for (std::size_t i = 0; i < elements_it->size(); ++i) {
            const auto& item = (*elements_it)[i];
            const auto path = "elements[" + std::to_string(i) + "]";
            if (!item.is_object()) throw syntax_error("InvalidType", path + " must be an object", path);
            RawElement element;
            element.id = expect_string(item.value("id", json()), path + ".id");
            if (item.contains("sets")) element.sets = expect_string_array(item["sets"], path + ".sets");
            if (!explicit_names) {
                for (const auto& s : element.sets) {
                    const auto name = trim(s);
                    if (std::find(raw.set_names.begin(), raw.set_names.end(), name) == raw.set_names.end()) {
                        raw.set_names.push_back(name);
                    }
                }
            }
            raw.elements.push_back(std::move(element));
        }
    } else {
        throw syntax_error("SyntaxError", "dataset must contain a 'sets' object or an 'elements' array");
    }
    result.value = validate_dataset(raw);
    return result;
}

DataFormat sniff_format(std::string_view text) {
    text = strip_bom(text);
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string_view::npos && text[pos] == '{' ? DataFormat::json : DataFormat::csv;
}

Parsed<SetDataset> parse_dataset(std::string_view text, DataFormat format) {
    return format == DataFormat::csv ? parse_dataset_csv(text) : parse_dataset_json(text);
}

ConfigDocument parse_config_document(std::string_view text) {
    const auto doc = parse_json(text);
    if (!doc.is_object()) throw syntax_error("SyntaxError", "config document must be an object");

    ConfigDocument out;
    auto& cfg = out.config;
    for (const auto& [key, value] : doc.items()) {
        if (kConfigKeys.count(key)) continue;
        cfg.unsupported.emplace_back(key, value.dump());
        if (kUnusedKeys.count(key)) {
            out.warnings.push_back(key + " not used in descriptions");
        } else {
            out.warnings.push_back("unknown key '" + key + "' ignored");
        }
    }

    if (const auto it = doc.find("visibleSets"); it != doc.end()) {
        cfg.visible_sets = expect_string_array(*it, "visibleSets");
        out.has_visible_sets = true;
    }
    if (const auto it = doc.find("sortBy"); it != doc.end() && !it->is_null()) {
        cfg.sort_by = parse_enum<SortKey>(*it, "sortBy", "UnknownSortKey",
                                          {{"size", SortKey::size}, {"degree", SortKey::degree}});
    }
    if (const auto it = doc.find("sortOrder"); it != doc.end() && !it->is_null()) {
        cfg.sort_order = parse_enum<SortOrder>(
            *it, "sortOrder", "UnknownSortOrder",
            {{"ascending", SortOrder::ascending}, {"descending", SortOrder::descending}});
    }
    if (const auto it = doc.find("direction"); it != doc.end() && !it->is_null()) {
        cfg.direction = parse_enum<Direction>(
            *it, "direction", "UnknownDirection",
            {{"horizontal", Direction::horizontal}, {"vertical", Direction::vertical}});
    }
    cfg.title = optional_string(doc, "title");
    cfg.caption = optional_string(doc, "caption");
    cfg.item_label = parse_item_label(doc);
    cfg.set_noun = optional_string(doc, "setNoun");
    if (const auto it = doc.find("topK"); it != doc.end() && !it->is_null()) {
        if (!it->is_number_integer()) throw syntax_error("InvalidType", "topK must be an integer", "topK");
        const auto k = it->get<long long>();
        cfg.top_k = static_cast<int>(std::clamp<long long>(k, -1, 1000));
    }

    if (const auto it = doc.find("data"); it != doc.end() && !it->is_null()) {
        if (it->is_string()) {
            out.data = DataSource{DataSource::Kind::file_reference, it->get<std::string>()};
        } else if (it->is_object() && it->contains("csv")) {
            out.data = DataSource{DataSource::Kind::inline_csv, expect_string((*it)["csv"], "data.csv")};
        } else if (it->is_object()) {
            out.data = DataSource{DataSource::Kind::inline_json, it->dump()};
        } else {
            throw syntax_error("InvalidType", "data must be an object or a file path", "data");
        }
    }
    return out;
}

PlotConfig resolve_config(const ConfigDocument& document, const SetDataset& dataset) {
    RawPlotConfig raw = document.config;
    if (!document.has_visible_sets) raw.visible_sets = dataset.set_names;
    return validate_config(raw, dataset);
}

Parsed<PlotConfig> parse_config(std::string_view text, const SetDataset& dataset) {
    auto document = parse_config_document(text);
    return {resolve_config(document, dataset), std::move(document.warnings)};
}

std::string serialize_dataset_json(const SetDataset& dataset) {
    json doc;
    doc["setNames"] = dataset.set_names;
    json elements = json::array();
    for (std::size_t i = 0; i < dataset.element_ids.size(); ++i) {
        json sets = json::array();
        for (auto s : dataset.membership[i]) sets.push_back(dataset.set_names[s]);
        elements.push_back({{"id", dataset.element_ids[i]}, {"sets", sets}});
    }
    doc["elements"] = std::move(elements);
    if (dataset.item_label) {
        doc["itemLabel"] = {{"singular", dataset.item_label->singular}, {"plural", dataset.item_label->plural}};
    }
    if (dataset.set_noun) doc["setNoun"] = *dataset.set_noun;
    return doc.dump(2);
}

std::string serialize_dataset_csv(const SetDataset& dataset) {
    std::string out = "id";
    for (const auto& name : dataset.set_names) out += "," + csv_escape(name);
    out += '\n';
    for (std::size_t i = 0; i < dataset.element_ids.size(); ++i) {
        out += csv_escape(dataset.element_ids[i]);
        std::vector<char> row(dataset.set_count(), '0');
        for (auto s : dataset.membership[i]) row[s] = '1';
        for (char c : row) {
            out += ',';
            out += c;
        }
        out += '\n';
    }
    return out;
}

std::string serialize_config(const PlotConfig& config) {
    json doc;
    doc["visibleSets"] = config.visible_sets;
    doc["sortBy"] = std::string(to_string(config.sort_by));
    doc["sortOrder"] = std::string(to_string(config.sort_order));
    doc["direction"] = std::string(to_string(config.direction));
    if (config.title) doc["title"] = *config.title;
    if (config.caption) doc["caption"] = *config.caption;
    if (config.item_label) {
        doc["itemLabel"] = {{"singular", config.item_label->singular}, {"plural", config.item_label->plural}};
    }
    if (config.set_noun) doc["setNoun"] = *config.set_noun;
    doc["topK"] = config.top_k;
    for (const auto& [key, value] : config.unsupported) doc[key] = json::parse(value);
    return doc.dump(2);
}

}  // namespace upset_alt
