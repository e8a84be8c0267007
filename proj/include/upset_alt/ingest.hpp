#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "upset_alt/model.hpp"

namespace upset_alt {

/// A parsed value plus non-fatal notes about the input.
template <typename T>
struct Parsed {
    T value;
    std::vector<std::string> warnings;
};

enum class DataFormat { csv, json };

/// Where a config document says its data lives.
struct DataSource {
    enum class Kind { inline_json, inline_csv, file_reference };
    Kind kind = Kind::inline_json;
    std::string content;  // JSON text, CSV text, or a relative path
};

/// A config document with its fields extracted but not yet checked
/// against a dataset.
struct ConfigDocument {
    RawPlotConfig config;
    bool has_visible_sets = false;
    std::optional<DataSource> data;
    std::vector<std::string> warnings;
};

/// Binary membership matrix: first column element id, one column per set,
/// cells 0/1 or true/false. Blank lines are skipped.
Parsed<SetDataset> parse_dataset_csv(std::string_view text);

/// Accepts {"sets": {name: [ids...]}, "elements"?: [ids...]} or
/// {"setNames"?: [...], "elements": [{"id": ..., "sets": [...]}]}.
Parsed<SetDataset> parse_dataset_json(std::string_view text);

Parsed<SetDataset> parse_dataset(std::string_view text, DataFormat format);

/// Guesses the format from the first non-space character.
DataFormat sniff_format(std::string_view text);

ConfigDocument parse_config_document(std::string_view text);

/// Validated config. A document without visibleSets shows every set of the
/// dataset in dataset order.
PlotConfig resolve_config(const ConfigDocument& document, const SetDataset& dataset);

/// parse_config_document() followed by resolve_config(); the data key, if
/// any, is ignored.
Parsed<PlotConfig> parse_config(std::string_view text, const SetDataset& dataset);

std::string serialize_dataset_json(const SetDataset& dataset);
std::string serialize_dataset_csv(const SetDataset& dataset);
std::string serialize_config(const PlotConfig& config);

}  // namespace upset_alt
