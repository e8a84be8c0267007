#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace upset_alt {

/// Singular and plural form of a noun, e.g. {"movie", "movies"}.
struct NounPair {
    std::string singular;
    std::string plural;

    bool operator==(const NounPair&) const = default;
};

inline const NounPair kDefaultItemLabel{"element", "elements"};

/// One element of an unvalidated dataset, with set membership given by name.
struct RawElement {
    std::string id;
    std::vector<std::string> sets;
};

/// Dataset as produced by a parser, before invariants are checked.
struct RawSetDataset {
    std::vector<std::string> set_names;
    std::vector<RawElement> elements;
    std::optional<NounPair> item_label;
    std::optional<std::string> set_noun;
};

/// Validated set-typed data. Immutable by convention once returned from
/// validate_dataset().
struct SetDataset {
    std::vector<std::string> element_ids;
    std::vector<std::string> set_names;
    // membership[i] lists indices into set_names for element_ids[i], ascending.
    std::vector<std::vector<std::size_t>> membership;
    std::optional<NounPair> item_label;
    std::optional<std::string> set_noun;

    std::size_t element_count() const noexcept { return element_ids.size(); }
    std::size_t set_count() const noexcept { return set_names.size(); }
    std::optional<std::size_t> set_index(std::string_view name) const;
    /// Number of elements in each set, aligned with set_names.
    std::vector<std::size_t> set_sizes() const;

    bool operator==(const SetDataset&) const = default;
};

enum class SortKey { size, degree };
enum class SortOrder { ascending, descending };
enum class Direction { horizontal, vertical };

std::string_view to_string(SortKey key);
std::string_view to_string(SortOrder order);
std::string_view to_string(Direction direction);

inline constexpr int kMinTopK = 5;
inline constexpr int kMaxTopK = 10;

/// Plot-state configuration before defaults are filled in.
struct RawPlotConfig {
    std::vector<std::string> visible_sets;
    std::optional<SortKey> sort_by;
    std::optional<SortOrder> sort_order;
    std::optional<Direction> direction;
    std::optional<std::string> title;
    std::optional<std::string> caption;
    std::optional<int> top_k;
    std::optional<NounPair> item_label;
    std::optional<std::string> set_noun;
    // Retained but never read by the analysis: key -> serialized JSON value.
    std::vector<std::pair<std::string, std::string>> unsupported;
};

struct PlotConfig {
    std::vector<std::string> visible_sets;
    SortKey sort_by = SortKey::size;
    SortOrder sort_order = SortOrder::descending;
    Direction direction = Direction::horizontal;
    std::optional<std::string> title;
    std::optional<std::string> caption;
    int top_k = kMinTopK;
    std::optional<NounPair> item_label;
    std::optional<std::string> set_noun;
    std::vector<std::pair<std::string, std::string>> unsupported;

    bool operator==(const PlotConfig&) const = default;
};

/// Checks identifier uniqueness and referential integrity. Identifiers are
/// trimmed of surrounding whitespace; a set listed twice for one element
/// counts once.
SetDataset validate_dataset(const RawSetDataset& raw);

/// Validates visible sets and top_k against the dataset and fills defaults.
PlotConfig validate_config(const RawPlotConfig& raw, const SetDataset& dataset);

RawSetDataset to_raw(const SetDataset& dataset);
RawPlotConfig to_raw(const PlotConfig& config);

/// Item noun in effect: the config label, else the dataset label, else "element(s)".
NounPair effective_item_label(const SetDataset& dataset, const PlotConfig& config);
std::optional<std::string> effective_set_noun(const SetDataset& dataset, const PlotConfig& config);

std::string trim(std::string_view text);

}  // namespace upset_alt
