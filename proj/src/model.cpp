#include "upset_alt/model.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "upset_alt/error.hpp"

namespace upset_alt {

std::string trim(std::string_view text) {
    constexpr std::string_view kSpace = " \t\r\n\f\v";
    const auto first = text.find_first_not_of(kSpace);
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(kSpace);
    return std::string(text.substr(first, last - first + 1));
}

std::string_view to_string(SortKey key) {
    return key == SortKey::size ? "size" : "degree";
}

std::string_view to_string(SortOrder order) {
    return order == SortOrder::ascending ? "ascending" : "descending";
}

std::string_view to_string(Direction direction) {
    return direction == Direction::horizontal ? "horizontal" : "vertical";
}

std::optional<std::size_t> SetDataset::set_index(std::string_view name) const {
    const auto it = std::find(set_names.begin(), set_names.end(), name);
    if (it == set_names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - set_names.begin());
}

std::vector<std::size_t> SetDataset::set_sizes() const {
    std::vector<std::size_t> sizes(set_names.size(), 0);
    for (const auto& sets : membership) {
        for (auto s : sets) ++sizes[s];
    }
    return sizes;
}

SetDataset validate_dataset(const RawSetDataset& raw) {
    SetDataset out;
    out.item_label = raw.item_label;
    out.set_noun = raw.set_noun;

    std::unordered_map<std::string, std::size_t> set_lookup;
    out.set_names.reserve(raw.set_names.size());
    for (std::size_t i = 0; i < raw.set_names.size(); ++i) {
        auto name = trim(raw.set_names[i]);
        if (name.empty()) {
            throw Error(ErrorCategory::data, "InvalidSetName", "set names must be non-empty",
                        "set_names[" + std::to_string(i) + "]");
        }
        if (!set_lookup.emplace(name, out.set_names.size()).second) {
            throw Error(ErrorCategory::data, "DuplicateSet", "duplicate set '" + name + "'", name);
        }
        out.set_names.push_back(std::move(name));
    }

    std::unordered_set<std::string> seen_ids;
    out.element_ids.reserve(raw.elements.size());
    out.membership.reserve(raw.elements.size());
    for (std::size_t i = 0; i < raw.elements.size(); ++i) {
        const auto& element = raw.elements[i];
        auto id = trim(element.id);
        if (id.empty()) {
            throw Error(ErrorCategory::data, "InvalidElementId", "element ids must be non-empty",
                        "elements[" + std::to_string(i) + "]");
        }
        if (!seen_ids.insert(id).second) {
            throw Error(ErrorCategory::data, "DuplicateElement", "duplicate element '" + id + "'", id);
        }
        std::vector<std::size_t> sets;
        sets.reserve(element.sets.size());
        for (const auto& set_name : element.sets) {
            auto name = trim(set_name);
            const auto it = set_lookup.find(name);
            if (it == set_lookup.end()) {
                throw Error(ErrorCategory::data, "UnknownSetInMembership",
                            "element '" + id + "' references unknown set '" + name + "'", name);
            }
            sets.push_back(it->second);
        }
        std::sort(sets.begin(), sets.end());
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        out.element_ids.push_back(std::move(id));
        out.membership.push_back(std::move(sets));
    }
    return out;
}

PlotConfig validate_config(const RawPlotConfig& raw, const SetDataset& dataset) {
    PlotConfig out;
    if (raw.visible_sets.empty()) {
        throw Error(ErrorCategory::config, "EmptyVisibleSets", "at least one visible set is required",
                    "visibleSets");
    }
    for (std::size_t i = 0; i < raw.visible_sets.size(); ++i) {
        auto name = trim(raw.visible_sets[i]);
        const auto path = "visibleSets[" + std::to_string(i) + "]";
        if (!dataset.set_index(name)) {
            throw Error(ErrorCategory::config, "UnknownVisibleSet", "visible set '" + name + "' is not in the dataset",
                        path);
        }
        if (std::find(out.visible_sets.begin(), out.visible_sets.end(), name) != out.visible_sets.end()) {
            throw Error(ErrorCategory::config, "DuplicateVisibleSet", "visible set '" + name + "' is listed twice",
                        path);
        }
        out.visible_sets.push_back(std::move(name));
    }

    out.top_k = raw.top_k.value_or(kMinTopK);
    if (out.top_k < kMinTopK || out.top_k > kMaxTopK) {
        throw Error(ErrorCategory::config, "TopKOutOfRange",
                    "topK must be between " + std::to_string(kMinTopK) + " and " + std::to_string(kMaxTopK) +
                        ", got " + std::to_string(out.top_k),
                    "topK");
    }

    out.sort_by = raw.sort_by.value_or(SortKey::size);
    out.sort_order = raw.sort_order.value_or(SortOrder::descending);
    out.direction = raw.direction.value_or(Direction::horizontal);
    out.title = raw.title;
    out.caption = raw.caption;
    out.item_label = raw.item_label;
    out.set_noun = raw.set_noun;
    out.unsupported = raw.unsupported;
    return out;
}

RawSetDataset to_raw(const SetDataset& dataset) {
    RawSetDataset raw;
    raw.set_names = dataset.set_names;
    raw.item_label = dataset.item_label;
    raw.set_noun = dataset.set_noun;
    raw.elements.reserve(dataset.element_ids.size());
    for (std::size_t i = 0; i < dataset.element_ids.size(); ++i) {
        RawElement element{dataset.element_ids[i], {}};
        for (auto s : dataset.membership[i]) element.sets.push_back(dataset.set_names[s]);
        raw.elements.push_back(std::move(element));
    }
    return raw;
}

RawPlotConfig to_raw(const PlotConfig& config) {
    return RawPlotConfig{config.visible_sets, config.sort_by,   config.sort_order, config.direction,
                         config.title,        config.caption,   config.top_k,      config.item_label,
                         config.set_noun,     config.unsupported};
}

NounPair effective_item_label(const SetDataset& dataset, const PlotConfig& config) {
    if (config.item_label) return *config.item_label;
    if (dataset.item_label) return *dataset.item_label;
    return kDefaultItemLabel;
}

std::optional<std::string> effective_set_noun(const SetDataset& dataset, const PlotConfig& config) {
    if (config.set_noun) return config.set_noun;
    return dataset.set_noun;
}

}  // namespace upset_alt
