#include "upset_alt/intersections.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "upset_alt/error.hpp"

namespace upset_alt {

std::size_t IntersectionTable::total_size() const noexcept {
    return std::accumulate(rows.begin(), rows.end(), std::size_t{0},
                           [](std::size_t acc, const Intersection& row) { return acc + row.size; });
}

IntersectionTable compute_table(const SetDataset& dataset, const PlotConfig& config) {
    if (dataset.element_count() == 0) {
        throw Error(ErrorCategory::config, "EmptyDataset", "the dataset has no elements", "data");
    }

    // dataset set index -> position in visible_sets
    std::vector<std::optional<std::size_t>> visible_pos(dataset.set_count());
    for (std::size_t v = 0; v < config.visible_sets.size(); ++v) {
        const auto idx = dataset.set_index(config.visible_sets[v]);
        if (!idx) {
            throw Error(ErrorCategory::config, "UnknownVisibleSet",
                        "visible set '" + config.visible_sets[v] + "' is not in the dataset",
                        "visibleSets[" + std::to_string(v) + "]");
        }
        visible_pos[*idx] = v;
    }

    std::map<std::vector<std::size_t>, std::size_t> counts;
    std::vector<std::size_t> key;
    for (const auto& sets : dataset.membership) {
        key.clear();
        for (auto s : sets) {
            if (visible_pos[s]) key.push_back(*visible_pos[s]);
        }
        std::sort(key.begin(), key.end());
        ++counts[key];
    }

    IntersectionTable table;
    table.n_visible = config.visible_sets.size();
    table.rows.reserve(counts.size());
    for (const auto& [members, size] : counts) {
        Intersection row;
        row.members = members;
        row.size = size;
        row.names.reserve(members.size());
        for (auto m : members) row.names.push_back(config.visible_sets[m]);
        table.rows.push_back(std::move(row));
    }
    return sort_intersections(std::move(table), config.sort_by, config.sort_order);
}

IntersectionTable sort_intersections(IntersectionTable table, SortKey sort_by, SortOrder sort_order) {
    const auto key = [sort_by](const Intersection& row) {
        return sort_by == SortKey::size ? row.size : row.degree();
    };
    std::stable_sort(table.rows.begin(), table.rows.end(), [&](const Intersection& a, const Intersection& b) {
        const auto ka = key(a);
        const auto kb = key(b);
        if (ka != kb) return sort_order == SortOrder::ascending ? ka < kb : ka > kb;
        if (a.degree() != b.degree()) return a.degree() > b.degree();
        return a.names < b.names;
    });
    table.sort_by = sort_by;
    table.sort_order = sort_order;
    return table;
}

SpecialIntersections detect_special(const IntersectionTable& table, std::size_t n_visible) {
    SpecialIntersections special;
    for (const auto& row : table.rows) {
        if (row.size == 0) continue;
        if (row.degree() == 0) {
            special.empty = row.size;
        } else if (n_visible >= 2 && row.degree() == n_visible) {
            special.all_set = row.size;
        }
    }
    return special;
}

}  // namespace upset_alt
