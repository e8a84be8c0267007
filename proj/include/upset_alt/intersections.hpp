#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "upset_alt/model.hpp"

namespace upset_alt {

/// An exclusive intersection: the elements whose membership, restricted to
/// the visible sets, is exactly `members`.
struct Intersection {
    // Indices into PlotConfig::visible_sets, ascending. Empty for degree 0.
    std::vector<std::size_t> members;
    std::vector<std::string> names;
    std::size_t size = 0;

    std::size_t degree() const noexcept { return members.size(); }

    bool operator==(const Intersection&) const = default;
};

struct IntersectionTable {
    std::vector<Intersection> rows;  // size > 0 only
    std::size_t n_visible = 0;
    SortKey sort_by = SortKey::size;
    SortOrder sort_order = SortOrder::descending;

    std::size_t total_size() const noexcept;

    bool operator==(const IntersectionTable&) const = default;
};

struct SpecialIntersections {
    std::optional<std::size_t> all_set;
    std::optional<std::size_t> empty;
};

/// Builds one row per populated combination of visible sets, sorted per the
/// config. Throws Error("EmptyDataset") when the dataset has no elements.
IntersectionTable compute_table(const SetDataset& dataset, const PlotConfig& config);

/// Stable sort by the key; ties go to the higher degree, then to the
/// lexicographically smaller list of set names.
IntersectionTable sort_intersections(IntersectionTable table, SortKey sort_by, SortOrder sort_order);

/// The all-set row needs at least two visible sets; with a single visible
/// set that row is reported as an independent set instead.
SpecialIntersections detect_special(const IntersectionTable& table, std::size_t n_visible);

}  // namespace upset_alt
