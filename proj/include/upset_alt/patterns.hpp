#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "upset_alt/intersections.hpp"
#include "upset_alt/model.hpp"

namespace upset_alt {

// ---- set size divergence -------------------------------------------------

enum class DivergenceLabel { diverging_a_lot, moderately_diverging, roughly_equal };

inline constexpr double kDivergingALot = 0.30;
inline constexpr double kRoughlyEqual = 0.10;

struct SetSizeDivergence {
    DivergenceLabel label = DivergenceLabel::roughly_equal;
    double relative_range = 0.0;  // (max - min) / max
    std::size_t min_size = 0;
    std::size_t max_size = 0;
};

SetSizeDivergence classify_set_sizes(std::span<const std::size_t> sizes);

// ---- degree classes ------------------------------------------------------

enum class DegreeClass { empty, independent, low, medium, high, all_set };

inline constexpr DegreeClass kAllDegreeClasses[] = {DegreeClass::empty, DegreeClass::independent,
                                                    DegreeClass::low,   DegreeClass::medium,
                                                    DegreeClass::high,  DegreeClass::all_set};

/// 0 -> empty, n -> all-set (n >= 2), 1 -> independent, 2..3 -> low,
/// (3, ceil(n/2)] -> medium, anything else below n -> high.
DegreeClass classify_degree(std::size_t degree, std::size_t n_visible);

// ---- size classes --------------------------------------------------------

enum class SizeClass { small, medium, large, largest };

inline constexpr SizeClass kAllSizeClasses[] = {SizeClass::small, SizeClass::medium, SizeClass::large,
                                                SizeClass::largest};

struct SizeThresholds {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double fence = 0.0;  // median + 1.5 * IQR
    std::size_t max = 0;
};

struct SizeClassification {
    std::vector<SizeClass> classes;  // aligned with table rows
    SizeThresholds thresholds;
};

SizeClassification classify_sizes(const IntersectionTable& table);

/// Linear-interpolation quantile over ascending values (the inclusive
/// method: position p * (n - 1)).
double quantile_linear(std::span<const double> ascending, double p);

/// Nearest-rank percentile: the value at 1-based rank ceil(percent * n / 100)
/// of the ascending values, clamped to rank 1.
std::size_t percentile_nearest_rank(std::span<const std::size_t> ascending, int percent);

// ---- distribution shape --------------------------------------------------

enum class DistributionLabel {
    drastically_flattening,
    rapidly_flattening,
    quickly_flattening,
    steadily_flattening,
    constant,
};

enum class CurveFamily { exponential, quadratic, linear };

inline constexpr double kDrasticBeta = 0.8;
// RMSE differences below this count as ties, resolved toward the simpler family.
inline constexpr double kFitTieTolerance = 1e-9;

struct FitResiduals {
    std::optional<double> exponential;
    std::optional<double> quadratic;
    std::optional<double> linear;
};

struct DistributionShape {
    DistributionLabel label = DistributionLabel::constant;
    std::optional<CurveFamily> family;
    std::optional<double> beta;
    FitResiduals fit_residuals;
};

/// Fits the rank/size curve on x = rank / (n - 1), y = size / max with an
/// exponential (log-linear least squares over positive y), a quadratic and a
/// line, and labels the curve by the family with the smallest RMSE.
DistributionShape fit_distribution(std::span<const double> sizes_descending);

// ---- statistics ----------------------------------------------------------

struct VisibleSetSize {
    std::string name;
    std::size_t size = 0;
};

struct StatisticsSummary {
    double mean = 0.0;
    double median = 0.0;
    std::size_t p90 = 0;
    std::size_t p10 = 0;
    std::string largest_set;
    std::string smallest_set;
    double largest_set_presence = 0.0;   // percent, one decimal
    double smallest_set_presence = 0.0;  // percent, one decimal
    std::optional<std::size_t> dominance_factor;
    std::size_t peak = 0;
    std::size_t tail = 0;
};

/// `set_sizes` lists the visible sets in plot order.
StatisticsSummary summarize_statistics(const IntersectionTable& table, std::span<const VisibleSetSize> set_sizes);

// ---- degree / size association -------------------------------------------

inline constexpr double kDefaultSignificanceShare = 0.25;

struct DegreeSizeAssociation {
    std::map<DegreeClass, std::set<SizeClass>> occupied;
    std::set<std::pair<SizeClass, DegreeClass>> significant;

    bool is_significant(SizeClass size, DegreeClass degree) const {
        return significant.count({size, degree}) > 0;
    }
};

/// A (size, degree) pair is significant when at least `significance_share`
/// of the rows in that size class carry that degree class.
DegreeSizeAssociation associate_degree_size(const IntersectionTable& table, std::span<const SizeClass> size_classes,
                                            std::span<const DegreeClass> degree_classes,
                                            double significance_share = kDefaultSignificanceShare);

// ---- largest intersections -----------------------------------------------

struct TopIntersections {
    std::vector<Intersection> rows;         // largest first, at most top_k
    std::vector<std::string> major_sets;    // at most two, most frequent first
    std::vector<std::string> other_sets;    // union over rows 2..top_k, smallest set first
};

/// Picks the largest rows and the sets that dominate them. A set present in
/// every top row is named alone; otherwise the two most frequent sets are
/// named, with ties going to the larger set.
TopIntersections summarize_top(const IntersectionTable& table, std::span<const VisibleSetSize> set_sizes, int top_k);

// ---- full report ---------------------------------------------------------

struct PatternReport {
    std::size_t total_sets = 0;
    std::size_t total_elements = 0;
    NounPair item_label = kDefaultItemLabel;
    std::optional<std::string> set_noun;
    std::vector<VisibleSetSize> visible_sets;  // plot order
    IntersectionTable table;                   // configured order
    std::vector<DegreeClass> degree_classes;   // aligned with table.rows
    SizeClassification sizes;
    SetSizeDivergence divergence;
    SpecialIntersections special;
    DistributionShape distribution;
    StatisticsSummary stats;
    DegreeSizeAssociation association;
    TopIntersections top;
};

PatternReport analyze(const SetDataset& dataset, const PlotConfig& config);

std::string_view to_string(DivergenceLabel label);
std::string_view to_string(DegreeClass cls);
std::string_view to_string(SizeClass cls);
std::string_view to_string(DistributionLabel label);
std::string_view to_string(CurveFamily family);

}  // namespace upset_alt
