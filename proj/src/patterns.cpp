#include "upset_alt/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "least_squares.hpp"

namespace upset_alt {

namespace {

double round_one_decimal(double value) { return std::round(value * 10.0) / 10.0; }

std::vector<std::size_t> ascending_sizes(const IntersectionTable& table) {
    std::vector<std::size_t> sizes;
    sizes.reserve(table.rows.size());
    for (const auto& row : table.rows) sizes.push_back(row.size);
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::vector<double> to_doubles(std::span<const std::size_t> values) {
    return {values.begin(), values.end()};
}

template <typename Model>
double rmse(std::span<const double> x, std::span<const double> y, Model&& model) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = model(x[i]) - y[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(x.size()));
}

double polyval(const std::vector<double>& coef, double x) {
    double acc = 0.0;
    for (std::size_t k = coef.size(); k-- > 0;) acc = acc * x + coef[k];
    return acc;
}

}  // namespace

SetSizeDivergence classify_set_sizes(std::span<const std::size_t> sizes) {
    SetSizeDivergence out;
    if (sizes.empty()) return out;
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    out.min_size = *lo;
    out.max_size = *hi;
    out.relative_range =
        out.max_size == 0 ? 0.0 : static_cast<double>(out.max_size - out.min_size) / static_cast<double>(out.max_size);
    if (out.relative_range > kDivergingALot) {
        out.label = DivergenceLabel::diverging_a_lot;
    } else if (out.relative_range >= kRoughlyEqual) {
        out.label = DivergenceLabel::moderately_diverging;
    } else {
        out.label = DivergenceLabel::roughly_equal;
    }
    return out;
}

DegreeClass classify_degree(std::size_t degree, std::size_t n_visible) {
    if (degree == 0) return DegreeClass::empty;
    if (n_visible >= 2 && degree == n_visible) return DegreeClass::all_set;
    if (degree == 1) return DegreeClass::independent;
    if (degree <= 3) return DegreeClass::low;
    const std::size_t half = (n_visible + 1) / 2;
    if (degree <= half) return DegreeClass::medium;
    return DegreeClass::high;
}

double quantile_linear(std::span<const double> ascending, double p) {
    if (ascending.empty()) return 0.0;
    const double pos = p * static_cast<double>(ascending.size() - 1);
    const auto lower = static_cast<std::size_t>(std::floor(pos));
    const auto upper = std::min(lower + 1, ascending.size() - 1);
    const double frac = pos - static_cast<double>(lower);
    return ascending[lower] + frac * (ascending[upper] - ascending[lower]);
}

std::size_t percentile_nearest_rank(std::span<const std::size_t> ascending, int percent) {
    if (ascending.empty()) return 0;
    const std::size_t n = ascending.size();
    std::size_t rank = (static_cast<std::size_t>(percent) * n + 99) / 100;
    rank = std::clamp<std::size_t>(rank, 1, n);
    return ascending[rank - 1];
}

SizeClassification classify_sizes(const IntersectionTable& table) {
    SizeClassification out;
    if (table.rows.empty()) return out;
    const auto sizes = to_doubles(ascending_sizes(table));
    auto& t = out.thresholds;
    t.median = quantile_linear(sizes, 0.5);
    t.q1 = quantile_linear(sizes, 0.25);
    t.q3 = quantile_linear(sizes, 0.75);
    t.fence = t.median + 1.5 * (t.q3 - t.q1);
    t.max = static_cast<std::size_t>(sizes.back());

    out.classes.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const auto size = static_cast<double>(row.size);
        if (row.size == t.max) {
            out.classes.push_back(SizeClass::largest);
        } else if (size > t.fence) {
            out.classes.push_back(SizeClass::large);
        } else if (size >= t.median) {
            out.classes.push_back(SizeClass::medium);
        } else {
            out.classes.push_back(SizeClass::small);
        }
    }
    return out;
}

DistributionShape fit_distribution(std::span<const double> sizes_descending) {
    std::vector<double> v(sizes_descending.begin(), sizes_descending.end());
    std::sort(v.begin(), v.end(), std::greater<>());

    DistributionShape shape;
    if (v.empty() || v.front() == v.back() || v.front() <= 0.0) return shape;  // constant

    if (v.size() < 3) {
        shape.label = DistributionLabel::steadily_flattening;
        shape.family = CurveFamily::linear;
        shape.fit_residuals.linear = 0.0;
        return shape;
    }

    const std::size_t n = v.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(i) / static_cast<double>(n - 1);
        y[i] = v[i] / v.front();
    }

    if (auto line = detail::polyfit(x, y, 1)) {
        shape.fit_residuals.linear = rmse(x, y, [&](double xi) { return polyval(*line, xi); });
    }
    if (auto quad = detail::polyfit(x, y, 2)) {
        shape.fit_residuals.quadratic = rmse(x, y, [&](double xi) { return polyval(*quad, xi); });
    }

    // zeros cannot enter the log regression
    std::vector<double> px, log_y;
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] > 0.0) {
            px.push_back(x[i]);
            log_y.push_back(std::log(y[i]));
        }
    }
    if (auto exp_line = detail::polyfit(px, log_y, 1)) {
        const double scale = std::exp((*exp_line)[0]);
        const double beta = -(*exp_line)[1];
        shape.beta = beta;
        shape.fit_residuals.exponential = rmse(x, y, [&](double xi) { return scale * std::exp(-beta * xi); });
    }

    // preference order on ties: simplest family first
    const std::pair<CurveFamily, std::optional<double>> candidates[] = {
        {CurveFamily::linear, shape.fit_residuals.linear},
        {CurveFamily::exponential, shape.fit_residuals.exponential},
        {CurveFamily::quadratic, shape.fit_residuals.quadratic},
    };
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [family, err] : candidates) {
        if (err) best = std::min(best, *err);
    }
    for (const auto& [family, err] : candidates) {
        if (err && *err <= best + kFitTieTolerance) {
            shape.family = family;
            break;
        }
    }

    switch (shape.family.value_or(CurveFamily::linear)) {
        case CurveFamily::exponential:
            shape.label = *shape.beta > kDrasticBeta ? DistributionLabel::drastically_flattening
                                                     : DistributionLabel::rapidly_flattening;
            break;
        case CurveFamily::quadratic:
            shape.label = DistributionLabel::quickly_flattening;
            break;
        case CurveFamily::linear:
            shape.label = DistributionLabel::steadily_flattening;
            break;
    }
    return shape;
}

StatisticsSummary summarize_statistics(const IntersectionTable& table, std::span<const VisibleSetSize> set_sizes) {
    StatisticsSummary s;
    if (table.rows.empty()) return s;

    const auto sizes = ascending_sizes(table);
    const auto n = sizes.size();
    const auto total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    s.mean = static_cast<double>(total) / static_cast<double>(n);
    s.median = quantile_linear(to_doubles(sizes), 0.5);
    s.p90 = percentile_nearest_rank(sizes, 90);
    s.p10 = percentile_nearest_rank(sizes, 10);
    s.peak = sizes.back();
    s.tail = sizes.front();
    if (n >= 2) {
        const auto second = sizes[n - 2];
        if (second > 0 && s.peak / second >= 2) s.dominance_factor = s.peak / second;
    }

    if (set_sizes.empty()) return s;
    std::size_t largest = 0;
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < set_sizes.size(); ++i) {
        if (set_sizes[i].size > set_sizes[largest].size) largest = i;
        if (set_sizes[i].size < set_sizes[smallest].size) smallest = i;
    }
    const auto presence = [&](std::size_t visible_index) {
        const auto hits = std::count_if(table.rows.begin(), table.rows.end(), [&](const Intersection& row) {
            return std::binary_search(row.members.begin(), row.members.end(), visible_index);
        });
        return round_one_decimal(100.0 * static_cast<double>(hits) / static_cast<double>(n));
    };
    s.largest_set = set_sizes[largest].name;
    s.smallest_set = set_sizes[smallest].name;
    s.largest_set_presence = presence(largest);
    s.smallest_set_presence = presence(smallest);
    return s;
}

DegreeSizeAssociation associate_degree_size(const IntersectionTable& table, std::span<const SizeClass> size_classes,
                                            std::span<const DegreeClass> degree_classes, double significance_share) {
    DegreeSizeAssociation out;
    std::map<SizeClass, std::size_t> per_size;
    std::map<std::pair<SizeClass, DegreeClass>, std::size_t> per_pair;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out.occupied[degree_classes[i]].insert(size_classes[i]);
        ++per_size[size_classes[i]];
        ++per_pair[{size_classes[i], degree_classes[i]}];
    }
    for (const auto& [pair, count] : per_pair) {
        const auto share = static_cast<double>(count) / static_cast<double>(per_size[pair.first]);
        if (share >= significance_share) out.significant.insert(pair);
    }
    return out;
}

TopIntersections summarize_top(const IntersectionTable& table, std::span<const VisibleSetSize> set_sizes, int top_k) {
    TopIntersections top;
    auto ranked = sort_intersections(table, SortKey::size, SortOrder::descending);
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::max(top_k, 0)), ranked.rows.size());
    top.rows.assign(ranked.rows.begin(), ranked.rows.begin() + static_cast<std::ptrdiff_t>(k));
    if (top.rows.empty() || set_sizes.empty()) return top;

    std::vector<std::size_t> freq(set_sizes.size(), 0);
    for (const auto& row : top.rows) {
        for (auto m : row.members) ++freq[m];
    }
    std::vector<std::size_t> order(set_sizes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (freq[a] != freq[b]) return freq[a] > freq[b];
        return set_sizes[a].size > set_sizes[b].size;
    });
    if (freq[order[0]] > 0) {
        top.major_sets.push_back(set_sizes[order[0]].name);
        if (freq[order[0]] < top.rows.size() && order.size() > 1 && freq[order[1]] > 0) {
            top.major_sets.push_back(set_sizes[order[1]].name);
        }
    }

    std::vector<std::size_t> others;
    for (std::size_t r = 1; r < top.rows.size(); ++r) {
        others.insert(others.end(), top.rows[r].members.begin(), top.rows[r].members.end());
    }
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    std::stable_sort(others.begin(), others.end(),
                     [&](std::size_t a, std::size_t b) { return set_sizes[a].size < set_sizes[b].size; });
    for (auto m : others) top.other_sets.push_back(set_sizes[m].name);
    return top;
}

PatternReport analyze(const SetDataset& dataset, const PlotConfig& config) {
    PatternReport report;
    report.total_sets = dataset.set_count();
    report.total_elements = dataset.element_count();
    report.item_label = effective_item_label(dataset, config);
    report.set_noun = effective_set_noun(dataset, config);

    const auto all_sizes = dataset.set_sizes();
    std::vector<std::size_t> visible_sizes;
    for (const auto& name : config.visible_sets) {
        const auto size = all_sizes[*dataset.set_index(name)];
        report.visible_sets.push_back({name, size});
        visible_sizes.push_back(size);
    }

    report.table = compute_table(dataset, config);
    const auto n_visible = report.table.n_visible;
    for (const auto& row : report.table.rows) report.degree_classes.push_back(classify_degree(row.degree(), n_visible));
    report.sizes = classify_sizes(report.table);
    report.divergence = classify_set_sizes(visible_sizes);
    report.special = detect_special(report.table, n_visible);

    auto descending = ascending_sizes(report.table);
    std::reverse(descending.begin(), descending.end());
    report.distribution = fit_distribution(to_doubles(descending));

    report.stats = summarize_statistics(report.table, report.visible_sets);
    report.association = associate_degree_size(report.table, report.sizes.classes, report.degree_classes);
    report.top = summarize_top(report.table, report.visible_sets, config.top_k);
    return report;
}

std::string_view to_string(DivergenceLabel label) {
    switch (label) {
        case DivergenceLabel::diverging_a_lot: return "diverging_a_lot";
        case DivergenceLabel::moderately_diverging: return "moderately_diverging";
        case DivergenceLabel::roughly_equal: return "roughly_equal";
    }
    return "unknown";
}

std::string_view to_string(DegreeClass cls) {
    switch (cls) {
        case DegreeClass::empty: return "empty";
        case DegreeClass::independent: return "independent";
        case DegreeClass::low: return "low";
        case DegreeClass::medium: return "medium";
        case DegreeClass::high: return "high";
        case DegreeClass::all_set: return "all_set";
    }
    return "unknown";
}

std::string_view to_string(SizeClass cls) {
    switch (cls) {
        case SizeClass::small: return "small";
        case SizeClass::medium: return "medium";
        case SizeClass::large: return "large";
        case SizeClass::largest: return "largest";
    }
    return "unknown";
}

std::string_view to_string(DistributionLabel label) {
    switch (label) {
        case DistributionLabel::drastically_flattening: return "drastically_flattening";
        case DistributionLabel::rapidly_flattening: return "rapidly_flattening";
        case DistributionLabel::quickly_flattening: return "quickly_flattening";
        case DistributionLabel::steadily_flattening: return "steadily_flattening";
        case DistributionLabel::constant: return "constant";
    }
    return "unknown";
}

std::string_view to_string(CurveFamily family) {
    switch (family) {
        case CurveFamily::exponential: return "exponential";
        case CurveFamily::quadratic: return "quadratic";
        case CurveFamily::linear: return "linear";
    }
    return "unknown";
}

}  // namespace upset_alt
