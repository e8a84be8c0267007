#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace upset_alt::detail {

/// Least-squares polynomial fit of `y` on `x` with `degree + 1` coefficients
/// (constant term first), solved by Householder QR on the Vandermonde
/// matrix. Returns nullopt when the system is rank deficient.
inline std::optional<std::vector<double>> polyfit(std::span<const double> x, std::span<const double> y,
                                                  std::size_t degree) {
    const std::size_t rows = x.size();
    const std::size_t cols = degree + 1;
    if (rows < cols || y.size() != rows) return std::nullopt;

    // column-major: a[c * rows + r]
    std::vector<double> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        double p = 1.0;
        for (std::size_t c = 0; c < cols; ++c) {
            a[c * rows + r] = p;
            p *= x[r];
        }
    }
    std::vector<double> b(y.begin(), y.end());

    for (std::size_t k = 0; k < cols; ++k) {
        double norm = 0.0;
        for (std::size_t r = k; r < rows; ++r) norm += a[k * rows + r] * a[k * rows + r];
        norm = std::sqrt(norm);
        if (norm == 0.0) return std::nullopt;
        const double alpha = a[k * rows + k] > 0 ? -norm : norm;

        std::vector<double> v(rows - k);
        for (std::size_t r = k; r < rows; ++r) v[r - k] = a[k * rows + r];
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (double vi : v) vnorm2 += vi * vi;
        if (vnorm2 == 0.0) continue;

        const auto reflect = [&](double* col) {
            double dot = 0.0;
            for (std::size_t r = k; r < rows; ++r) dot += v[r - k] * col[r];
            const double scale = 2.0 * dot / vnorm2;
            for (std::size_t r = k; r < rows; ++r) col[r] -= scale * v[r - k];
        };
        for (std::size_t c = k; c < cols; ++c) reflect(&a[c * rows]);
        reflect(b.data());
    }

    std::vector<double> coef(cols, 0.0);
    for (std::size_t k = cols; k-- > 0;) {
        const double diag = a[k * rows + k];
        if (std::abs(diag) < 1e-12) return std::nullopt;
        double sum = b[k];
        for (std::size_t c = k + 1; c < cols; ++c) sum -= a[c * rows + k] * coef[c];
        coef[k] = sum / diag;
    }
    return coef;
}

}  // namespace upset_alt::detail
