#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace compass {

/// Composite Simpson weights (in units of the grid spacing h) for n sample
/// points. Even interval counts use the plain 1/3 rule; odd counts open with
/// a 3/8 panel and continue with 1/3.
inline std::vector<double> simpson_weights(std::size_t n) {
    if (n < 3) throw std::invalid_argument("simpson rule needs at least 3 points");
    std::vector<double> w(n, 0.0);
    std::size_t start = 0;
    if ((n - 1) % 2 != 0) {
        const double c = 3.0 / 8.0;
        w[0] += c; w[1] += 3.0 * c; w[2] += 3.0 * c; w[3] += c;
        start = 3;
        if (start + 1 >= n) return w; // pure 3/8 panel
    }
    w[start] += 1.0 / 3.0;
    for (std::size_t i = start + 1; i < n - 1; i += 2) {
        w[i] += 4.0 / 3.0;
        w[i + 1] += 2.0 / 3.0;
    }
    w[n - 1] -= 1.0 / 3.0; // trailing point got the interior 2/3; fix to 1/3
    return w;
}

/// Integral of uniformly sampled values with spacing h.
inline double simpson_1d(const std::vector<double>& values, double h) {
    const auto w = simpson_weights(values.size());
    long double s = 0.0L;
    for (std::size_t i = 0; i < values.size(); ++i)
        s += static_cast<long double>(w[i]) * values[i];
    return static_cast<double>(s) * h;
}

struct quadrature_result {
    double value = 0.0;
    /// Richardson h-vs-2h estimate of the quadrature error; NaN when the
    /// point count does not allow coarsening.
    double error_estimate = std::numeric_limits<double>::quiet_NaN();
};

/// 2D tensor-product Simpson rule over an nx-by-ny row-major sample array.
/// When both point counts are odd the same rule on the 2h subgrid gives a
/// Richardson error estimate |I_h - I_2h| / 15.
inline quadrature_result simpson_2d(const std::vector<double>& values,
                                    std::size_t nx, std::size_t ny,
                                    double hx, double hy) {
    if (values.size() != nx * ny) throw std::invalid_argument("value count mismatch");
    const auto wx = simpson_weights(nx);
    const auto wy = simpson_weights(ny);
    long double s = 0.0L;
    for (std::size_t i = 0; i < nx; ++i) {
        long double row = 0.0L;
        const double* v = values.data() + i * ny;
        for (std::size_t j = 0; j < ny; ++j)
            row += static_cast<long double>(wy[j]) * v[j];
        s += static_cast<long double>(wx[i]) * row;
    }
    quadrature_result out;
    out.value = static_cast<double>(s) * hx * hy;

    if (nx % 2 == 1 && ny % 2 == 1 && nx >= 5 && ny >= 5) {
        const std::size_t cx = (nx + 1) / 2, cy = (ny + 1) / 2;
        const auto cwx = simpson_weights(cx);
        const auto cwy = simpson_weights(cy);
        long double cs = 0.0L;
        for (std::size_t i = 0; i < cx; ++i) {
            long double row = 0.0L;
            const double* v = values.data() + (2 * i) * ny;
            for (std::size_t j = 0; j < cy; ++j)
                row += static_cast<long double>(cwy[j]) * v[2 * j];
            cs += static_cast<long double>(cwx[i]) * row;
        }
        const double coarse = static_cast<double>(cs) * (2.0 * hx) * (2.0 * hy);
        out.error_estimate = std::abs(out.value - coarse) / 15.0;
    }
    return out;
}

} // namespace compass
