#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "compass/constants.hpp"
#include "compass/errors.hpp"
#include "compass/states.hpp"

namespace compass::oracle {

/// Size and tolerance of the truncated number basis used by the oracle.
struct truncation_budget {
    int cutoff = 80;
    double tail_tolerance = 1e-12;

    truncation_budget() = default;
    truncation_budget(int c, double tol) : cutoff(c), tail_tolerance(tol) {
        if (cutoff < 8) throw std::invalid_argument("cutoff must be >= 8");
        if (!(tol > 0.0) || tol > 1e-6)
            throw std::invalid_argument("tail_tolerance must be in (0, 1e-6]");
    }
};

namespace detail {

/// Smallest index S with probability mass above S at most `tol`.
inline int effective_support(const fock_vector& v, double tol = 1e-20) {
    long double tail = 0.0L;
    for (int n = v.cutoff(); n >= 0; --n) {
        tail += std::norm(compass::detail::to_l(v[static_cast<std::size_t>(n)]));
        if (static_cast<double>(tail) > tol) return n;
    }
    return 0;
}

/// Columns 0..ncols-1 (rows 0..nrows-1) of the displacement operator in the
/// number basis, <m|D(delta)|n>, column-major. Edges and the main diagonal
/// seed the associated-Laguerre degree recurrence, which then fills each
/// diagonal at fixed order |m - n|. Every matrix element is bounded by 1,
/// so the recurrence never overflows; large-degree instability of the naive
/// cross-column scheme is avoided.
inline std::vector<cplx> displacement_columns(cplx delta, int nrows, int ncols) {
    std::vector<cplx> d(static_cast<std::size_t>(nrows) * static_cast<std::size_t>(ncols),
                        cplx{0.0, 0.0});
    const auto at = [&](int m, int n) -> cplx& {
        return d[static_cast<std::size_t>(n) * nrows + m];
    };
    const double x = std::norm(delta);
    const double e = std::exp(-0.5 * x);
    const cplx mdc = -std::conj(delta);

    // column 0 and row 0: displaced vacuum amplitudes
    at(0, 0) = {e, 0.0};
    for (int m = 1; m < nrows; ++m)
        at(m, 0) = at(m - 1, 0) * delta / std::sqrt(static_cast<double>(m));
    for (int n = 1; n < ncols; ++n)
        at(0, n) = at(0, n - 1) * mdc / std::sqrt(static_cast<double>(n));

    // column 1 and row 1: first-order Laguerre L_1^{(a)}(x) = a + 1 - x
    if (ncols > 1) {
        cplx t{e, 0.0};
        for (int m = 1; m < nrows; ++m) {
            if (m > 1) t *= delta / std::sqrt(static_cast<double>(m));
            at(m, 1) = t * (static_cast<double>(m) - x);
        }
    }
    if (nrows > 1) {
        cplx t{e, 0.0};
        for (int n = 1; n < ncols; ++n) {
            if (n > 1) t *= mdc / std::sqrt(static_cast<double>(n));
            at(1, n) = t * (static_cast<double>(n) - x);
        }
    }

    // main diagonal: D(i,i) = e^{-x/2} L_i(x)
    for (int i = 2; i < std::min(nrows, ncols); ++i)
        at(i, i) = ((2.0 * i - 1.0 - x) * at(i - 1, i - 1)
                    - (i - 1.0) * at(i - 2, i - 2)) / static_cast<double>(i);

    // remaining diagonals at fixed order, degree-recurrence upward
    const auto fill = [&](int m0, int n0) {
        for (int m = m0 + 2, n = n0 + 2; m < nrows && n < ncols; ++m, ++n) {
            const double s = std::sqrt(static_cast<double>(m) * n);
            at(m, n) = ((m + n - 1.0 - x) / s) * at(m - 1, n - 1)
                     - std::sqrt((m - 1.0) * (n - 1.0) / (static_cast<double>(m) * n))
                           * at(m - 2, n - 2);
        }
    };
    for (int d0 = 1; d0 < nrows; ++d0) fill(d0, 0);  // below the diagonal
    for (int d0 = 1; d0 < ncols; ++d0) fill(0, d0);  // above the diagonal
    return d;
}

/// Row count needed to hold D(delta)|v> to negligible tail.
inline int displaced_rows(int support, double dmag) {
    const double q = (std::sqrt(static_cast<double>(support)) + dmag);
    const double mean = q * q;
    return static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean) + 30.0));
}

} // namespace detail

/// <a^{dagger j} a^{k}> evaluated exactly on the truncated vector by ladder
/// algebra on the coefficients.
inline cplx oracle_general_moment(const fock_vector& v, int j, int k) {
    if (j < 0 || k < 0) throw std::invalid_argument("moment orders must be >= 0");
    const int margin = std::max(j, k);
    {
        long double t = 0.0L;
        for (int n = std::max(0, v.cutoff() - margin - 4); n <= v.cutoff(); ++n)
            t += std::norm(compass::detail::to_l(v[static_cast<std::size_t>(n)]));
        if (static_cast<double>(t) >= 1e-10)
            throw truncation_error("cutoff margin inadequate for requested moment");
    }
    cplxl s{0.0L, 0.0L};
    for (int m = 0; m + std::max(j, k) <= v.cutoff(); ++m) {
        double f = 1.0;
        for (int q = 1; q <= k; ++q) f *= std::sqrt(static_cast<double>(m + q));
        for (int q = 1; q <= j; ++q) f *= std::sqrt(static_cast<double>(m + q));
        s += std::conj(compass::detail::to_l(v[static_cast<std::size_t>(m + j)]))
           * compass::detail::to_l(v[static_cast<std::size_t>(m + k)])
           * static_cast<long double>(f);
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

/// <n^j> on the truncated vector.
inline double oracle_number_moment(const fock_vector& v, int j) {
    long double s = 0.0L;
    for (std::size_t n = 0; n < v.size(); ++n) {
        long double w = 1.0L;
        for (int q = 0; q < j; ++q) w *= static_cast<long double>(n);
        s += w * std::norm(compass::detail::to_l(v[n]));
    }
    return static_cast<double>(s);
}

/// Wigner function by displaced parity: W(z) = (2/pi) sum_n (-1)^n |<n|D(-z)|v>|^2.
/// Convention: integral of W over the plane is 1; vacuum peak 2/pi.
inline double oracle_wigner(const fock_vector& v, cplx z) {
    if (std::abs(z) > 0.5 * std::sqrt(static_cast<double>(v.cutoff())))
        throw truncation_error("|z| exceeds sqrt(cutoff)/2; increase the cutoff");
    const int support = detail::effective_support(v);
    const int rows = detail::displaced_rows(support, std::abs(z));
    const auto d = detail::displacement_columns(-z, rows, support + 1);
    long double w = 0.0L;
    std::vector<cplx> phi(static_cast<std::size_t>(rows), cplx{0.0, 0.0});
    for (int n = 0; n <= support; ++n) {
        const cplx cn = v[static_cast<std::size_t>(n)];
        const cplx* col = d.data() + static_cast<std::size_t>(n) * rows;
        for (int m = 0; m < rows; ++m) phi[static_cast<std::size_t>(m)] += col[m] * cn;
    }
    double parity = 1.0;
    for (int m = 0; m < rows; ++m) {
        w += static_cast<long double>(parity) * std::norm(compass::detail::to_l(phi[static_cast<std::size_t>(m)]));
        parity = -parity;
    }
    return static_cast<double>((2.0L / pi) * w);
}

/// Photon number distribution P(n) = |c_n|^2 (zero above the cutoff).
inline double oracle_pnd(const fock_vector& v, int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    return std::norm(v[static_cast<std::size_t>(n)]);
}

/// <v|D(delta)|v> via the number-basis displacement matrix.
inline cplx oracle_displacement_overlap(const fock_vector& v, cplx delta) {
    if (!v.truncation_adequate())
        throw truncation_error("vector truncation inadequate for displacement overlap");
    const int support = detail::effective_support(v);
    const int rows = std::min(v.cutoff() + 1,
                              detail::displaced_rows(support, std::abs(delta)));
    const auto d = detail::displacement_columns(delta, rows, support + 1);
    cplxl s{0.0L, 0.0L};
    for (int n = 0; n <= support; ++n) {
        const cplx* col = d.data() + static_cast<std::size_t>(n) * rows;
        cplxl acc{0.0L, 0.0L};
        for (int m = 0; m < rows; ++m)
            acc += std::conj(compass::detail::to_l(v[static_cast<std::size_t>(m)]))
                 * compass::detail::to_l(col[m]);
        s += acc * compass::detail::to_l(v[static_cast<std::size_t>(n)]);
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

/// Normalized Hermite functions <x|n> by upward recurrence; matches the
/// coherent-state kernel <x|alpha> ~ exp(-x^2/2 + sqrt(2) x alpha - ...).
inline void hermite_functions(double x, int nmax, std::vector<double>& h) {
    h.resize(static_cast<std::size_t>(nmax) + 1);
    h[0] = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
    if (nmax >= 1) h[1] = std::sqrt(2.0) * x * h[0];
    for (int n = 2; n <= nmax; ++n)
        h[static_cast<std::size_t>(n)] =
            x * std::sqrt(2.0 / n) * h[static_cast<std::size_t>(n - 1)]
            - std::sqrt((n - 1.0) / n) * h[static_cast<std::size_t>(n - 2)];
}

/// Quadrature (homodyne) density P(x) = |sum_n c_n <x|n>|^2.
inline double oracle_quadrature_density(const fock_vector& v, double x) {
    std::vector<double> h;
    hermite_functions(x, v.cutoff(), h);
    cplxl s{0.0L, 0.0L};
    for (std::size_t n = 0; n < v.size(); ++n)
        s += compass::detail::to_l(v[n]) * static_cast<long double>(h[n]);
    return static_cast<double>(std::norm(s));
}

/// <a> on the truncated vector.
inline cplx oracle_mean_a(const fock_vector& v) {
    cplxl s{0.0L, 0.0L};
    for (std::size_t n = 0; n + 1 < v.size(); ++n)
        s += std::conj(compass::detail::to_l(v[n])) * compass::detail::to_l(v[n + 1])
           * std::sqrt(static_cast<long double>(n) + 1.0L);
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

/// Central quadrature moment <(X - <X>)^l> at angle theta', with
/// X = (a e^{-i theta'} + a+ e^{i theta'})/2, evaluated exactly on the
/// truncated space by repeated application of the (shifted) tridiagonal X.
inline double oracle_x_moment(const fock_vector& v, int l, double theta_prime) {
    if (l < 1 || l > 8) throw unsupported_order_error("moment order must be in 1..8");
    {
        long double t = 0.0L;
        for (int n = std::max(0, v.cutoff() - l - 4); n <= v.cutoff(); ++n)
            t += std::norm(compass::detail::to_l(v[static_cast<std::size_t>(n)]));
        if (static_cast<double>(t) >= 1e-10)
            throw truncation_error("cutoff margin inadequate for x moment");
    }
    const cplx em = std::polar(0.5, -theta_prime); // e^{-i t'}/2
    const cplx ep = std::polar(0.5, theta_prime);
    const double xmean = (em * oracle_mean_a(v)).real() * 2.0;

    const std::size_t dim = v.size();
    std::vector<cplx> cur(v.coeffs()), nxt(dim);
    for (int step = 0; step < l; ++step) {
        for (std::size_t n = 0; n < dim; ++n) {
            cplx y = -xmean * cur[n];
            if (n + 1 < dim) y += em * std::sqrt(static_cast<double>(n) + 1.0) * cur[n + 1];
            if (n >= 1) y += ep * std::sqrt(static_cast<double>(n)) * cur[n - 1];
            nxt[n] = y;
        }
        cur.swap(nxt);
    }
    cplxl s{0.0L, 0.0L};
    for (std::size_t n = 0; n < dim; ++n)
        s += std::conj(compass::detail::to_l(v.coeffs()[n])) * compass::detail::to_l(cur[n]);
    return static_cast<double>(s.real());
}

} // namespace compass::oracle
