#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "compass/constants.hpp"
#include "compass/errors.hpp"
#include "compass/states.hpp"

namespace compass {

/// Normally ordered moment <a^{dagger m} a^{m}> of the generalized compass
/// state, 1 <= m <= 4, from the closed form in terms of (alpha, beta, theta,
/// phi, chi) and conj(alpha) beta = xi e^{ik}. Evaluated in extended
/// precision with expm1-stabilized groupings so the strongly cancelling
/// small-amplitude regime stays accurate.
inline double normally_ordered_moment(const gcs_params& p, int m) {
    if (m < 1 || m > 4) throw std::invalid_argument("moment order must be in 1..4");
    using ld = long double;
    const ld a2 = std::norm(detail::to_l(p.alpha()));
    const ld b2 = std::norm(detail::to_l(p.beta()));
    const ld t = p.phases().theta, f = p.phases().phi, c = p.phases().chi;
    const ld sgn = (m % 2 == 0) ? 1.0L : -1.0L;

    // 2|g|^{2m} {1 + (-1)^m e_g^2 cos(angle)}, split as (1 + s) + s (e^2 - 1).
    const auto within = [&](ld g2, ld angle) {
        const ld s = sgn * std::cos(angle);
        ld pw = 1.0L;
        for (int q = 0; q < m; ++q) pw *= g2;
        return 2.0L * pw * ((1.0L + s) + s * std::expm1(-2.0L * g2));
    };

    const cplxl w = std::conj(detail::to_l(p.alpha())) * detail::to_l(p.beta());
    const ld xck = w.real(), xsk = w.imag();
    const ld xi = std::abs(w);
    const ld s_ab = 0.5L * (a2 + b2);

    ld cross = 0.0L;
    if (xi > 0.0L) {
        ld xim = 1.0L;
        for (int q = 0; q < m; ++q) xim *= xi;
        // cos/sin of km from the phasor (cos k, sin k) = (xck, xsk)/xi, and
        // of km +- xsk by exact angle addition. Evaluating cos(A + km + xsk)
        // directly would round the argument at unit scale, which destroys
        // the deeply cancelling small-amplitude regime.
        cplxl ph{xck / xi, xsk / xi};
        cplxl phm{1.0L, 0.0L};
        for (int q = 0; q < m; ++q) phm *= ph;
        const ld cxs = std::cos(xsk), sxs = std::sin(xsk);
        const ld cp = phm.real() * cxs - phm.imag() * sxs; // cos(km + xsk)
        const ld sp = phm.imag() * cxs + phm.real() * sxs; // sin(km + xsk)
        const ld cm = phm.real() * cxs + phm.imag() * sxs; // cos(km - xsk)
        const ld sm = phm.imag() * cxs - phm.real() * sxs; // sin(km - xsk)
        const auto cos_shift = [](ld base_c, ld base_s, ld yc, ld ys) {
            return base_c * yc - base_s * ys; // cos(A + y)
        };
        const ld plus = cos_shift(std::cos(f), std::sin(f), cp, sp)
                      + cos_shift(std::cos(f + c - t), std::sin(f + c - t), cp, sp);
        const ld minus = cos_shift(std::cos(f - t), std::sin(f - t), cm, sm)
                       + cos_shift(std::cos(f + c), std::sin(f + c), cm, sm);
        cross = 2.0L * xim * (std::exp(xck - s_ab) * plus
                            + sgn * std::exp(-xck - s_ab) * minus);
    }

    const ld num = within(a2, t) + within(b2, c) + cross;
    return static_cast<double>(num / static_cast<ld>(p.bracket()));
}

/// <(a+ a)^j> via the normal-ordering expansion with Stirling numbers of the
/// second kind: n^j = sum_k S(j, k) a^{dagger k} a^k.
inline double mu_moment(const gcs_params& p, int j) {
    if (j < 1 || j > 4) throw std::invalid_argument("mu order must be in 1..4");
    static constexpr double stirling[4][4] = {
        {1, 0, 0, 0},
        {1, 1, 0, 0},
        {1, 3, 1, 0},
        {1, 7, 6, 1},
    };
    long double s = 0.0L;
    for (int k = 1; k <= j; ++k)
        s += static_cast<long double>(stirling[j - 1][k - 1]) * normally_ordered_moment(p, k);
    return static_cast<double>(s);
}

/// Cached normally ordered moments m_i = <a^{+i} a^i> and mu_j = <n^j>,
/// i, j = 1..4 (stored zero-based).
struct moment_table {
    std::array<double, 4> m{};
    std::array<double, 4> mu{};

    static moment_table from_params(const gcs_params& p) {
        moment_table tbl;
        for (int i = 1; i <= 4; ++i) {
            double v = normally_ordered_moment(p, i);
            if (v < 0.0) {
                if (v < -1e-10 * std::max(1.0, std::abs(v)))
                    throw error("normally ordered moment unexpectedly negative");
                v = 0.0;
            }
            tbl.m[static_cast<std::size_t>(i - 1)] = v;
        }
        static constexpr double stirling[4][4] = {
            {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 3, 1, 0}, {1, 7, 6, 1}};
        for (int j = 1; j <= 4; ++j) {
            long double s = 0.0L;
            for (int k = 1; k <= j; ++k)
                s += static_cast<long double>(stirling[j - 1][k - 1]) * tbl.m[static_cast<std::size_t>(k - 1)];
            tbl.mu[static_cast<std::size_t>(j - 1)] = static_cast<double>(s);
        }
        return tbl;
    }
};

namespace detail {

inline long double det3(const std::array<std::array<long double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
         - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
         + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

} // namespace detail

/// Agarwal-Tara A3 from precomputed moment rows; negative values witness
/// nonclassicality.
inline double a3_from_moments(const std::array<double, 4>& m, const std::array<double, 4>& mu) {
    const std::array<std::array<long double, 3>, 3> mm = {{
        {1.0L, m[0], m[1]}, {m[0], m[1], m[2]}, {m[1], m[2], m[3]}}};
    const std::array<std::array<long double, 3>, 3> uu = {{
        {1.0L, mu[0], mu[1]}, {mu[0], mu[1], mu[2]}, {mu[1], mu[2], mu[3]}}};
    const long double dm = detail::det3(mm);
    const long double du = detail::det3(uu);
    const long double den = du - dm;
    const long double scale = std::max(std::abs(dm), std::abs(du));
    if (std::abs(den) <= 1e-14L * scale || scale == 0.0L)
        throw degenerate_denominator_error("det mu - det m vanishes");
    return static_cast<double>(dm / den);
}

inline double agarwal_tara_a3(const gcs_params& p) {
    const auto tbl = moment_table::from_params(p);
    return a3_from_moments(tbl.m, tbl.mu);
}

/// Mandel Q = (<n^2> - <n>^2)/<n> - 1 with <n^2> = <a+2 a2> + <n>.
inline double mandel_q(const gcs_params& p) {
    const double m1 = normally_ordered_moment(p, 1);
    if (m1 <= epsilon_vacuum)
        throw undefined_for_vacuum_error("Q undefined for the vacuum");
    const double m2 = normally_ordered_moment(p, 2);
    return m2 / m1 - m1;
}

/// Equal-time second-order correlation g2(0) = <a+2 a2> / <n>^2.
inline double g2_zero(const gcs_params& p) {
    const double m1 = normally_ordered_moment(p, 1);
    if (m1 <= epsilon_vacuum)
        throw undefined_for_vacuum_error("g2 undefined for the vacuum");
    return normally_ordered_moment(p, 2) / (m1 * m1);
}

/// Photon number distribution P(n) = |<n|psi>|^2.
inline double pnd(const gcs_params& p, int n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    using ld = long double;
    const auto amp_term = [&](cplx g) -> cplxl {
        if (g == cplx{0.0, 0.0}) return n == 0 ? cplxl{1.0L, 0.0L} : cplxl{0.0L, 0.0L};
        const ld mag = std::abs(detail::to_l(g));
        const ld ex = static_cast<ld>(n) * std::log(mag)
            - 0.5L * mag * mag - 0.5L * std::lgamma(static_cast<ld>(n) + 1.0L);
        const ld ph = static_cast<ld>(n) * std::arg(detail::to_l(g));
        return std::exp(ex) * cplxl{std::cos(ph), std::sin(ph)};
    };
    const ld parity = (n % 2 == 0) ? 1.0L : -1.0L;
    const cplxl eit = std::polar(1.0L, static_cast<ld>(p.phases().theta));
    const cplxl eip = std::polar(1.0L, static_cast<ld>(p.phases().phi));
    const cplxl eic = std::polar(1.0L, static_cast<ld>(p.phases().chi));
    const cplxl amp = amp_term(p.alpha()) * (1.0L + eit * parity)
                    + eip * amp_term(p.beta()) * (1.0L + eic * parity);
    const ld nrm = static_cast<ld>(p.normalization());
    return static_cast<double>(std::norm(nrm * amp));
}

/// Change of the mean photon number under single-photon subtraction,
/// computed through the number basis: n(a|psi> renormalized) - n(|psi>).
/// Equals Mandel's Q identically.
inline double mean_photon_shift(const gcs_params& p) {
    const fock_vector v = fock_coefficients(p, default_fock_cutoff(p));
    const double n_before = v.mean_n();
    if (n_before <= epsilon_vacuum)
        throw undefined_for_vacuum_error("mean photon shift undefined for the vacuum");
    const auto sub = apply_annihilation(v, 1);
    return sub.state.mean_n() - n_before;
}

/// Photon-statistics summary for one parameter point.
struct stat_report {
    double mean_n = 0.0;
    double q = 0.0;
    double g2 = 0.0;
    double a3 = 0.0;
};

inline stat_report compute_stats(const gcs_params& p) {
    const auto tbl = moment_table::from_params(p);
    const double m1 = tbl.m[0];
    if (m1 <= epsilon_vacuum)
        throw undefined_for_vacuum_error("statistics undefined for the vacuum");
    stat_report r;
    r.mean_n = m1;
    r.q = tbl.m[1] / m1 - m1;
    r.g2 = tbl.m[1] / (m1 * m1);
    r.a3 = a3_from_moments(tbl.m, tbl.mu);
    return r;
}

} // namespace compass
