#pragma once

#include <cmath>
#include <complex>

#include "compass/constants.hpp"
#include "compass/errors.hpp"
#include "compass/states.hpp"
#include "compass/statistics.hpp"

namespace compass {

/// Homodyne angle theta' of the general quadrature pair
/// X = (a e^{-i t'} + a+ e^{i t'})/2, Y = (a e^{-i t'} - a+ e^{i t'})/(2i),
/// canonicalized to [0, pi).
struct quadrature_angle {
    double theta_prime = 0.0;

    quadrature_angle() = default;
    explicit quadrature_angle(double t) {
        if (!std::isfinite(t)) throw std::invalid_argument("angle must be finite");
        double r = std::fmod(t, pi);
        if (r < 0.0) r += pi;
        if (r >= pi) r = 0.0;
        theta_prime = r;
    }
};

/// <a> of the generalized compass state (closed form, any beta).
inline cplx expectation_a(const gcs_params& p) { return gcs_moment(p, 0, 1); }

/// <a^2> of the generalized compass state (closed form, any beta).
inline cplx expectation_a2(const gcs_params& p) { return gcs_moment(p, 0, 2); }

struct squeeze_report {
    double var_x = 0.0;
    double var_y = 0.0;
    double s_x = 0.0; // 4 var_x - 1; negative values signal squeezing
    double s_y = 0.0;
};

/// Quadrature variances from <a^2>, <a> and <n>:
///   (dX)^2 = [2 Re(e^{-2it'} (<a^2> - <a>^2)) + 2<n> - 2|<a>|^2 + 1] / 4
/// and the same with the opposite sign on the rotating term for Y.
inline squeeze_report quadrature_variances(const gcs_params& p, quadrature_angle angle = {}) {
    const cplx a1 = expectation_a(p);
    const cplx a2 = expectation_a2(p);
    const double n1 = normally_ordered_moment(p, 1);
    const cplx rot = std::polar(1.0, -2.0 * angle.theta_prime);
    const double osc = 2.0 * (rot * (a2 - a1 * a1)).real();
    const double base = 2.0 * n1 - 2.0 * std::norm(a1) + 1.0;
    squeeze_report r;
    r.var_x = 0.25 * (base + osc);
    r.var_y = 0.25 * (base - osc);
    r.s_x = 4.0 * r.var_x - 1.0;
    r.s_y = 4.0 * r.var_y - 1.0;
    return r;
}

namespace detail {

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int q = 1; q <= k; ++q) r = r * (n - k + q) / q;
    return r;
}

inline double odd_double_factorial(int i) { // (2i - 1)!!
    double r = 1.0;
    for (int q = 3; q <= 2 * i - 1; q += 2) r *= q;
    return r;
}

} // namespace detail

/// Central quadrature moment <(X - <X>)^l> at angle theta', assembled from
/// the closed-form general moments <a^{+k} a^{m}> through the Wick/normal-
/// ordering expansion
///   <X^r> = 2^{-r} sum_i C(r,2i) (2i-1)!! sum_k C(r-2i,k)
///           e^{i t'(2k-(r-2i))} <a^{+k} a^{r-2i-k}>,
/// followed by the binomial shift to central moments. Valid for <X> != 0 as
/// well; all terms are kept.
inline double central_x_moment(const gcs_params& p, int l, quadrature_angle angle = {}) {
    if (l < 1 || l > 8) throw unsupported_order_error("moment order must be in 1..8");
    const double tp = angle.theta_prime;
    const cplx a1 = gcs_moment(p, 0, 1);
    const double xmean = (std::polar(1.0, -tp) * a1).real();

    cplxl total{0.0L, 0.0L};
    for (int r = 0; r <= l; ++r) {
        // <X^r>
        cplxl xr{0.0L, 0.0L};
        for (int i = 0; 2 * i <= r; ++i) {
            const double cf = detail::binom(r, 2 * i) * detail::odd_double_factorial(i);
            for (int k = 0; k + 2 * i <= r; ++k) {
                const int ma = r - 2 * i - k;
                const cplx mom = gcs_moment(p, k, ma);
                const cplx ph = std::polar(1.0, tp * (2.0 * k - (r - 2 * i)));
                xr += static_cast<long double>(cf * detail::binom(r - 2 * i, k))
                    * detail::to_l(ph * mom);
            }
        }
        xr *= std::pow(0.5L, static_cast<long double>(r));
        long double shift = detail::binom(l, r);
        for (int q = 0; q < l - r; ++q) shift *= static_cast<long double>(-xmean);
        total += shift * xr;
    }
    return static_cast<double>(total.real());
}

/// Hong-Mandel higher-order squeezing parameter for even l:
///   S(l) = <(dX)^l> / [(1/2)_{l/2} (1/2)^{l/2}] - 1,
/// anchored so the vacuum (Gaussian moment (l-1)!!/2^l) gives S(l) = 0.
inline double hong_mandel_s(const gcs_params& p, int l, quadrature_angle angle = {}) {
    if (l < 2 || l > 8 || l % 2 != 0)
        throw unsupported_order_error("Hong-Mandel order must be even, in 2..8");
    const double vacuum_ref = detail::odd_double_factorial(l / 2) / std::pow(2.0, l);
    return central_x_moment(p, l, angle) / vacuum_ref - 1.0;
}

/// Quadrature (homodyne) distribution P(x) = |<x|psi>|^2 with the
/// coherent-state kernel <x|g> = pi^{-1/4} exp(-x^2/2 + sqrt(2) x g - g^2/2
/// - |g|^2/2); exponents combined per ket so large x and alpha stay finite.
inline double quadrature_density(const gcs_params& p, double x) {
    const auto g = p.kets();
    const auto w = p.weights();
    const long double xl = x;
    cplxl amp{0.0L, 0.0L};
    for (int i = 0; i < 4; ++i) {
        const cplxl gi = detail::to_l(g[i]);
        const cplxl e = -0.5L * xl * xl
            + std::sqrt(2.0L) * xl * gi
            - 0.5L * gi * gi
            - 0.5L * std::norm(gi);
        amp += detail::to_l(w[i]) * std::exp(e);
    }
    amp *= static_cast<long double>(p.normalization()) * std::pow(pi, -0.25L);
    return static_cast<double>(std::norm(amp));
}

} // namespace compass
