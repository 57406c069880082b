#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "compass/constants.hpp"
#include "compass/errors.hpp"

namespace compass {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

namespace detail {

inline void require_finite(cplx v, const char* name) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument(std::string(name) + " must be finite");
}

/// Reduce an angle to [0, 2*pi).
inline double canonical_angle(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("angle must be finite");
    double r = std::fmod(a, 2.0 * pi);
    if (r < 0.0) r += 2.0 * pi;
    if (r >= 2.0 * pi) r = 0.0;
    return r;
}

inline cplxl to_l(cplx v) { return {static_cast<long double>(v.real()), static_cast<long double>(v.imag())}; }

} // namespace detail

/// Relative phases (theta, phi, chi) of the four-ket superposition,
/// stored reduced to [0, 2*pi).
struct phase_triple {
    double theta = 0.0;
    double phi = 0.0;
    double chi = 0.0;

    phase_triple() = default;
    phase_triple(double t, double p, double c)
        : theta(detail::canonical_angle(t)),
          phi(detail::canonical_angle(p)),
          chi(detail::canonical_angle(c)) {}
};

/// Number of photons subtracted from the compass state; arithmetic is mod 4
/// (subtracting four photons returns the original state).
class subtraction_index {
public:
    explicit subtraction_index(int l) : l_(((l % 4) + 4) % 4) {}

    int value() const { return l_; }
    subtraction_index operator+(int d) const { return subtraction_index(l_ + d); }
    bool operator==(const subtraction_index& o) const { return l_ == o.l_; }

private:
    int l_;
};

/// Parameters of the generalized compass state
///
///   |psi> = N { (|alpha> + e^{i theta}|-alpha>)
///             + e^{i phi} (|beta> + e^{i chi}|-beta>) }.
///
/// Immutable once constructed. Construction computes the squared norm of the
/// raw four-ket sum (the "bracket"); parameter sets whose bracket falls below
/// epsilon_null are rejected as null states.
class gcs_params {
public:
    gcs_params(cplx alpha, cplx beta, phase_triple phases)
        : alpha_(alpha), beta_(beta), phases_(phases) {
        detail::require_finite(alpha, "alpha");
        detail::require_finite(beta, "beta");
        bracket_ = compute_bracket();
        if (!(bracket_ >= epsilon_null))
            throw null_state_error("normalization bracket below epsilon_null (null state)");
        norm_const_ = 1.0 / std::sqrt(bracket_);
    }

    cplx alpha() const { return alpha_; }
    cplx beta() const { return beta_; }
    const phase_triple& phases() const { return phases_; }

    /// Squared norm of the unnormalized four-ket sum.
    double bracket() const { return bracket_; }

    /// Normalization constant N = bracket^{-1/2}.
    double normalization() const { return norm_const_; }

    /// xi >= 0 and k in (-pi, pi] with conj(alpha)*beta = xi e^{ik}.
    double xi() const { return std::abs(std::conj(alpha_) * beta_); }
    double k_angle() const {
        cplx w = std::conj(alpha_) * beta_;
        return (w == cplx{0.0, 0.0}) ? 0.0 : std::arg(w);
    }

    /// The four coherent amplitudes (alpha, -alpha, beta, -beta).
    std::array<cplx, 4> kets() const { return {alpha_, -alpha_, beta_, -beta_}; }

    /// The corresponding superposition weights (1, e^{it}, e^{ip}, e^{i(p+c)}).
    std::array<cplx, 4> weights() const {
        return {cplx{1.0, 0.0},
                std::polar(1.0, phases_.theta),
                std::polar(1.0, phases_.phi),
                std::polar(1.0, phases_.phi + phases_.chi)};
    }

private:
    // Long-double evaluation with expm1-stabilized groupings keeps the bracket
    // accurate deep into the cancellation regime (bracket ~ |alpha|^6 near the
    // subtracted-state null point).
    double compute_bracket() const {
        const long double a2 = std::norm(detail::to_l(alpha_));
        const long double b2 = std::norm(detail::to_l(beta_));
        const long double ct = std::cos(static_cast<long double>(phases_.theta));
        const long double cc = std::cos(static_cast<long double>(phases_.chi));
        const long double t = phases_.theta, p = phases_.phi, c = phases_.chi;

        // 4 + 2 e_a^2 cos t + 2 e_b^2 cos c, with e^2 - 1 split off via expm1.
        long double within = (4.0L + 2.0L * ct + 2.0L * cc)
            + 2.0L * ct * std::expm1(-2.0L * a2)
            + 2.0L * cc * std::expm1(-2.0L * b2);

        // Cross-cat terms; conj(alpha)*beta = xi e^{ik}, exponents combined so
        // every magnitude is <= exp(-(|a|-|b|)^2/2). The cosines are expanded
        // as cos(A +- x) = cos A cos x -+ sin A sin x with A an exact sum of
        // the stored phases: adding x directly would round the argument at
        // the unit scale and wipe out brackets of order |alpha|^6.
        const cplxl w = std::conj(detail::to_l(alpha_)) * detail::to_l(beta_);
        const long double xck = w.real(); // xi cos k
        const long double xsk = w.imag(); // xi sin k
        const long double s = 0.5L * (a2 + b2);
        const long double cx = std::cos(xsk), sx = std::sin(xsk);
        const long double plus_c = std::cos(p) + std::cos(p + c - t);
        const long double plus_s = std::sin(p) + std::sin(p + c - t);
        const long double minus_c = std::cos(p - t) + std::cos(p + c);
        const long double minus_s = std::sin(p - t) + std::sin(p + c);
        long double cross = 2.0L * (std::exp(xck - s) * (plus_c * cx - plus_s * sx)
                                  + std::exp(-xck - s) * (minus_c * cx + minus_s * sx));

        return static_cast<double>(within + cross);
    }

    cplx alpha_;
    cplx beta_;
    phase_triple phases_;
    double bracket_ = 0.0;
    double norm_const_ = 0.0;
};

/// Componentwise comparison with tolerance; phases compared on their
/// canonical representatives.
inline bool approx_equal(const gcs_params& a, const gcs_params& b, double tol = 1e-12) {
    return std::abs(a.alpha() - b.alpha()) <= tol
        && std::abs(a.beta() - b.beta()) <= tol
        && std::abs(a.phases().theta - b.phases().theta) <= tol
        && std::abs(a.phases().phi - b.phases().phi) <= tol
        && std::abs(a.phases().chi - b.phases().chi) <= tol;
}

/// Canonical phase triples of the compass state (l = 0) and its
/// photon-subtracted descendants (l = 1, 2, 3); all have beta = i*alpha.
inline phase_triple canonical_phases(subtraction_index l) {
    switch (l.value()) {
        case 0: return {0.0, 0.0, 0.0};
        case 1: return {pi, pi / 2.0, pi};
        case 2: return {0.0, pi, 0.0};
        default: return {pi, 3.0 * pi / 2.0, pi};
    }
}

/// The compass state of amplitude alpha with l photons subtracted,
/// expressed as a generalized compass state with beta = i*alpha.
inline gcs_params canonical_pscs(cplx alpha, subtraction_index l) {
    return gcs_params(alpha, cplx{0.0, 1.0} * alpha, canonical_phases(l));
}

/// Normalization constant N of the four-ket superposition.
inline double normalization(const gcs_params& p) { return p.normalization(); }

/// Recommended number-basis cutoff: mean + 10 sigma + margin for the widest
/// constituent coherent state.
inline int default_fock_cutoff(const gcs_params& p) {
    double m = std::max(std::norm(p.alpha()), std::norm(p.beta()));
    return static_cast<int>(std::ceil(m + 10.0 * std::sqrt(m) + 20.0));
}

/// Truncated number-basis expansion of a state, kept normalized. The norm of
/// the raw coefficients prior to normalization is retained for callers that
/// need it (truncation diagnostics, annihilation amplitudes).
class fock_vector {
public:
    explicit fock_vector(std::vector<cplx> coeffs)
        : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("empty coefficient vector");
        long double n2 = 0.0L;
        for (const cplx& v : c_) n2 += std::norm(detail::to_l(v));
        prenorm_ = std::sqrt(static_cast<double>(n2));
        if (!(static_cast<double>(n2) >= epsilon_null * epsilon_null))
            throw null_state_error("fock vector has (numerically) zero norm");
        const double inv = 1.0 / std::sqrt(static_cast<double>(n2));
        for (cplx& v : c_) v *= inv;
    }

    int cutoff() const { return static_cast<int>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx operator[](std::size_t n) const { return n < c_.size() ? c_[n] : cplx{0.0, 0.0}; }

    /// Norm of the coefficients as originally supplied.
    double prenorm() const { return prenorm_; }

    /// Probability mass in the top five slots of the truncated basis.
    double tail_mass() const {
        long double t = 0.0L;
        const int lo = std::max(0, cutoff() - 4);
        for (int n = lo; n <= cutoff(); ++n) t += std::norm(detail::to_l(c_[n]));
        return static_cast<double>(t);
    }

    bool truncation_adequate(double tol = 1e-12) const { return tail_mass() < tol; }

    cplx inner(const fock_vector& other) const {
        const std::size_t n = std::min(c_.size(), other.c_.size());
        cplxl s{0.0L, 0.0L};
        for (std::size_t i = 0; i < n; ++i)
            s += std::conj(detail::to_l(c_[i])) * detail::to_l(other.c_[i]);
        return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
    }

    double fidelity(const fock_vector& other) const { return std::norm(inner(other)); }

    /// Mean photon number on the truncated basis.
    double mean_n() const {
        long double s = 0.0L;
        for (std::size_t n = 0; n < c_.size(); ++n)
            s += static_cast<long double>(n) * std::norm(detail::to_l(c_[n]));
        return static_cast<double>(s);
    }

private:
    std::vector<cplx> c_;
    double prenorm_ = 1.0;
};

/// Number-basis expansion of the generalized compass state:
///   c_n = N / sqrt(n!) [ alpha^n e^{-|alpha|^2/2} (1 + e^{i theta} (-1)^n)
///                      + e^{i phi} beta^n e^{-|beta|^2/2} (1 + e^{i chi} (-1)^n) ].
/// The vector is renormalized; the renormalization factor (prenorm) must be
/// 1 up to the truncation tolerance, otherwise the cutoff is inadequate.
inline fock_vector fock_coefficients(const gcs_params& p, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
    const double n_const = p.normalization();
    const cplx eit = std::polar(1.0, p.phases().theta);
    const cplx eip = std::polar(1.0, p.phases().phi);
    const cplx eic = std::polar(1.0, p.phases().chi);

    // t_n = gamma^n e^{-|gamma|^2/2} / sqrt(n!) by upward recurrence.
    cplx ta = std::exp(cplx{-0.5 * std::norm(p.alpha()), 0.0});
    cplx tb = std::exp(cplx{-0.5 * std::norm(p.beta()), 0.0});
    std::vector<cplx> c(static_cast<std::size_t>(cutoff) + 1);
    double parity = 1.0;
    for (int n = 0; n <= cutoff; ++n) {
        const cplx ga = 1.0 + eit * parity;
        const cplx gb = 1.0 + eic * parity;
        c[static_cast<std::size_t>(n)] = n_const * (ta * ga + eip * tb * gb);
        const double r = std::sqrt(static_cast<double>(n) + 1.0);
        ta *= p.alpha() / r;
        tb *= p.beta() / r;
        parity = -parity;
    }

    fock_vector v(std::move(c));
    if (!v.truncation_adequate())
        throw truncation_error("fock cutoff too small for requested state");
    return v;
}

/// Closed-form inner product <psi_p|psi_q> via the 16 coherent overlaps.
inline cplx inner_product(const gcs_params& p, const gcs_params& q) {
    const auto gp = p.kets(), gq = q.kets();
    const auto wp = p.weights(), wq = q.weights();
    cplxl s{0.0L, 0.0L};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const cplxl gi = detail::to_l(gp[i]);
            const cplxl gj = detail::to_l(gq[j]);
            const cplxl e = std::conj(gi) * gj
                - 0.5L * (std::norm(gi) + std::norm(gj));
            s += std::conj(detail::to_l(wp[i])) * detail::to_l(wq[j]) * std::exp(e);
        }
    }
    s *= static_cast<long double>(p.normalization())
       * static_cast<long double>(q.normalization());
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

/// Closed-form general moment <a^{dagger j} a^{k}> of the state, from the
/// same 16-term coherent expansion. Exact for any alpha, beta, phases.
inline cplx gcs_moment(const gcs_params& p, int j, int k) {
    if (j < 0 || k < 0 || j > 16 || k > 16)
        throw std::invalid_argument("moment order out of range");
    const auto g = p.kets();
    const auto w = p.weights();
    cplxl s{0.0L, 0.0L};
    for (int i = 0; i < 4; ++i) {
        for (int m = 0; m < 4; ++m) {
            // term <g_m| a+^j a^k |g_i> = conj(g_m)^j g_i^k <g_m|g_i>
            const cplxl gi = detail::to_l(g[i]);
            const cplxl gm = detail::to_l(g[m]);
            cplxl pw{1.0L, 0.0L};
            for (int q = 0; q < j; ++q) pw *= std::conj(gm);
            for (int q = 0; q < k; ++q) pw *= gi;
            const cplxl e = std::conj(gm) * gi - 0.5L * (std::norm(gi) + std::norm(gm));
            s += std::conj(detail::to_l(w[m])) * detail::to_l(w[i]) * pw * std::exp(e);
        }
    }
    const long double n2 = 1.0L / static_cast<long double>(p.bracket());
    s *= n2;
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

struct annihilation_result {
    fock_vector state;
    /// Norm of a^times |psi> before renormalization (|psi> normalized).
    double amplitude;
};

/// Apply the annihilation operator `times` times and renormalize.
inline annihilation_result apply_annihilation(const fock_vector& v, int times) {
    if (times < 1) throw std::invalid_argument("times must be >= 1");
    std::vector<cplx> c(v.coeffs());
    double amplitude = 1.0;
    for (int t = 0; t < times; ++t) {
        long double n2 = 0.0L;
        for (std::size_t n = 0; n + 1 < c.size(); ++n) {
            c[n] = c[n + 1] * std::sqrt(static_cast<double>(n) + 1.0);
            n2 += std::norm(detail::to_l(c[n]));
        }
        c.back() = {0.0, 0.0};
        const double norm = std::sqrt(static_cast<double>(n2));
        if (!(norm >= epsilon_null))
            throw null_state_error("annihilation produced a null state");
        amplitude *= norm;
        for (cplx& x : c) x /= norm;
    }
    return {fock_vector(std::move(c)), amplitude};
}

} // namespace compass
