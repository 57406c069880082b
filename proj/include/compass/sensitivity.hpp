#pragma once

#include <cmath>
#include <complex>

#include "compass/errors.hpp"
#include "compass/parallel.hpp"
#include "compass/states.hpp"
#include "compass/wigner.hpp"

namespace compass {

/// Small phase-space displacement delta = delta_x + i delta_p.
struct displacement {
    cplx delta{0.0, 0.0};

    displacement() = default;
    explicit displacement(cplx d) : delta(d) { detail::require_finite(d, "delta"); }
    displacement(double dx, double dp) : displacement(cplx{dx, dp}) {}
};

/// <psi|D(delta)|psi> as the exact 16-term sum over coherent overlaps, using
/// D(delta)|g> = e^{(delta conj(g) - conj(delta) g)/2} |g + delta>. Exponents
/// are combined per term; each term's magnitude is bounded by 1.
inline cplx displacement_overlap(const gcs_params& p, displacement d) {
    const auto g = p.kets();
    const auto w = p.weights();
    const cplxl dl = detail::to_l(d.delta);
    cplxl s{0.0L, 0.0L};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const cplxl gi = detail::to_l(g[i]);
            const cplxl gj = detail::to_l(g[j]);
            const cplxl shifted = gi + dl;
            const cplxl e = 0.5L * (dl * std::conj(gi) - std::conj(dl) * gi)
                - 0.5L * std::norm(gj) - 0.5L * std::norm(shifted)
                + std::conj(gj) * shifted;
            s += std::conj(detail::to_l(w[j])) * detail::to_l(w[i]) * std::exp(e);
        }
    }
    s /= static_cast<long double>(p.bracket());
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

/// Displacement sensitivity F(delta) = |<psi|D(delta)|psi>|^2 in [0, 1].
inline double sensitivity(const gcs_params& p, displacement d) {
    return std::norm(displacement_overlap(p, d));
}

/// The four diagonal displacement matrix elements sum
///   sum_{sigma = +-1, g in {alpha, beta}} <sigma g|D(delta)|sigma g>,
/// the dominant contribution to the sensitivity near the origin. Contains no
/// relative phases, so it is identical for all photon-subtraction indices.
inline cplx dominant_term(const gcs_params& p, displacement d) {
    const cplxl dl = detail::to_l(d.delta);
    cplxl s{0.0L, 0.0L};
    for (const cplx gv : {p.alpha(), p.beta()}) {
        for (const double sigma : {1.0, -1.0}) {
            const cplxl g = detail::to_l(gv);
            const long double im = (dl * std::conj(g)).imag();
            const cplxl shifted = static_cast<long double>(sigma) * g + dl;
            const cplxl e = cplxl{0.0L, static_cast<long double>(sigma) * im}
                - 0.5L * std::norm(g) - 0.5L * std::norm(shifted)
                + std::conj(g) * (g + static_cast<long double>(sigma) * dl);
            s += std::exp(e);
        }
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

/// Default sensitivity-map domain: several interference oscillations around
/// the origin at desk-scale amplitudes.
inline phase_space_grid default_sensitivity_grid(int npts = 301) {
    return {-1.5, 1.5, -1.5, 1.5, npts, npts};
}

/// F(delta) sampled over a (delta_x, delta_p) grid; deterministic parallel map.
inline scalar_field sensitivity_map(const gcs_params& p, const phase_space_grid& grid,
                                    int threads = 0) {
    std::vector<double> values(grid.size());
    const int ny = grid.ny;
    parallel_for(grid.size(), threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / ny;
        const int j = static_cast<int>(idx) % ny;
        values[idx] = sensitivity(p, displacement{grid.x(i), grid.y(j)});
    });
    return scalar_field(grid, std::move(values));
}

} // namespace compass
