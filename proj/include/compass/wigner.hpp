#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "compass/constants.hpp"
#include "compass/errors.hpp"
#include "compass/parallel.hpp"
#include "compass/quadrature.hpp"
#include "compass/states.hpp"

namespace compass {

/// Uniform rectangular sampling lattice in the (x, y) phase plane, z = x + iy.
struct phase_space_grid {
    double x_min, x_max, y_min, y_max;
    int nx, ny;

    phase_space_grid(double x0, double x1, double y0, double y1, int px, int py)
        : x_min(x0), x_max(x1), y_min(y0), y_max(y1), nx(px), ny(py) {
        if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
        if (!(x_max > x_min) || !(y_max > y_min))
            throw std::invalid_argument("grid bounds must be ordered");
    }

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

/// Real-valued samples over a phase-space grid, row-major in x.
struct scalar_field {
    phase_space_grid grid;
    std::vector<double> values;

    scalar_field(phase_space_grid g, std::vector<double> v)
        : grid(g), values(std::move(v)) {
        if (values.size() != grid.size())
            throw std::invalid_argument("field size does not match grid");
        for (double w : values)
            if (!std::isfinite(w)) throw std::invalid_argument("field contains non-finite values");
    }

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.ny + j]; }
};

/// The six pairwise interference terms of the closed-form Wigner function.
/// For pair l with amplitudes (a_i, a_j): xi_l + i k_l = a_i conj(a_j).
/// m[l] stores the overflow-safe product e^{2|z|^2} m_l (all exponents
/// combined before exponentiation), which is the form that enters W.
struct interference_terms {
    std::array<double, 6> xi{};
    std::array<double, 6> k{};
    std::array<double, 6> m{};
};

namespace detail {

struct wigner_decomposition {
    std::array<double, 4> lobes{}; // e^{2|z|^2 - w - |a_i|^2}, one per coherent lobe
    interference_terms inter;
};

inline wigner_decomposition wigner_terms(const gcs_params& p, cplx z) {
    const cplx a = p.alpha(), b = p.beta();
    const double t = p.phases().theta, f = p.phases().phi, c = p.phases().chi;
    const double na = std::norm(a), nb = std::norm(b);
    const double s = 0.5 * (na + nb);
    const double z2 = 2.0 * std::norm(z);

    const std::array<cplx, 4> amp = {2.0 * z + a, 2.0 * z - a, 2.0 * z + b, 2.0 * z - b};

    wigner_decomposition d;
    const std::array<double, 4> lobe_w = {na, na, nb, nb};
    for (int i = 0; i < 4; ++i)
        d.lobes[static_cast<std::size_t>(i)] = std::exp(z2 - lobe_w[static_cast<std::size_t>(i)] - std::norm(amp[static_cast<std::size_t>(i)]));

    static constexpr int pair_i[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int pair_j[6] = {1, 2, 3, 2, 3, 3};
    const std::array<double, 6> w_exp = {na, s, s, s, s, nb};
    const std::array<double, 6> phase = {t, t - f - c, t - f, -f - c, -f, c};
    for (int l = 0; l < 6; ++l) {
        const cplx prod = amp[static_cast<std::size_t>(pair_i[l])] * std::conj(amp[static_cast<std::size_t>(pair_j[l])]);
        d.inter.xi[static_cast<std::size_t>(l)] = prod.real();
        d.inter.k[static_cast<std::size_t>(l)] = prod.imag();
        d.inter.m[static_cast<std::size_t>(l)] =
            2.0 * std::exp(z2 - w_exp[static_cast<std::size_t>(l)] - prod.real())
                * std::cos(phase[static_cast<std::size_t>(l)] - prod.imag());
    }
    return d;
}

} // namespace detail

/// Interference terms of the closed-form Wigner function at z.
inline interference_terms wigner_interference(const gcs_params& p, cplx z) {
    return detail::wigner_terms(p, z).inter;
}

/// Closed-form Wigner function of the generalized compass state:
/// four Gaussian lobes plus six interference terms, every exponent combined
/// before exponentiation. Convention: vacuum peak 2/pi, unit integral.
inline double wigner_closed_form(const gcs_params& p, cplx z) {
    const auto d = detail::wigner_terms(p, z);
    double sum = 0.0;
    for (double v : d.lobes) sum += v;
    for (double v : d.inter.m) sum += v;
    const double n2 = 1.0 / p.bracket();
    return (2.0 * n2 / pi) * sum;
}

/// Central chessboard contribution: the same-cat interference pair
/// (m_1 + m_6), scaled by the state-independent prefactor 2/pi. Leaving the
/// state's N^2 out makes the photon-subtraction sign flip an exact pointwise
/// identity; the full W uses (2 N^2/pi) times the same terms.
inline double interference_pattern(const gcs_params& p, cplx z) {
    const auto inter = wigner_interference(p, z);
    return (2.0 / pi) * (inter.m[0] + inter.m[5]);
}

/// Pointwise Wigner evaluation over a grid; embarrassingly parallel and
/// bit-identical for any worker count.
inline scalar_field wigner_grid(const gcs_params& p, const phase_space_grid& grid,
                                int threads = 0) {
    std::vector<double> values(grid.size());
    const int ny = grid.ny;
    parallel_for(grid.size(), threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / ny;
        const int j = static_cast<int>(idx) % ny;
        values[idx] = wigner_closed_form(p, {grid.x(i), grid.y(j)});
    });
    return scalar_field(grid, std::move(values));
}

/// Default domain for negativity integration: lobe centers plus a 4-sigma
/// margin, 401 points per axis.
inline phase_space_grid default_negativity_grid(const gcs_params& p, int npts = 401) {
    const double half = std::max(std::abs(p.alpha()), std::abs(p.beta())) + 4.0;
    return {-half, half, -half, half, npts, npts};
}

struct negativity_report {
    double delta = 0.0;          // integral of |W| minus 1
    double error_estimate = 0.0; // Richardson h-vs-2h quadrature error
};

/// Negative volume of a Wigner field, delta = int |W| dx dy - 1, by the
/// composite Simpson rule. The domain must already contain the state's
/// support: every boundary sample must be below 1e-8 in magnitude.
inline negativity_report negative_volume(const scalar_field& field) {
    const auto& g = field.grid;
    double boundary = 0.0;
    for (int i = 0; i < g.nx; ++i)
        boundary = std::max({boundary, std::abs(field.at(i, 0)), std::abs(field.at(i, g.ny - 1))});
    for (int j = 0; j < g.ny; ++j)
        boundary = std::max({boundary, std::abs(field.at(0, j)), std::abs(field.at(g.nx - 1, j))});
    if (boundary >= 1e-8)
        throw domain_too_small_error("field boundary not negligible; enlarge the domain");

    std::vector<double> absval(field.values.size());
    for (std::size_t i = 0; i < absval.size(); ++i) absval[i] = std::abs(field.values[i]);
    const auto q = simpson_2d(absval, static_cast<std::size_t>(g.nx),
                              static_cast<std::size_t>(g.ny), g.dx(), g.dy());
    negativity_report r;
    r.delta = q.value - 1.0;
    r.error_estimate = q.error_estimate;
    return r;
}

/// Geometry of the central interference tile.
struct tile_report {
    double center_value = 0.0;   // W at the origin
    int center_sign = 0;         // sign of the central tile
    double first_zero_x = 0.0;   // first zero contact of W along +x
    double first_zero_y = 0.0;   // first zero contact of W along +y
    double tile_area = 0.0;      // 4 * first_zero_x * first_zero_y
    double predicted_area_scale = 0.0; // pi^2 / (4 |alpha|^2)
};

namespace detail {

/// First zero contact of W along a ray from the origin. Along the axes the
/// chessboard only touches zero (tiles meet corner-to-corner there), so the
/// contact is located as the first stationary point of W past the origin and
/// validated to be near zero relative to the central value.
inline double first_axis_zero(const gcs_params& p, bool along_x) {
    const double scale = pi / (4.0 * std::abs(p.alpha()));
    const auto eval = [&](double s) {
        return wigner_closed_form(p, along_x ? cplx{s, 0.0} : cplx{0.0, s});
    };
    const int n = 1024;
    const double lo = scale / 8.0, hi = 2.0 * scale;
    const double step = (hi - lo) / (n - 1);

    double prev = eval(lo);
    double cur = eval(lo + step);
    double d_prev = cur - prev;
    int found = -1;
    for (int i = 2; i < n; ++i) {
        const double next = eval(lo + i * step);
        const double d_cur = next - cur;
        if ((d_prev < 0.0 && d_cur > 0.0) || (d_prev > 0.0 && d_cur < 0.0)) {
            found = i - 1;
            break;
        }
        prev = cur; cur = next; d_prev = d_cur;
    }
    if (found < 0)
        throw root_not_found_error("no tile boundary found within the |alpha|-scaled bracket");

    // bisection on the finite-difference derivative
    const double h = scale * 1e-7;
    auto deriv = [&](double s) { return eval(s + h) - eval(s - h); };
    double a = lo + (found - 1) * step, b = lo + (found + 1) * step;
    double da = deriv(a);
    for (int it = 0; it < 80 && b - a > scale * 1e-10; ++it) {
        const double mid = 0.5 * (a + b);
        const double dm = deriv(mid);
        if ((da <= 0.0) == (dm <= 0.0)) { a = mid; da = dm; }
        else { b = mid; }
    }
    const double s_star = 0.5 * (a + b);
    const double w0 = std::abs(wigner_closed_form(p, {0.0, 0.0}));
    if (std::abs(eval(s_star)) > 0.2 * w0)
        throw root_not_found_error("stationary point is not a zero contact of the tile");
    return s_star;
}

} // namespace detail

/// Central-tile metrics: contact zeros along both axes, the enclosed-box
/// area 4 z_x z_y, and the 1/|alpha|^2 reference scale.
inline tile_report tile_metrics(const gcs_params& p) {
    if (std::abs(p.alpha()) < 1.0)
        throw std::invalid_argument("central pattern not resolvable below |alpha| = 1");
    tile_report r;
    r.center_value = wigner_closed_form(p, {0.0, 0.0});
    r.center_sign = r.center_value >= 0.0 ? 1 : -1;
    r.first_zero_x = detail::first_axis_zero(p, true);
    r.first_zero_y = detail::first_axis_zero(p, false);
    r.tile_area = 4.0 * r.first_zero_x * r.first_zero_y;
    r.predicted_area_scale = pi * pi / (4.0 * std::norm(p.alpha()));
    return r;
}

} // namespace compass
