#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "compass/constants.hpp"
#include "compass/errors.hpp"
#include "compass/sensitivity.hpp"
#include "compass/serialize.hpp"
#include "compass/squeezing.hpp"
#include "compass/states.hpp"
#include "compass/statistics.hpp"
#include "compass/wigner.hpp"

namespace compass {

enum class sweep_quantity {
    wigner, negativity, stats, pnd, squeezing, quadrature, sensitivity, tiles,
    negativity_vs_l
};

inline const char* to_string(sweep_quantity q) {
    switch (q) {
        case sweep_quantity::wigner: return "wigner";
        case sweep_quantity::negativity: return "negativity";
        case sweep_quantity::stats: return "stats";
        case sweep_quantity::pnd: return "pnd";
        case sweep_quantity::squeezing: return "squeezing";
        case sweep_quantity::quadrature: return "quadrature";
        case sweep_quantity::sensitivity: return "sensitivity";
        case sweep_quantity::tiles: return "tiles";
        default: return "negativity_vs_l";
    }
}

inline sweep_quantity quantity_from_string(const std::string& s) {
    for (sweep_quantity q : {sweep_quantity::wigner, sweep_quantity::negativity,
                             sweep_quantity::stats, sweep_quantity::pnd,
                             sweep_quantity::squeezing, sweep_quantity::quadrature,
                             sweep_quantity::sensitivity, sweep_quantity::tiles,
                             sweep_quantity::negativity_vs_l}) {
        if (s == to_string(q)) return q;
    }
    throw invalid_spec_error("unknown quantity: " + s);
}

/// Description of one parameter scan: the quantity, a state selector
/// (canonical l, or an explicit phase triple with beta = ratio * alpha),
/// the alpha range (real magnitudes) or a fixed complex alpha, and the
/// output destination.
struct sweep_spec {
    sweep_quantity quantity = sweep_quantity::stats;

    std::optional<int> canonical_l;          // 0..3; beta = i alpha
    std::optional<phase_triple> phases;      // explicit triple, beta = beta_ratio * alpha
    cplx beta_ratio{0.0, 1.0};

    double alpha_start = 2.0;
    double alpha_stop = 2.0;
    int alpha_count = 1;
    std::optional<cplx> alpha_fixed;         // overrides the range
    std::optional<cplx> beta_fixed;          // explicit beta (fixed-alpha runs only)

    std::optional<phase_space_grid> grid;
    int pnd_max = -1;                        // default: recommended cutoff
    int cutoff = 0;                          // 0 = automatic heuristic
    int threads = 0;
    std::string out;
    enum class output_format { csv, json } format = output_format::csv;

    bool field_quantity() const {
        return quantity == sweep_quantity::wigner || quantity == sweep_quantity::sensitivity;
    }

    void validate() const {
        if (canonical_l.has_value() == phases.has_value())
            throw invalid_spec_error("exactly one state selector (l or phases) required");
        if (canonical_l && (*canonical_l < 0 || *canonical_l > 3))
            throw invalid_spec_error("canonical l must be in 0..3");
        if (alpha_count < 1) throw invalid_spec_error("alpha count must be >= 1");
        if (!alpha_fixed && alpha_count > 1 && !(alpha_stop > alpha_start))
            throw invalid_spec_error("alpha range must be well ordered");
        if (beta_fixed && !alpha_fixed)
            throw invalid_spec_error("explicit beta requires a fixed alpha");
        const bool single_point = alpha_fixed.has_value() || alpha_count == 1;
        if ((field_quantity() || quantity == sweep_quantity::pnd
             || quantity == sweep_quantity::quadrature
             || quantity == sweep_quantity::negativity_vs_l) && !single_point)
            throw invalid_spec_error(std::string(to_string(quantity))
                                     + " runs at a single alpha");
        if (quantity == sweep_quantity::negativity_vs_l && !canonical_l)
            throw invalid_spec_error("negativity_vs_l uses the canonical state family");
    }

    cplx alpha_at(int i) const {
        if (alpha_fixed) return *alpha_fixed;
        if (alpha_count == 1) return {alpha_start, 0.0};
        return {alpha_start + (alpha_stop - alpha_start) * i / (alpha_count - 1), 0.0};
    }

    gcs_params make_state(cplx alpha) const {
        if (canonical_l) return canonical_pscs(alpha, subtraction_index(*canonical_l));
        const cplx beta = beta_fixed ? *beta_fixed : beta_ratio * alpha;
        return gcs_params(alpha, beta, *phases);
    }
};

/// Result of a sweep: a table plus run metadata (tool version, convention
/// constants, cutoffs). Row order follows the sweep variable; flagged rows
/// record per-point failures instead of aborting the sweep.
using sweep_result = io::table;

namespace detail {

inline void push_state_columns(std::vector<std::string>& cols) {
    for (const char* c : {"alpha_re", "alpha_im", "beta_re", "beta_im", "theta", "phi", "chi"})
        cols.emplace_back(c);
}

inline void push_state_values(std::vector<double>& row, const gcs_params& p) {
    row.insert(row.end(), {p.alpha().real(), p.alpha().imag(), p.beta().real(),
                           p.beta().imag(), p.phases().theta, p.phases().phi,
                           p.phases().chi});
}

inline void push_placeholder_state(std::vector<double>& row, cplx alpha, const sweep_spec& s) {
    const cplx beta = s.beta_fixed ? *s.beta_fixed
                    : s.canonical_l ? cplx{0.0, 1.0} * alpha
                                    : s.beta_ratio * alpha;
    const phase_triple ph = s.canonical_l ? canonical_phases(subtraction_index(*s.canonical_l))
                                          : *s.phases;
    row.insert(row.end(), {alpha.real(), alpha.imag(), beta.real(), beta.imag(),
                           ph.theta, ph.phi, ph.chi});
}

inline io::metadata_list base_metadata(const sweep_spec& s) {
    io::metadata_list m;
    m.emplace_back("tool", "compass");
    m.emplace_back("version", version_string);
    m.emplace_back("quantity", to_string(s.quantity));
    m.emplace_back("wigner_convention", "W_vacuum(0)=2/pi, plane integral = 1");
    int cutoff = s.cutoff;
    if (cutoff == 0) {
        double mx = 0.0;
        for (int i = 0; i < s.alpha_count; ++i) {
            const cplx a = s.alpha_at(i);
            mx = std::max({mx, std::abs(a),
                           std::abs(s.beta_fixed ? *s.beta_fixed : s.beta_ratio * a)});
        }
        cutoff = static_cast<int>(std::ceil(mx * mx + 10.0 * mx + 20.0));
    }
    m.emplace_back("fock_cutoff", std::to_string(cutoff));
    if (s.canonical_l) m.emplace_back("state", "canonical_l=" + std::to_string(*s.canonical_l));
    else m.emplace_back("state", "explicit_phases");
    return m;
}

inline const double nan_v = std::numeric_limits<double>::quiet_NaN();

} // namespace detail

/// Execute a sweep. Deterministic for a given spec and version: rows are
/// ordered by the sweep variable and every value is computed independently
/// of the worker count.
inline sweep_result run_sweep(const sweep_spec& spec) {
    spec.validate();
    sweep_result out;
    out.metadata = detail::base_metadata(spec);

    const bool state_cols = spec.quantity == sweep_quantity::stats
                         || spec.quantity == sweep_quantity::squeezing;
    const auto run_per_alpha = [&](auto&& fill_row) {
        for (int i = 0; i < spec.alpha_count; ++i) {
            const cplx a = spec.alpha_at(i);
            std::vector<double> row;
            std::string status = "ok";
            try {
                const gcs_params p = spec.make_state(a);
                fill_row(row, p);
            } catch (const null_state_error&) {
                status = "null_state";
            } catch (const undefined_for_vacuum_error&) {
                status = "undefined_for_vacuum";
            } catch (const root_not_found_error&) {
                status = "root_not_found";
            } catch (const domain_too_small_error&) {
                status = "domain_too_small";
            } catch (const degenerate_denominator_error&) {
                status = "degenerate_denominator";
            }
            if (status != "ok") {
                row.clear();
                if (state_cols) detail::push_placeholder_state(row, a, spec);
                else row.push_back(std::abs(a));
                while (row.size() < out.columns.size()) row.push_back(detail::nan_v);
            }
            out.rows.push_back(std::move(row));
            out.status.push_back(std::move(status));
        }
    };

    switch (spec.quantity) {
        case sweep_quantity::stats: {
            detail::push_state_columns(out.columns);
            for (const char* c : {"n_mean", "Q", "g2", "A3"}) out.columns.emplace_back(c);
            run_per_alpha([&](std::vector<double>& row, const gcs_params& p) {
                const auto r = compute_stats(p);
                detail::push_state_values(row, p);
                row.insert(row.end(), {r.mean_n, r.q, r.g2, r.a3});
            });
            break;
        }
        case sweep_quantity::squeezing: {
            detail::push_state_columns(out.columns);
            for (const char* c : {"s_x", "s_y", "var_x", "var_y", "hong_mandel_4"})
                out.columns.emplace_back(c);
            run_per_alpha([&](std::vector<double>& row, const gcs_params& p) {
                const auto r = quadrature_variances(p);
                detail::push_state_values(row, p);
                row.insert(row.end(), {r.s_x, r.s_y, r.var_x, r.var_y, hong_mandel_s(p, 4)});
            });
            break;
        }
        case sweep_quantity::negativity: {
            out.columns = {"alpha", "delta", "quadrature_error"};
            run_per_alpha([&](std::vector<double>& row, const gcs_params& p) {
                const auto g = spec.grid ? *spec.grid : default_negativity_grid(p);
                const auto r = negative_volume(wigner_grid(p, g, spec.threads));
                row.insert(row.end(), {std::abs(p.alpha()), r.delta, r.error_estimate});
            });
            break;
        }
        case sweep_quantity::negativity_vs_l: {
            out.columns = {"l", "delta", "quadrature_error"};
            const cplx a = spec.alpha_at(0);
            for (int l = 0; l < 4; ++l) {
                std::vector<double> row{static_cast<double>(l)};
                std::string status = "ok";
                try {
                    const auto p = canonical_pscs(a, subtraction_index(l));
                    const auto g = spec.grid ? *spec.grid : default_negativity_grid(p);
                    const auto r = negative_volume(wigner_grid(p, g, spec.threads));
                    row.insert(row.end(), {r.delta, r.error_estimate});
                } catch (const null_state_error&) {
                    row.insert(row.end(), {detail::nan_v, detail::nan_v});
                    status = "null_state";
                }
                out.rows.push_back(std::move(row));
                out.status.push_back(std::move(status));
            }
            break;
        }
        case sweep_quantity::pnd: {
            out.columns = {"n", "p"};
            const gcs_params p = spec.make_state(spec.alpha_at(0));
            const int nmax = spec.pnd_max > 0 ? spec.pnd_max : default_fock_cutoff(p);
            for (int n = 0; n <= nmax; ++n) {
                out.rows.push_back({static_cast<double>(n), pnd(p, n)});
                out.status.emplace_back("ok");
            }
            break;
        }
        case sweep_quantity::quadrature: {
            out.columns = {"x", "p"};
            const gcs_params p = spec.make_state(spec.alpha_at(0));
            double lo = -8.0, hi = 8.0;
            int n = 201;
            if (spec.grid) { lo = spec.grid->x_min; hi = spec.grid->x_max; n = spec.grid->nx; }
            else {
                const double span = std::sqrt(2.0) * std::max(std::abs(p.alpha()), std::abs(p.beta())) + 5.0;
                lo = -span; hi = span;
            }
            for (int i = 0; i < n; ++i) {
                const double x = lo + (hi - lo) * i / (n - 1);
                out.rows.push_back({x, quadrature_density(p, x)});
                out.status.emplace_back("ok");
            }
            break;
        }
        case sweep_quantity::tiles: {
            out.columns = {"alpha", "center_value", "center_sign", "first_zero_x",
                           "first_zero_y", "tile_area", "predicted_area_scale"};
            run_per_alpha([&](std::vector<double>& row, const gcs_params& p) {
                const auto r = tile_metrics(p);
                row.insert(row.end(), {std::abs(p.alpha()), r.center_value,
                                       static_cast<double>(r.center_sign), r.first_zero_x,
                                       r.first_zero_y, r.tile_area, r.predicted_area_scale});
            });
            break;
        }
        case sweep_quantity::wigner: {
            const gcs_params p = spec.make_state(spec.alpha_at(0));
            const auto g = spec.grid ? *spec.grid : default_negativity_grid(p);
            const auto field = wigner_grid(p, g, spec.threads);
            out = io::field_table(field, "x", "y", "w", out.metadata);
            break;
        }
        case sweep_quantity::sensitivity: {
            const gcs_params p = spec.make_state(spec.alpha_at(0));
            const auto g = spec.grid ? *spec.grid : default_sensitivity_grid();
            const auto field = sensitivity_map(p, g, spec.threads);
            out = io::field_table(field, "delta_x", "delta_p", "f", out.metadata);
            break;
        }
    }
    return out;
}

/// Build the scalar field behind a field-quantity spec (wigner/sensitivity),
/// for callers that want the binary serialization.
inline scalar_field run_field(const sweep_spec& spec) {
    spec.validate();
    if (!spec.field_quantity())
        throw invalid_spec_error("not a field quantity");
    const gcs_params p = spec.make_state(spec.alpha_at(0));
    if (spec.quantity == sweep_quantity::wigner) {
        const auto g = spec.grid ? *spec.grid : default_negativity_grid(p);
        return wigner_grid(p, g, spec.threads);
    }
    const auto g = spec.grid ? *spec.grid : default_sensitivity_grid();
    return sensitivity_map(p, g, spec.threads);
}

/// Serialize a sweep result to its output path per the spec's format.
/// CSV: metadata comments + header row + data rows.
/// JSON: metadata envelope mirroring the same table.
inline void write_sweep_result(const sweep_result& result, const sweep_spec& spec) {
    if (spec.out.empty()) throw invalid_spec_error("output path required");
    std::ostringstream os;
    if (spec.format == sweep_spec::output_format::csv) io::write_table_csv(os, result);
    else io::write_table_json(os, result);
    io::write_file(spec.out, os.str());
}

/// Parse a sweep spec from its JSON document (one document per sweep).
inline sweep_spec sweep_spec_from_json(const nlohmann::json& j) {
    sweep_spec s;
    try {
        s.quantity = quantity_from_string(j.at("quantity").get<std::string>());
        const auto& st = j.at("state");
        if (st.contains("l")) {
            s.canonical_l = st.at("l").get<int>();
        } else {
            const auto ph = st.at("phases");
            s.phases = phase_triple{ph.at(0).get<double>(), ph.at(1).get<double>(),
                                    ph.at(2).get<double>()};
            if (st.contains("beta_ratio")) {
                const auto br = st.at("beta_ratio");
                s.beta_ratio = {br.at(0).get<double>(), br.at(1).get<double>()};
            }
        }
        if (j.contains("alpha")) {
            const auto& a = j.at("alpha");
            if (a.is_number()) {
                s.alpha_start = s.alpha_stop = a.get<double>();
                s.alpha_count = 1;
            } else if (a.is_array()) {
                s.alpha_fixed = cplx{a.at(0).get<double>(), a.at(1).get<double>()};
            } else {
                s.alpha_start = a.at("start").get<double>();
                s.alpha_stop = a.at("stop").get<double>();
                s.alpha_count = a.at("count").get<int>();
            }
        }
        if (j.contains("beta")) {
            const auto& b = j.at("beta");
            s.beta_fixed = cplx{b.at(0).get<double>(), b.at(1).get<double>()};
        }
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            const auto gx = g.at("x");
            const auto gy = g.contains("y") ? g.at("y") : gx;
            s.grid = phase_space_grid{gx.at(0).get<double>(), gx.at(1).get<double>(),
                                      gy.at(0).get<double>(), gy.at(1).get<double>(),
                                      gx.at(2).get<int>(), gy.at(2).get<int>()};
        }
        if (j.contains("pnd_max")) s.pnd_max = j.at("pnd_max").get<int>();
        if (j.contains("cutoff")) s.cutoff = j.at("cutoff").get<int>();
        if (j.contains("threads")) s.threads = j.at("threads").get<int>();
        if (j.contains("out")) s.out = j.at("out").get<std::string>();
        if (j.contains("format")) {
            const auto f = j.at("format").get<std::string>();
            if (f == "csv") s.format = sweep_spec::output_format::csv;
            else if (f == "json") s.format = sweep_spec::output_format::json;
            else throw invalid_spec_error("unknown format: " + f);
        }
    } catch (const nlohmann::json::exception& e) {
        throw invalid_spec_error(std::string("malformed sweep spec: ") + e.what());
    }
    s.validate();
    return s;
}

inline sweep_spec load_sweep_spec(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open spec file: " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_spec_error(std::string("spec file is not valid JSON: ") + e.what());
    }
    return sweep_spec_from_json(j);
}

} // namespace compass
