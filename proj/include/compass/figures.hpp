#pragma once

#include <string>
#include <vector>

#include "compass/sweep.hpp"

namespace compass {

/// Preset sweeps that regenerate the data files behind the numbered figures
/// of the accompanying analysis. Each preset writes one or more CSV/JSON
/// files into `out_dir` and returns the list of files written.
inline std::vector<std::string> run_figure_preset(int figure, const std::string& out_dir,
                                                  sweep_spec::output_format fmt
                                                      = sweep_spec::output_format::csv,
                                                  int threads = 0) {
    std::vector<std::string> written;
    const std::string ext = fmt == sweep_spec::output_format::csv ? ".csv" : ".json";
    const auto emit = [&](sweep_spec s, const std::string& name) {
        s.format = fmt;
        s.threads = threads;
        s.out = out_dir + "/" + name + ext;
        const auto result = run_sweep(s);
        write_sweep_result(result, s);
        written.push_back(s.out);
    };
    const auto alpha_range = [](sweep_spec& s, double lo, double hi, int n) {
        s.alpha_start = lo; s.alpha_stop = hi; s.alpha_count = n;
    };

    switch (figure) {
        case 1: // Wigner functions of the four canonical states at |alpha| = 2
            for (int l = 0; l < 4; ++l) {
                sweep_spec s;
                s.quantity = sweep_quantity::wigner;
                s.canonical_l = l;
                s.alpha_start = s.alpha_stop = 2.0;
                emit(s, "fig1_wigner_l" + std::to_string(l));
            }
            break;
        case 2: // negative volume for beta = i alpha / 2
            for (int l = 0; l < 4; ++l) {
                sweep_spec s;
                s.quantity = sweep_quantity::negativity;
                s.phases = canonical_phases(subtraction_index(l));
                s.beta_ratio = {0.0, 0.5};
                alpha_range(s, 0.25, 4.0, 16);
                emit(s, "fig2_negativity_beta_half_l" + std::to_string(l));
            }
            break;
        case 3: // negative volume of the canonical states
            for (int l = 0; l < 4; ++l) {
                sweep_spec s;
                s.quantity = sweep_quantity::negativity;
                s.canonical_l = l;
                alpha_range(s, 0.25, 4.0, 16);
                emit(s, "fig3_negativity_l" + std::to_string(l));
            }
            break;
        case 4: // Mandel Q (full stats table)
        case 6: // Agarwal-Tara A3 uses the same columns on a wider range
            for (int l = 0; l < 4; ++l) {
                sweep_spec s;
                s.quantity = sweep_quantity::stats;
                s.canonical_l = l;
                if (figure == 4) alpha_range(s, 0.25, 4.0, 32);
                else alpha_range(s, 0.1, 4.0, 40);
                emit(s, "fig" + std::to_string(figure) + "_stats_l" + std::to_string(l));
            }
            break;
        case 5: // photon number distribution at |alpha| = 5
            for (int l = 0; l < 4; ++l) {
                sweep_spec s;
                s.quantity = sweep_quantity::pnd;
                s.canonical_l = l;
                s.alpha_start = s.alpha_stop = 5.0;
                s.pnd_max = 60;
                emit(s, "fig5_pnd_l" + std::to_string(l));
            }
            break;
        case 7: // quadrature squeezing parameters
            for (int l = 0; l < 4; ++l) {
                sweep_spec s;
                s.quantity = sweep_quantity::squeezing;
                s.canonical_l = l;
                alpha_range(s, 0.25, 4.0, 32);
                emit(s, "fig7_squeezing_l" + std::to_string(l));
            }
            break;
        case 8: // central chessboard zoom and tile metrics at |alpha| = 4
            for (int l = 0; l < 4; ++l) {
                sweep_spec s;
                s.quantity = sweep_quantity::wigner;
                s.canonical_l = l;
                s.alpha_start = s.alpha_stop = 4.0;
                s.grid = phase_space_grid{-0.6, 0.6, -0.6, 0.6, 201, 201};
                emit(s, "fig8_tile_field_l" + std::to_string(l));
            }
            {
                sweep_spec s;
                s.quantity = sweep_quantity::tiles;
                s.canonical_l = 0;
                alpha_range(s, 2.0, 5.0, 4);
                emit(s, "fig8_tile_metrics");
            }
            break;
        case 9: // sensitivity maps at |alpha| = 4
            for (int l = 0; l < 4; ++l) {
                sweep_spec s;
                s.quantity = sweep_quantity::sensitivity;
                s.canonical_l = l;
                s.alpha_start = s.alpha_stop = 4.0;
                emit(s, "fig9a_sensitivity_l" + std::to_string(l));
            }
            {
                sweep_spec s;
                s.quantity = sweep_quantity::sensitivity;
                s.phases = canonical_phases(subtraction_index(0));
                s.beta_ratio = {0.0, 2.0};
                s.alpha_start = s.alpha_stop = 4.0;
                emit(s, "fig9b_sensitivity_beta2");
            }
            break;
        case 10: { // mean photon number of the four states and the coherent reference
            sweep_result t;
            t.columns = {"alpha", "n_l0", "n_l1", "n_l2", "n_l3", "n_coherent"};
            sweep_spec meta_spec;
            meta_spec.quantity = sweep_quantity::stats;
            meta_spec.canonical_l = 0;
            alpha_range(meta_spec, 0.25, 4.0, 32);
            t.metadata = detail::base_metadata(meta_spec);
            for (int i = 0; i < 32; ++i) {
                const double a = 0.25 + (4.0 - 0.25) * i / 31.0;
                std::vector<double> row{a};
                for (int l = 0; l < 4; ++l)
                    row.push_back(normally_ordered_moment(
                        canonical_pscs(a, subtraction_index(l)), 1));
                row.push_back(a * a);
                t.rows.push_back(std::move(row));
                t.status.emplace_back("ok");
            }
            sweep_spec s = meta_spec;
            s.format = fmt;
            s.out = out_dir + "/fig10_mean_photon" + ext;
            write_sweep_result(t, s);
            written.push_back(s.out);
            break;
        }
        case 11: // negative volume vs the subtraction index, low and high alpha
            for (double a : {1.0, 4.0}) {
                sweep_spec s;
                s.quantity = sweep_quantity::negativity_vs_l;
                s.canonical_l = 0;
                s.alpha_start = s.alpha_stop = a;
                emit(s, "fig11_negativity_vs_l_alpha" + std::to_string(static_cast<int>(a)));
            }
            break;
        default:
            throw invalid_spec_error("figure preset must be in 1..11");
    }
    return written;
}

} // namespace compass
