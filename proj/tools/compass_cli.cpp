// compass: sweep-driving front end for the compass-state diagnostics library.
//
// One quantity per invocation; every run embeds the tool version, the Wigner
// convention and the Fock cutoff in its output. Outputs are deterministic
// for a given spec and version, independent of the worker count.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "compass/figures.hpp"
#include "compass/serialize.hpp"
#include "compass/sweep.hpp"
#include "compass/verify.hpp"

namespace {

using compass::invalid_spec_error;

// "x" (real), "re,im" (fixed complex), or "start:stop:count" (range)
void parse_alpha(const std::string& text, compass::sweep_spec& spec) {
    if (text.find(':') != std::string::npos) {
        double start, stop;
        int count;
        if (std::sscanf(text.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3)
            throw invalid_spec_error("bad --alpha range, expected start:stop:count");
        spec.alpha_start = start;
        spec.alpha_stop = stop;
        spec.alpha_count = count;
        return;
    }
    double re = 0.0, im = 0.0;
    if (text.find(',') != std::string::npos) {
        if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) != 2)
            throw invalid_spec_error("bad --alpha, expected re,im");
        spec.alpha_fixed = compass::cplx{re, im};
        return;
    }
    if (std::sscanf(text.c_str(), "%lf", &re) != 1)
        throw invalid_spec_error("bad --alpha value");
    spec.alpha_start = spec.alpha_stop = re;
    spec.alpha_count = 1;
}

std::complex<double> parse_complex(const std::string& text, const char* flag) {
    double re = 0.0, im = 0.0;
    if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) == 2) return {re, im};
    if (std::sscanf(text.c_str(), "%lf", &re) == 1) return {re, 0.0};
    throw invalid_spec_error(std::string("bad ") + flag + ", expected re[,im]");
}

compass::phase_space_grid parse_grid(const std::string& text) {
    double x0, x1, y0, y1;
    int nx, ny;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &x0, &x1, &nx, &y0, &y1, &ny) == 6)
        return {x0, x1, y0, y1, nx, ny};
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &x0, &x1, &nx) == 3)
        return {x0, x1, x0, x1, nx, nx};
    throw invalid_spec_error("bad --grid, expected xmin:xmax:n[,ymin:ymax:n]");
}

struct cli_state {
    std::string alpha;
    std::string beta;
    std::string phases;
    std::optional<int> l;
    std::string grid;
    std::string out;
    std::string format = "csv";
    int cutoff = 0;
    int threads = 0;
    int pnd_max = -1;
    bool vs_l = false;
};

void add_common_options(CLI::App* cmd, cli_state& st, bool with_grid = true) {
    cmd->add_option("--alpha", st.alpha,
                    "alpha: value, re,im, or start:stop:count sweep");
    cmd->add_option("--beta", st.beta, "explicit beta as re[,im] (fixed alpha only)");
    cmd->add_option("--phases", st.phases, "phase triple theta,phi,chi (radians)");
    cmd->add_option("--l", st.l, "canonical photon-subtraction index 0..3")
        ->check(CLI::Range(0, 3));
    if (with_grid)
        cmd->add_option("--grid", st.grid, "grid xmin:xmax:n[,ymin:ymax:n]");
    cmd->add_option("--out", st.out, "output path (default: stdout)");
    cmd->add_option("--format", st.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--cutoff", st.cutoff, "Fock cutoff override (metadata/oracle)");
    cmd->add_option("--threads", st.threads,
                    "worker threads (default: COMPASS_THREADS or hardware)");
}

compass::sweep_spec build_spec(const cli_state& st, compass::sweep_quantity quantity) {
    compass::sweep_spec spec;
    spec.quantity = quantity;
    if (st.l) spec.canonical_l = *st.l;
    if (!st.phases.empty()) {
        double t, p, c;
        if (std::sscanf(st.phases.c_str(), "%lf,%lf,%lf", &t, &p, &c) != 3)
            throw invalid_spec_error("bad --phases, expected theta,phi,chi");
        spec.phases = compass::phase_triple{t, p, c};
    }
    if (!st.alpha.empty()) parse_alpha(st.alpha, spec);
    if (!st.beta.empty()) spec.beta_fixed = parse_complex(st.beta, "--beta");
    if (!st.grid.empty()) spec.grid = parse_grid(st.grid);
    spec.cutoff = st.cutoff;
    spec.threads = st.threads;
    spec.pnd_max = st.pnd_max;
    spec.out = st.out;
    spec.format = st.format == "json" ? compass::sweep_spec::output_format::json
                                      : compass::sweep_spec::output_format::csv;
    return spec;
}

int emit(const compass::sweep_spec& spec) {
    // Field quantities in JSON format use the binary layout: header + .bin.
    if (spec.field_quantity() && spec.format == compass::sweep_spec::output_format::json
        && !spec.out.empty()) {
        const auto field = compass::run_field(spec);
        const bool wig = spec.quantity == compass::sweep_quantity::wigner;
        std::string base = spec.out;
        const auto dot = base.rfind(".json");
        if (dot != std::string::npos && dot == base.size() - 5) base = base.substr(0, dot);
        compass::io::write_field_binary(field, base,
                                        wig ? "x" : "delta_x", wig ? "y" : "delta_p",
                                        wig ? "w" : "f", compass::detail::base_metadata(spec));
        return 0;
    }
    const auto result = compass::run_sweep(spec);
    if (spec.out.empty()) {
        if (spec.format == compass::sweep_spec::output_format::csv)
            compass::io::write_table_csv(std::cout, result);
        else
            compass::io::write_table_json(std::cout, result);
    } else {
        compass::write_sweep_result(result, spec);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-space diagnostics for generalized compass states"};
    app.require_subcommand(0, 1);

    int paper_figure = 0;
    std::string spec_file;
    std::string top_out;
    std::string top_format = "csv";
    int top_threads = 0;
    app.add_option("--paper-figure", paper_figure,
                   "regenerate the data behind the numbered analysis figure (1..11)")
        ->check(CLI::Range(1, 11));
    app.add_option("--spec", spec_file, "run a sweep described by a JSON spec file");
    app.add_option("--out", top_out, "output directory (--paper-figure) ");
    app.add_option("--format", top_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", top_threads, "worker threads");

    struct sub {
        const char* name;
        const char* help;
        compass::sweep_quantity quantity;
    };
    const sub subs[] = {
        {"wigner", "Wigner function over a phase-space grid", compass::sweep_quantity::wigner},
        {"stats", "photon statistics: n, Q, g2, A3", compass::sweep_quantity::stats},
        {"negativity", "Wigner negative volume", compass::sweep_quantity::negativity},
        {"pnd", "photon number distribution", compass::sweep_quantity::pnd},
        {"squeeze", "quadrature variances and squeezing parameters", compass::sweep_quantity::squeezing},
        {"quad", "quadrature (homodyne) distribution P(x)", compass::sweep_quantity::quadrature},
        {"sense", "displacement sensitivity F(delta)", compass::sweep_quantity::sensitivity},
        {"tiles", "central interference tile metrics", compass::sweep_quantity::tiles},
    };

    std::vector<std::pair<CLI::App*, std::shared_ptr<cli_state>>> cmds;
    for (const auto& s : subs) {
        auto st = std::make_shared<cli_state>();
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        add_common_options(cmd, *st);
        if (s.quantity == compass::sweep_quantity::pnd)
            cmd->add_option("--nmax", st->pnd_max, "highest photon number to tabulate");
        if (s.quantity == compass::sweep_quantity::negativity)
            cmd->add_flag("--vs-l", st->vs_l,
                          "tabulate against the subtraction index at fixed alpha");
        cmds.emplace_back(cmd, st);
    }

    auto verify_st = std::make_shared<cli_state>();
    std::uint64_t verify_seed = 42;
    int verify_sets = 50;
    CLI::App* vcmd = app.add_subcommand("verify", "closed-form vs oracle verification suite");
    vcmd->add_option("--seed", verify_seed, "random seed");
    vcmd->add_option("--sets", verify_sets, "number of randomized parameter sets");
    vcmd->add_option("--cutoff", verify_st->cutoff, "forced oracle cutoff");
    vcmd->add_option("--threads", verify_st->threads, "worker threads");
    vcmd->add_option("--out", verify_st->out, "JSON report path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (paper_figure != 0) {
            if (top_out.empty()) throw invalid_spec_error("--paper-figure needs --out DIR");
            std::filesystem::create_directories(top_out);
            const auto fmt = top_format == "json" ? compass::sweep_spec::output_format::json
                                                  : compass::sweep_spec::output_format::csv;
            for (const auto& f : compass::run_figure_preset(paper_figure, top_out, fmt, top_threads))
                std::cout << f << "\n";
            return 0;
        }
        if (!spec_file.empty()) {
            auto spec = compass::load_sweep_spec(spec_file);
            if (top_threads > 0) spec.threads = top_threads;
            return emit(spec);
        }
        if (vcmd->parsed()) {
            compass::verify_options opt;
            opt.seed = verify_seed;
            opt.sets = verify_sets;
            opt.threads = verify_st->threads;
            if (verify_st->cutoff > 0) opt.cutoff = verify_st->cutoff;
            const auto report = compass::run_verification(opt);
            const auto j = compass::to_json(report);
            if (verify_st->out.empty()) std::cout << j.dump(2) << "\n";
            else compass::io::write_file(verify_st->out, j.dump(2) + "\n");
            for (const auto& c : report.checks)
                std::cerr << (c.passed ? "[PASS] " : "[FAIL] ") << c.name
                          << " max_dev=" << c.max_deviation << " tol=" << c.tolerance
                          << (c.flagged ? " (truncation flags: " + std::to_string(c.flagged) + ")" : "")
                          << "\n";
            return report.all_passed() ? 0 : 1;
        }
        for (std::size_t i = 0; i < cmds.size(); ++i) {
            if (cmds[i].first->parsed()) {
                auto quantity = subs[i].quantity;
                if (quantity == compass::sweep_quantity::negativity && cmds[i].second->vs_l)
                    quantity = compass::sweep_quantity::negativity_vs_l;
                return emit(build_spec(*cmds[i].second, quantity));
            }
        }
        std::cout << app.help();
        return 0;
    } catch (const compass::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
