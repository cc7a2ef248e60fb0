#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "wavetail/iteration.hpp"
#include "wavetail/meter.hpp"
#include "wavetail/report.hpp"
#include "wavetail/scenario.hpp"
#include "wavetail/solver.hpp"

namespace fs = std::filesystem;
using namespace wavetail;

namespace {

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrKind::ParseError:
        case ErrKind::ValidationError:
        case ErrKind::IoError:
            return 2;
        default:
            return 3;
    }
}

void ensure_dir(const std::string& dir) {
    if (!dir.empty()) fs::create_directories(dir);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

struct PredictArtifacts {
    IterateResult interior, exterior;
    DecayBound closed_form;
};

PredictArtifacts run_predict(const Scenario& sc) {
    ProblemSpec spec = sc.problem();
    PredictArtifacts a{iterate_interior(spec), iterate_exterior(spec), predicted_final_rate(spec)};
    return a;
}

void write_predict(const std::string& out_dir, const PredictArtifacts& a) {
    if (out_dir.empty()) return;
    ensure_dir(out_dir);
    write_file_atomic(join_path(out_dir, "trace_interior.txt"), a.interior.trace.to_text());
    write_file_atomic(join_path(out_dir, "trace_exterior.txt"), a.exterior.trace.to_text());
    std::string p;
    p += "closed_form " + a.closed_form.str() + "\n";
    p += "interior_final " + a.interior.final.str() + "\n";
    p += "exterior_final " + a.exterior.final.str() + "\n";
    write_file_atomic(join_path(out_dir, "prediction.txt"), p);
}

std::vector<RegionStat> measure_regions(const FieldHistory& h) {
    std::vector<RegionStat> stats;
    for (const auto& reg : dyadic_regions(h.grid.t_max)) {
        try {
            stats.push_back(region_sup(h, reg, VfWord{0, 0, 0}));
        } catch (const Error& e) {
            if (e.kind() != ErrKind::RegionOutsideHistory) throw;
        }
    }
    return stats;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"late-time decay laboratory: predict, simulate, measure, verify"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir, checkpoint_path, mode = "full-verify";
    double override_dr = 0, override_tmax = 0, override_rmax = 0, override_cfl = 0;
    double tol_linear = 0.1, tol_nonlinear = 0.3;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_path, "scenario file")->required();
        cmd->add_option("--out", out_dir, "output directory");
    };
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--dr", override_dr, "grid spacing override");
        cmd->add_option("--tmax", override_tmax, "final time override");
        cmd->add_option("--rmax", override_rmax, "outer radius override");
        cmd->add_option("--cfl", override_cfl, "CFL ratio override");
    };

    CLI::App* predict = app.add_subcommand("predict", "symbolic decay rates only");
    add_common(predict);

    CLI::App* simulate = app.add_subcommand("simulate", "evolve the field and store checkpoints");
    add_common(simulate);
    add_grid(simulate);

    CLI::App* measure = app.add_subcommand("measure", "region statistics from a stored checkpoint");
    add_common(measure);
    measure->add_option("--checkpoint", checkpoint_path, "checkpoint file")->required();

    CLI::App* verify = app.add_subcommand("verify", "predict, simulate, measure and compare");
    add_common(verify);
    add_grid(verify);
    verify->add_option("--mode", mode, "predict-only | simulate-only | full-verify");
    verify->add_option("--tol-linear", tol_linear, "slope tolerance for linear runs");
    verify->add_option("--tol-nonlinear", tol_nonlinear, "slope tolerance for nonlinear runs");

    CLI11_PARSE(app, argc, argv);

    try {
        Scenario sc = load_scenario(scenario_path);
        if (sc.background.a_gomega != 0.0)
            std::cerr << "note: the spherical-harmonic coefficient is accepted but acts"
                         " trivially on radial fields\n";
        if (override_dr > 0) sc.grid.dr = override_dr;
        if (override_tmax > 0) sc.grid.t_max = override_tmax;
        if (override_rmax > 0) sc.grid.r_max = override_rmax;
        if (override_cfl > 0) sc.grid.cfl = override_cfl;

        if (predict->parsed()) {
            auto a = run_predict(sc);
            write_predict(out_dir, a);
            std::cout << "closed-form rate: " << a.closed_form.str() << "\n";
            std::cout << "interior fixed point: " << a.interior.final.str() << " ("
                      << a.interior.sweeps << " sweeps)\n";
            std::cout << "exterior fixed point: " << a.exterior.final.str() << " ("
                      << a.exterior.sweeps << " sweeps)\n";
            return 0;
        }

        if (simulate->parsed()) {
            FieldHistory h = run_scenario(sc);
            if (!out_dir.empty()) {
                ensure_dir(out_dir);
                save_checkpoint(join_path(out_dir, "checkpoint.bin"), h);
                write_file_atomic(join_path(out_dir, "probes.csv"), probes_csv(h));
                write_file_atomic(join_path(out_dir, "energy.csv"), energy_csv(h));
                write_file_atomic(join_path(out_dir, "tslices.csv"), tslices_csv(h));
                write_file_atomic(join_path(out_dir, "ucurves.csv"), ucurves_csv(h));
            }
            std::cout << "evolved to t=" << format_double(sc.grid.t_max) << ", "
                      << h.n_slices() << " slices stored\n";
            return 0;
        }

        if (measure->parsed()) {
            FieldHistory h = load_checkpoint(checkpoint_path);
            auto stats = measure_regions(h);
            std::string csv = region_stats_csv(stats);
            if (!out_dir.empty()) {
                ensure_dir(out_dir);
                write_file_atomic(join_path(out_dir, "regions.csv"), csv);
            } else {
                std::cout << csv;
            }
            return 0;
        }

        // verify
        auto a = run_predict(sc);
        write_predict(out_dir, a);
        if (mode == "predict-only") {
            std::cout << "closed-form rate: " << a.closed_form.str() << "\n";
            return 0;
        }
        FieldHistory h = run_scenario(sc);
        if (!out_dir.empty()) {
            ensure_dir(out_dir);
            save_checkpoint(join_path(out_dir, "checkpoint.bin"), h);
            write_file_atomic(join_path(out_dir, "probes.csv"), probes_csv(h));
            write_file_atomic(join_path(out_dir, "energy.csv"), energy_csv(h));
            write_file_atomic(join_path(out_dir, "tslices.csv"), tslices_csv(h));
            write_file_atomic(join_path(out_dir, "ucurves.csv"), ucurves_csv(h));
            write_file_atomic(join_path(out_dir, "regions.csv"), region_stats_csv(measure_regions(h)));
        }
        if (mode == "simulate-only") return 0;

        double tol = sc.terms.empty() ? tol_linear : tol_nonlinear;
        FitResult fit = fit_fixed_r_slope(h, sc.grid.t_max / 8.0, sc.grid.t_max);
        RateVerdict v = compare_rates("interior-rate[fixed-r tail slope]", fit.slope, a.closed_form,
                                      ProbeAxis::FixedRvsT, tol, sc.background.sigma);
        std::vector<RateVerdict> verdicts{v};
        std::string text = verdicts_text(verdicts);
        std::cout << text;
        if (!out_dir.empty()) {
            write_file_atomic(join_path(out_dir, "verdict.txt"), text);
            write_file_atomic(join_path(out_dir, "verdict.csv"), verdicts_csv(verdicts));
        }
        return v.pass ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
