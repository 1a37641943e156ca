// snls_cli.cpp — command dispatch for the simulation and verification
// pipelines.  Every command writes its artifacts plus a manifest.json into
// --out; artifacts are deterministic for a fixed config/seed and any thread
// count.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "snls/manifest.hpp"
#include "snls/nemytskii.hpp"
#include "snls/parallel.hpp"
#include "snls/studies.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace snls;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int paths = 0;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "configuration file (INI)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "seed override")->each([&](const std::string&) {
        o.seed_set = true;
    });
    cmd->add_option("--paths", o.paths, "ensemble size override");
    cmd->add_option("--threads", o.threads, "worker threads");
}

SimConfig load_config(const CommonOpts& o) {
    SimConfig cfg = o.config_path.empty() ? SimConfig{} : parse_config(o.config_path);
    if (o.seed_set) cfg.seed = o.seed;
    cfg.validate();
    return cfg;
}

struct ArtifactSink {
    fs::path dir;
    std::vector<std::string> written;

    explicit ArtifactSink(const std::string& d) : dir(d) { fs::create_directories(dir); }
    std::string path(const std::string& name) {
        written.push_back(name);
        return (dir / name).string();
    }
};

void finish(const CommonOpts& o, const SimConfig& cfg, const std::string& command,
            ArtifactSink& sink, std::chrono::steady_clock::time_point start) {
    RunManifest m;
    m.command = command;
    m.config = cfg;
    m.seed = cfg.seed;
    m.paths = o.paths > 0 ? o.paths : 1;
    m.threads = o.threads;
    m.artifacts = sink.written;
    m.wallclock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_json((sink.dir / "manifest.json").string(), manifest_json(m));
}

json diag_curves_json(const std::vector<RunResult>& runs) {
    json paths = json::array();
    for (const auto& r : runs) {
        json hits = json::array();
        for (const auto& h : r.hits) {
            json hj;
            hj["threshold"] = format17(h.threshold);
            hj["norm"] = h.norm;
            hj["hit"] = h.hit;
            if (h.hit) hj["time"] = format17(h.time);
            hits.push_back(hj);
        }
        json pj;
        pj["hits"] = hits;
        pj["numerical_blowup"] = r.flags.numerical_blowup;
        if (r.flags.numerical_blowup) pj["blowup_time"] = format17(r.flags.blowup_time);
        pj["resolution_loss"] = r.flags.resolution_loss;
        paths.push_back(pj);
    }
    return paths;
}

std::vector<PathDiagnostics> to_path_diags(const std::vector<RunResult>& runs) {
    std::vector<PathDiagnostics> out;
    for (const auto& r : runs) {
        PathDiagnostics pd;
        for (const auto& d : r.diag) {
            pd.t.push_back(d.t);
            pd.psi.push_back(d.psi);
            pd.mass_v.push_back(d.mass);
            pd.h1.push_back(d.h1);
        }
        out.push_back(std::move(pd));
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const CommonOpts& o, bool repro_check, bool export_paths, int dump_every) {
    auto start = std::chrono::steady_clock::now();
    SimConfig cfg = load_config(o);
    int paths = o.paths > 0 ? o.paths : 8;

    auto run_into = [&](const std::string& dir, int threads) {
        ArtifactSink sink(dir);
        auto grid = make_grid(cfg.n, cfg.side);
        GridFunction u0 = default_initial_state(grid);
        bool keep = dump_every > 0;
        std::vector<RunResult> runs = ensemble_run(cfg, u0, paths, threads, keep);
        for (int i = 0; i < paths; ++i) {
            char name[64];
            std::snprintf(name, sizeof(name), "traj_%03d.jsonl", i);
            write_text(sink.path(name), trajectory_jsonl(runs[std::size_t(i)]));
            if (export_paths) {
                std::snprintf(name, sizeof(name), "path_%03d.bin", i);
                write_path(sample_path(cfg.J, cfg.dt, cfg.steps(), cfg.seed, std::uint32_t(i)),
                           sink.path(name));
            }
            if (keep) {
                const Trajectory& tr = runs[std::size_t(i)].traj;
                for (std::size_t m = 0; m < tr.states.size(); m += std::size_t(dump_every)) {
                    std::snprintf(name, sizeof(name), "state_%03d_%05zu.bin", i, m);
                    write_state(tr.states[m], sink.path(name));
                }
            }
            if (runs[std::size_t(i)].flags.numerical_blowup &&
                runs[std::size_t(i)].final_state) {
                // last finite state before the aborted step
                std::snprintf(name, sizeof(name), "blowup_state_%03d.bin", i);
                write_state(*runs[std::size_t(i)].final_state, sink.path(name));
            }
        }
        json summary;
        summary["paths"] = diag_curves_json(runs);
        write_json(sink.path("summary.json"), summary);
        return sink;
    };

    if (!repro_check) {
        ArtifactSink sink = run_into(o.out_dir, o.threads);
        finish(o, cfg, "simulate", sink, start);
        std::cout << "simulate: wrote " << sink.written.size() << " artifacts to " << o.out_dir
                  << "\n";
        return 0;
    }

    // reproducibility check: two full runs, threads 1 and 4, byte-compared
    ArtifactSink a = run_into(o.out_dir + "/run1", 1);
    ArtifactSink b = run_into(o.out_dir + "/run2", 4);
    bool ok = a.written == b.written;
    if (ok) {
        for (const std::string& name : a.written) {
            std::ifstream fa((fs::path(o.out_dir) / "run1" / name), std::ios::binary);
            std::ifstream fb((fs::path(o.out_dir) / "run2" / name), std::ios::binary);
            std::string ca((std::istreambuf_iterator<char>(fa)), {});
            std::string cb((std::istreambuf_iterator<char>(fb)), {});
            if (ca != cb) {
                ok = false;
                std::cout << "mismatch: " << name << "\n";
            }
        }
    }
    ArtifactSink sink(o.out_dir);
    json rj;
    rj["byte_identical"] = ok;
    rj["files_compared"] = a.written.size();
    write_json(sink.path("repro_check.json"), rj);
    finish(o, cfg, "simulate --repro-check", sink, start);
    std::cout << (ok ? "repro-check: PASS (threads 1 vs 4 byte-identical)\n"
                     : "repro-check: FAIL\n");
    return ok ? 0 : 1;
}

int cmd_conservation(const CommonOpts& o) {
    auto start = std::chrono::steady_clock::now();
    SimConfig cfg = load_config(o);
    int paths = o.paths > 0 ? o.paths : 8;
    ArtifactSink sink(o.out_dir);

    auto grid = make_grid(cfg.n, cfg.side);
    GridFunction u0 = default_initial_state(grid);
    std::vector<RunResult> runs = ensemble_run(cfg, u0, paths, o.threads);

    double max_drift = 0.0;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        double m0 = runs[i].diag.front().mass;
        for (const auto& d : runs[i].diag) {
            double drift = std::abs(d.mass - m0) / m0;
            max_drift = std::max(max_drift, drift);
            rows.push_back({double(i), d.t, d.mass, drift});
        }
    }
    write_csv(sink.path("mass_drift.csv"), {"path", "t", "mass", "rel_drift"}, rows);
    json rj;
    rj["max_relative_drift"] = format17(max_drift);
    rj["paths"] = paths;
    write_json(sink.path("conservation.json"), rj);
    finish(o, cfg, "conservation", sink, start);
    std::cout << "conservation: max relative mass drift " << format17(max_drift) << "\n";
    return 0;
}

int cmd_strichartz(const CommonOpts& o, const std::string& mode, std::vector<double> t_sweep,
                   std::vector<int> j_sweep) {
    auto start = std::chrono::steady_clock::now();
    SimConfig cfg = load_config(o);
    ArtifactSink sink(o.out_dir);
    auto grid = make_grid(cfg.n, cfg.side);
    EnormSpec enorm = cfg.enorm();

    if (mode == "det") {
        if (t_sweep.empty()) t_sweep = {1.0, 0.5, 0.25, 0.125};
        int draws = o.paths > 0 ? o.paths : 100;
        double dt = 1.0 / 128.0;
        auto reports = strichartz_hom(grid, draws, t_sweep, dt, cfg.p, cfg.q, cfg.s, enorm,
                                      cfg.seed);
        json arr = json::array();
        for (const auto& r : reports) {
            json j;
            j["T"] = format17(r.T);
            j["max_quotient"] = format17(r.max_quotient);
            j["mean_quotient"] = format17(r.mean_quotient);
            j["bootstrap_lo"] = format17(r.bootstrap_lo);
            j["bootstrap_hi"] = format17(r.bootstrap_hi);
            j["ensemble"] = r.ensemble;
            j["enorm"] = r.enorm;
            arr.push_back(j);
        }
        InhomReport ir = strichartz_inhom(grid, std::min(draws, 50), 1.0, dt, cfg.p, cfg.q,
                                          cfg.s, enorm, cfg.seed ^ 0x696eu);
        json j;
        j["homogeneous"] = arr;
        j["inhomogeneous"] = {{"lp_quotient_max", format17(ir.lp_quotient_max)},
                              {"cnorm_quotient_max", format17(ir.cnorm_quotient_max)},
                              {"ensemble", ir.ensemble}};
        write_json(sink.path("strichartz_det.json"), j);
        std::cout << "strichartz det: max hom quotient at T=" << t_sweep.front() << " is "
                  << format17(reports.front().max_quotient)
                  << "; inhom C-norm quotient " << format17(ir.cnorm_quotient_max) << "\n";
    } else if (mode == "stoch") {
        if (j_sweep.empty()) j_sweep = {2, 4, 8};
        int paths = o.paths > 0 ? o.paths : 64;
        GridFunction v0 = default_initial_state(grid);
        json arr = json::array();
        for (int J : j_sweep) {
            NoiseBasis basis = build_basis(grid, J, cfg.rho, cfg.s0, cfg.shat(), cfg.q);
            auto rep = strichartz_stoch(basis, v0, cfg.coeffs, paths, cfg.T, cfg.dt, cfg.p,
                                        cfg.s, enorm, cfg.seed + std::uint64_t(J));
            json j;
            j["J"] = rep.J;
            j["lhs"] = format17(rep.lhs);
            j["lhs_se"] = format17(rep.lhs_se);
            j["rhs"] = format17(rep.rhs);
            j["ratio"] = format17(rep.ratio);
            j["ratio_se"] = format17(rep.ratio_se);
            j["maximal_ratio"] = format17(rep.maximal_ratio);
            j["paths"] = rep.paths;
            j["degenerate"] = rep.degenerate;
            arr.push_back(j);
            std::cout << "strichartz stoch J=" << J << ": ratio " << format17(rep.ratio)
                      << " +- " << format17(rep.ratio_se) << "\n";
        }
        json j;
        j["sweep"] = arr;
        write_json(sink.path("strichartz_stoch.json"), j);
    } else {
        std::cerr << "unknown --mode " << mode << " (expected det|stoch)\n";
        return 2;
    }
    finish(o, cfg, "strichartz --mode " + mode, sink, start);
    return 0;
}

int cmd_nemytskii(const CommonOpts& o, int draws, double theta, double q) {
    auto start = std::chrono::steady_clock::now();
    SimConfig cfg = load_config(o);
    ArtifactSink sink(o.out_dir);
    auto grid = make_grid(8, cfg.side);  // audits run at the Slobodetskii-friendly size
    ScalarMap cubic = [](cplx z) { return std::norm(z) * z; };

    json records = json::array();
    int violations = 0;
    double worst_half_use = 0.0;
    auto add = [&](const AuditRecord& r) {
        json j;
        j["inequality"] = r.inequality;
        j["lhs"] = format17(r.lhs);
        j["rhs"] = format17(r.rhs);
        j["slack"] = format17(r.slack);
        j["K1"] = format17(r.K1);
        j["K2"] = format17(r.K2);
        j["k_source"] = r.k_source;
        j["seed"] = r.seed;
        if (r.inequality == "lipschitz-seminorm")
            j["half_term_utilization"] = format17(r.half_term_utilization);
        records.push_back(j);
        if (r.slack < 0.0) ++violations;
        worst_half_use = std::max(worst_half_use, r.half_term_utilization);
    };

    for (int d = 0; d < draws; ++d) {
        GridFunction gamma = random_band_limited(grid, 2, cfg.seed, std::uint32_t(2 * d));
        GridFunction sigma = random_band_limited(grid, 2, cfg.seed, std::uint32_t(2 * d + 1));
        double R = std::max(linf_norm(gamma), linf_norm(sigma));
        KSet K = cubic_analytic_K(R);
        add(audit_growth(cubic, gamma, theta, q, cubic_analytic_K(linf_norm(gamma)).K1,
                         cfg.seed));
        auto [l13, l14] = audit_lipschitz(cubic, gamma, sigma, theta, q, K, cfg.seed);
        add(l13);
        add(l14);
        add(audit_algebra(sigma, gamma, theta, q));
    }
    json j;
    j["records"] = records;
    j["violations"] = violations;
    j["max_half_term_utilization"] = format17(worst_half_use);
    write_json(sink.path("nemytskii_audit.json"), j);
    finish(o, cfg, "nemytskii-audit", sink, start);
    std::cout << "nemytskii-audit: " << draws << " draws, " << violations << " violations\n";
    return violations == 0 ? 0 : 1;
}

int cmd_energy(const CommonOpts& o, const std::string& mode, const std::string& cases) {
    auto start = std::chrono::steady_clock::now();
    SimConfig cfg = load_config(o);
    ArtifactSink sink(o.out_dir);

    if (mode == "pairing") {
        auto grid = make_grid(cfg.n, cfg.side);
        int draws = o.paths > 0 ? o.paths : 100;
        PairingReport rep = pairing_drift_study(grid, draws, cfg.coeffs, cfg.seed);
        json j;
        j["draws"] = rep.draws;
        j["max_relative_residual"] = format17(rep.max_relative_residual);
        write_json(sink.path("pairing.json"), j);
        finish(o, cfg, "energy-envelope --mode pairing", sink, start);
        std::cout << "pairing: max relative residual " << format17(rep.max_relative_residual)
                  << "\n";
        return 0;
    }

    // envelope mode; `cases` selects coefficient cases run off the base config
    std::vector<std::pair<std::string, CoefficientSpec>> specs;
    if (cases.empty()) {
        specs.emplace_back("config", cfg.coeffs);
    } else {
        std::stringstream ss(cases);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "defocusing_cubic")
                specs.emplace_back(item, CoefficientSpec::defocusing_cubic());
            else if (item == "focusing_sqrt")
                specs.emplace_back(item, CoefficientSpec::focusing_sqrt());
            else
                throw std::invalid_argument("unknown case tag: " + item);
        }
    }
    int paths = o.paths > 0 ? o.paths : 32;
    json out = json::object();
    for (auto& [tag, coeffs] : specs) {
        SimConfig c = cfg;
        c.coeffs = coeffs;
        auto grid = make_grid(c.n, c.side);
        GridFunction u0 = default_initial_state(grid);
        std::vector<RunResult> runs = ensemble_run(c, u0, paths, o.threads);
        GronwallReport rep = gronwall_envelope(to_path_diags(runs), c.coeffs);
        int blowups = 0;
        for (const auto& r : runs) blowups += r.flags.numerical_blowup ? 1 : 0;
        json j;
        j["c_coercivity"] = format17(rep.c_coercivity);
        j["C_fitted"] = format17(rep.C_fitted);
        j["fit_failed"] = rep.fit_failed;
        j["violations"] = rep.violations;
        j["min_psi_plus_cmass"] = format17(rep.min_psi_plus_cmass);
        j["numerical_blowups"] = blowups;
        j["paths"] = diag_curves_json(runs);
        out[tag] = j;
        // per-time ensemble means alongside the fitted envelope
        std::vector<double> mean_psi(rep.times.size(), 0.0), mean_mass(rep.times.size(), 0.0),
            mean_h1(rep.times.size(), 0.0);
        for (const auto& r : runs)
            for (std::size_t i = 0; i < rep.times.size() && i < r.diag.size(); ++i) {
                mean_psi[i] += r.diag[i].psi / double(runs.size());
                mean_mass[i] += r.diag[i].mass / double(runs.size());
                mean_h1[i] += r.diag[i].h1 / double(runs.size());
            }
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < rep.times.size(); ++i)
            rows.push_back({rep.times[i], mean_psi[i], mean_mass[i], mean_h1[i],
                            rep.mean_curve[i], rep.envelope.empty() ? 0.0 : rep.envelope[i]});
        write_csv(sink.path("envelope_" + tag + ".csv"),
                  {"t", "mean_psi", "mean_mass", "mean_h1", "mean_psi_offset", "envelope"}, rows);
        std::cout << "energy-envelope[" << tag << "]: C=" << format17(rep.C_fitted)
                  << " violations=" << rep.violations << " blowups=" << blowups << "\n";
    }
    write_json(sink.path("envelope.json"), out);
    finish(o, cfg, "energy-envelope", sink, start);
    return 0;
}

int cmd_picard(const CommonOpts& o, bool with_noise, double compare_factor, double noise_T) {
    auto start = std::chrono::steady_clock::now();
    SimConfig cfg = load_config(o);
    ArtifactSink sink(o.out_dir);
    auto grid = make_grid(cfg.n, cfg.side);
    GridFunction u0 = default_initial_state(grid);

    json j;
    PicardCrossCheck cc = picard_vs_splitting(cfg, u0, compare_factor);
    json jd;
    jd["converged"] = cc.picard.report.converged;
    jd["non_contractive"] = cc.picard.report.non_contractive;
    jd["iterations"] = cc.picard.report.iterations;
    jd["rho"] = json::array();
    for (double r : cc.picard.report.rho) jd["rho"].push_back(format17(r));
    jd["rel_sup_l2_gap_vs_fine_splitting"] = format17(cc.rel_sup_l2_gap);
    j["deterministic"] = jd;
    std::cout << "picard: converged=" << cc.picard.report.converged
              << " iters=" << cc.picard.report.iterations
              << " gap=" << format17(cc.rel_sup_l2_gap) << "\n";

    if (with_noise) {
        // second clause: contraction over one fixed Brownian path
        NoiseBasis basis = build_basis(grid, cfg.J, cfg.rho, cfg.s0, cfg.shat(), cfg.q);
        int steps = int(noise_T / cfg.dt + 0.5);
        BrownianPath path = sample_path(cfg.J, cfg.dt, std::max(1, steps), cfg.seed, 0);
        PicardResult pr = picard_solve(u0, noise_T, cfg.n_cut, &path, &basis, cfg);
        json jn;
        jn["T"] = format17(noise_T);
        jn["converged"] = pr.report.converged;
        jn["non_contractive"] = pr.report.non_contractive;
        jn["iterations"] = pr.report.iterations;
        jn["rho"] = json::array();
        for (double r : pr.report.rho) jn["rho"].push_back(format17(r));
        j["fixed_path"] = jn;
        std::cout << "picard (noise): converged=" << pr.report.converged
                  << " iters=" << pr.report.iterations << "\n";
    }
    write_json(sink.path("picard.json"), j);
    finish(o, cfg, "picard", sink, start);
    return 0;
}

int cmd_ito_strat(const CommonOpts& o, const std::string& mode, std::vector<double> dts) {
    auto start = std::chrono::steady_clock::now();
    SimConfig cfg = load_config(o);
    ArtifactSink sink(o.out_dir);
    json j;

    if (mode == "bias") {
        if (dts.empty()) dts = {4e-3, 2e-3, 1e-3};
        int paths = o.paths > 0 ? o.paths : 256;
        BiasReport rep = stratonovich_bias_study(paths, cfg.T, dts, cfg.seed, o.threads);
        j["dts"] = json::array();
        for (double d : rep.dts) j["dts"].push_back(format17(d));
        auto arr = [&](const std::vector<double>& v) {
            json a = json::array();
            for (double x : v) a.push_back(format17(x));
            return a;
        };
        j["stat_with"] = arr(rep.stat_with);
        j["se_with"] = arr(rep.se_with);
        j["stat_without"] = arr(rep.stat_without);
        j["se_without"] = arr(rep.se_without);
        j["closed_form_with"] = arr(rep.closed_form_with);
        j["fitted_order_with"] = format17(rep.fitted_order_with);
        j["reference_without"] = format17(rep.reference_without);
        j["paths"] = rep.paths;
        std::cout << "ito-strat bias: fitted order " << format17(rep.fitted_order_with)
                  << ", without-correction stat " << format17(rep.stat_without.back())
                  << " (ref " << format17(rep.reference_without) << ")\n";
    } else if (mode == "m-formula") {
        int count = o.paths > 0 ? o.paths : 1000;
        MFormulaReport rep = m_formula_check(cfg.coeffs, count, 5.0, 1e-5, cfg.seed);
        j["count"] = rep.count;
        j["max_fd_error"] = format17(rep.max_fd_error);
        j["max_identity_error"] = format17(rep.max_identity_error);
        std::cout << "m-formula: max FD error " << format17(rep.max_fd_error)
                  << ", identity error " << format17(rep.max_identity_error) << "\n";
    } else if (mode == "strong") {
        auto grid = make_grid(cfg.n, cfg.side);
        GridFunction u0 = default_initial_state(grid);
        StrongOrderReport rep = strong_order_study(cfg, u0, 3, cfg.seed);
        j["dts"] = json::array();
        for (double d : rep.dts) j["dts"].push_back(format17(d));
        j["errors"] = json::array();
        for (double e : rep.errors) j["errors"].push_back(format17(e));
        j["fitted_order"] = format17(rep.fitted_order);
        std::cout << "strong-order: fitted " << format17(rep.fitted_order) << "\n";
    } else {
        std::cerr << "unknown --mode " << mode << " (expected bias|m-formula|strong)\n";
        return 2;
    }
    write_json(sink.path("ito_strat_" + mode + ".json"), j);
    finish(o, cfg, "ito-strat-compare --mode " + mode, sink, start);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"snls: stochastic NLS spectral simulator and verification lab"};
    app.require_subcommand(1);

    CommonOpts o;
    bool repro_check = false;
    std::string mode = "det";
    std::string energy_mode = "envelope";
    std::string cases;
    std::vector<double> t_sweep, dts;
    std::vector<int> j_sweep;
    int draws = 200;
    double theta = 0.5, q = 4.0;
    bool with_noise = false;
    double compare_factor = 10.0;
    double noise_T = 0.02;

    auto* sim = app.add_subcommand("simulate", "run a trajectory ensemble");
    add_common(sim, o);
    sim->add_flag("--repro-check", repro_check,
                  "run twice (threads 1 and 4) and byte-compare artifacts");
    bool export_paths = false;
    int dump_every = 0;
    sim->add_flag("--export-paths", export_paths, "write the Brownian tables (binary format)");
    sim->add_option("--dump-every", dump_every, "binary state dump every m steps");

    auto* cons = app.add_subcommand("conservation", "mass drift along splitting trajectories");
    add_common(cons, o);

    auto* str = app.add_subcommand("strichartz", "Strichartz quotient estimators");
    add_common(str, o);
    str->add_option("--mode", mode, "det|stoch");
    str->add_option("--T-sweep", t_sweep, "horizons for the homogeneous sweep")->delimiter(',');
    str->add_option("--J-sweep", j_sweep, "mode counts for the stochastic sweep")->delimiter(',');

    auto* nem = app.add_subcommand("nemytskii-audit", "composition-operator inequality audits");
    add_common(nem, o);
    nem->add_option("--draws", draws, "random band-limited pairs");
    nem->add_option("--theta", theta, "Slobodetskii order");
    nem->add_option("--q", q, "integrability exponent");

    auto* en = app.add_subcommand("energy-envelope",
                                  "Lyapunov/Gronwall diagnostics (or --mode pairing)");
    add_common(en, o);
    en->add_option("--mode", energy_mode, "envelope|pairing");
    en->add_option("--cases", cases, "comma list: defocusing_cubic,focusing_sqrt");

    auto* pic = app.add_subcommand("picard", "truncated Picard fixed-point iteration");
    add_common(pic, o);
    pic->add_flag("--with-noise", with_noise,
                  "also iterate over one fixed Brownian path at --noise-T");
    pic->add_option("--noise-T", noise_T, "horizon for the fixed-path clause");
    pic->add_option("--compare-factor", compare_factor,
                    "fine splitting dt divisor for the cross-check");

    auto* its = app.add_subcommand("ito-strat-compare",
                                   "Ito/Stratonovich consistency studies");
    add_common(its, o);
    its->add_option("--mode", mode, "bias|m-formula|strong");
    its->add_option("--dts", dts, "time steps for the bias sweep")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(o, repro_check, export_paths, dump_every);
        if (cons->parsed()) return cmd_conservation(o);
        if (str->parsed()) return cmd_strichartz(o, mode, t_sweep, j_sweep);
        if (nem->parsed()) return cmd_nemytskii(o, draws, theta, q);
        if (en->parsed()) return cmd_energy(o, energy_mode, cases);
        if (pic->parsed()) return cmd_picard(o, with_noise, compare_factor, noise_T);
        if (its->parsed()) return cmd_ito_strat(o, mode, dts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
