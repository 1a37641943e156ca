// studies.cpp
#include "snls/studies.hpp"

#include <cmath>

#include "snls/kernels.hpp"
#include "snls/parallel.hpp"
#include "snls/rng.hpp"

namespace snls {

GridFunction default_initial_state(const std::shared_ptr<const TorusGrid>& grid) {
    int n = grid->n;
    std::vector<cplx> v(std::size_t(n) * n);
    for (int a = 0; a < n; ++a) {
        double x1 = grid->coord(a);
        for (int b = 0; b < n; ++b) {
            double x2 = grid->coord(b);
            double re = 0.6 + 0.4 * std::cos(x1) + 0.3 * std::sin(x2);
            double im = 0.2 * std::sin(x1) + 0.1 * std::cos(x1 + x2);
            v[std::size_t(a) * n + b] = cplx(re, im);
        }
    }
    return GridFunction(grid, std::move(v));
}

std::vector<RunResult> ensemble_run(const SimConfig& cfg, const GridFunction& u0, int paths,
                                    int threads, bool keep_states) {
    NoiseBasis basis = build_basis(u0.grid_ptr(), cfg.J, cfg.rho, cfg.s0, cfg.shat(), cfg.q);
    std::vector<RunResult> out(paths);
    parallel_for(std::size_t(paths), threads, [&](std::size_t i) {
        BrownianPath path = sample_path(cfg.J, cfg.dt, cfg.steps(), cfg.seed, std::uint32_t(i));
        out[i] = run_trajectory(cfg, basis, path, u0, keep_states);
    });
    return out;
}

namespace {

struct MeanSe {
    double mean = 0.0, se = 0.0;
};

MeanSe batch_mean_se(const std::vector<double>& x, int batches) {
    int n = int(x.size());
    int per = n / batches;
    std::vector<double> bm(batches, 0.0);
    for (int b = 0; b < batches; ++b) {
        for (int i = 0; i < per; ++i) bm[b] += x[std::size_t(b) * per + i];
        bm[b] /= per;
    }
    MeanSe st;
    for (double v : bm) st.mean += v / batches;
    double var = 0.0;
    for (double v : bm) var += (v - st.mean) * (v - st.mean);
    st.se = std::sqrt(var / (double(batches - 1) * batches));
    return st;
}

}  // namespace

double fit_order(const std::vector<double>& dts, const std::vector<double>& errs) {
    // least-squares slope of log(err) against log(dt)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = int(dts.size());
    for (int i = 0; i < n; ++i) {
        double x = std::log(dts[i]);
        double y = std::log(std::max(1e-300, errs[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BiasReport stratonovich_bias_study(int paths, double T, const std::vector<double>& dts,
                                   std::uint64_t seed, int threads) {
    require(paths >= 16, "bias study: need at least 16 paths");
    auto grid = make_grid(4);
    CoefficientSpec spec;
    spec.f_case = FCase::none;
    spec.g_case = GCase::constant;
    spec.g_value = 1.0;
    NoiseBasis basis = build_basis(grid, 1, 4.0);  // single constant mode, 𝔭 ≡ 1
    GridFunction u0 = constant_field(grid, cplx(1.0, 0.0));
    const double m0 = mass(u0);
    const double p_trace = basis.p_field.values()[0].real();

    BiasReport rep;
    rep.paths = paths;
    rep.T = T;
    rep.dts = dts;
    rep.reference_without = std::exp(p_trace * T) - 1.0;

    for (double dt : dts) {
        int M = int(T / dt + 0.5);
        std::vector<double> with_cv(paths), without(paths);
        parallel_for(std::size_t(paths), threads, [&](std::size_t pa) {
            BrownianPath path = sample_path(1, dt, M, seed, std::uint32_t(pa));
            GridFunction u = u0, v = u0;
            double cv = 1.0;
            for (int m = 0; m < M; ++m) {
                GridFunction dW = noise_field(path, m, basis);
                u = step_ito_em(u, dt, dW, spec, basis.p_field, true, true);
                v = step_ito_em(v, dt, dW, spec, basis.p_field, true, false);
                double inc = path.inc(m, 0);
                cv *= 1.0 + (inc * inc - p_trace * dt);
            }
            with_cv[pa] = mass(u) / m0 - (cv - 1.0);
            without[pa] = mass(v) / m0;
        });
        MeanSe w = batch_mean_se(with_cv, 8);
        MeanSe wo = batch_mean_se(without, 8);
        rep.stat_with.push_back(std::abs(w.mean - 1.0));
        rep.se_with.push_back(w.se);
        rep.stat_without.push_back(std::abs(wo.mean - 1.0));
        rep.se_without.push_back(wo.se);
        rep.closed_form_with.push_back(
            std::pow(1.0 + 0.25 * p_trace * p_trace * dt * dt, double(M)) - 1.0);
    }
    rep.fitted_order_with = fit_order(rep.dts, rep.stat_with);
    return rep;
}

MFormulaReport m_formula_check(const CoefficientSpec& spec, int count, double radius, double h,
                               std::uint64_t seed) {
    MFormulaReport rep;
    rep.count = count;
    const cplx I(0.0, 1.0);
    auto ig = [&](cplx z) { return I * g_eval(z, spec); };
    for (int i = 0; i < count; ++i) {
        double r = radius * std::sqrt(rng::uniform(seed, rng::kStreamScalarSamples, 21,
                                                   std::uint32_t(i), 0));
        double ph = kTwoPi * rng::uniform(seed, rng::kStreamScalarSamples, 21, std::uint32_t(i), 1);
        cplx z(r * std::cos(ph), r * std::sin(ph));
        cplx dir = ig(z);
        cplx fd = (ig(z + h * dir) - ig(z - h * dir)) / (2.0 * h);
        rep.max_fd_error = std::max(rep.max_fd_error, std::abs(fd - m_eval(z, spec)));
        cplx m = m_eval(z, spec);
        double ident = m.real() * z.real() + m.imag() * z.imag() + std::norm(g_eval(z, spec));
        rep.max_identity_error = std::max(rep.max_identity_error, std::abs(ident));
    }
    return rep;
}

PairingReport pairing_drift_study(const std::shared_ptr<const TorusGrid>& grid, int draws,
                                  const CoefficientSpec& spec, std::uint64_t seed) {
    PairingReport rep;
    rep.draws = draws;
    for (int d = 0; d < draws; ++d) {
        GridFunction u = random_band_limited(grid, grid->n / 4, seed, std::uint32_t(d));
        double res = pairing_drift(u, spec);
        double psi = energy_psi(u, spec).total;
        rep.max_relative_residual =
            std::max(rep.max_relative_residual, std::abs(res) / (1.0 + psi));
    }
    return rep;
}

StrongOrderReport strong_order_study(const SimConfig& base, const GridFunction& u0, int halvings,
                                     std::uint64_t seed, int paths) {
    StrongOrderReport rep;
    NoiseBasis basis = build_basis(u0.grid_ptr(), base.J, base.rho, base.s0, base.shat(), base.q);
    double fine_dt = base.dt / std::pow(2.0, double(halvings));
    int fine_steps = int(base.T / fine_dt + 0.5);

    rep.dts.resize(std::size_t(halvings) + 1);
    rep.errors.assign(std::size_t(halvings) + 1, 0.0);
    for (int pa = 0; pa < paths; ++pa) {
        BrownianPath fine = sample_path(base.J, fine_dt, fine_steps, seed, std::uint32_t(pa));
        for (int lvl = 0; lvl <= halvings; ++lvl) {
            int factor = 1 << (halvings - lvl);
            BrownianPath path = coarsen_path(fine, factor);
            GridFunction em = u0, sp = u0;
            for (int m = 0; m < path.steps; ++m) {
                GridFunction dW = noise_field(path, m, basis);
                em = step_ito_em(em, path.dt, dW, base.coeffs, basis.p_field, true, true);
                sp = step_splitting(sp, path.dt, dW, base.coeffs, false);
            }
            double err = std::sqrt(u0.grid().cell_area() *
                                   kernels::ops().sum_sq_mod_diff(
                                       em.values().data(), sp.values().data(), em.size()));
            rep.dts[std::size_t(lvl)] = path.dt;
            rep.errors[std::size_t(lvl)] += err / double(paths);
        }
    }
    rep.fitted_order = fit_order(rep.dts, rep.errors);
    return rep;
}

PicardCrossCheck picard_vs_splitting(const SimConfig& cfg, const GridFunction& u0,
                                     double fine_dt_factor) {
    PicardCrossCheck out;
    out.picard = picard_solve(u0, cfg.T, cfg.n_cut, nullptr, nullptr, cfg);

    // fine splitting run of the same deterministic equation
    SimConfig fine = cfg;
    fine.dt = cfg.dt / fine_dt_factor;
    int sub = int(fine_dt_factor + 0.5);
    GridFunction u = u0;
    GridFunction zero_dw = constant_field(u0.grid_ptr(), 0.0);
    double gap = 0.0, scale = 0.0;
    const Trajectory& X = out.picard.fixed_point;
    for (int m = 1; m < int(X.states.size()); ++m) {
        for (int s = 0; s < sub; ++s)
            u = step_splitting(u, fine.dt, zero_dw, cfg.coeffs, false);
        double d = std::sqrt(u0.grid().cell_area() *
                             kernels::ops().sum_sq_mod_diff(u.values().data(),
                                                            X.states[m].values().data(),
                                                            u.size()));
        gap = std::max(gap, d);
        scale = std::max(scale, std::sqrt(mass(u)));
    }
    out.rel_sup_l2_gap = gap / scale;
    return out;
}

}  // namespace snls
