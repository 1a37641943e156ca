// evolution.cpp
#include "snls/evolution.hpp"

#include <cmath>

#include "snls/diagnostics.hpp"
#include "snls/kernels.hpp"

namespace snls {

namespace {

struct BlowupError : std::runtime_error {
    explicit BlowupError(const std::string& what) : std::runtime_error(what) {}
};

void check_finite(const GridFunction& u, const char* where) {
    if (!u.finite()) throw BlowupError(std::string(where) + ": non-finite field");
}

// pointwise u ← e^{−i f̃(|u|²) dt} u; |u(x)| invariant, exact sub-flow
std::vector<cplx> phase_rotate_f(const std::vector<cplx>& v, double dt,
                                 const CoefficientSpec& spec) {
    std::vector<cplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double ang = -f_tilde(std::norm(v[i]), spec) * dt;
        out[i] = v[i] * cplx(std::cos(ang), std::sin(ang));
    }
    return out;
}

// pointwise u ← e^{−i g̃(|u|²) ΔW(x)} u; the exact Stratonovich noise flow
std::vector<cplx> phase_rotate_g(const std::vector<cplx>& v, const std::vector<cplx>& dW,
                                 const CoefficientSpec& spec) {
    std::vector<cplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double ang = -g_tilde(std::norm(v[i]), spec) * dW[i].real();
        out[i] = v[i] * cplx(std::cos(ang), std::sin(ang));
    }
    return out;
}

}  // namespace

GridFunction step_splitting(const GridFunction& u, double dt, const GridFunction& dW,
                            const CoefficientSpec& spec, bool strang) {
    check_finite(u, "step_splitting");
    if (!strang) {
        GridFunction lin = free_propagator(u, dt);
        std::vector<cplx> v = phase_rotate_f(lin.values(), dt, spec);
        v = phase_rotate_g(v, dW.values(), spec);
        GridFunction out(u.grid_ptr(), std::move(v));
        check_finite(out, "step_splitting");
        return out;
    }
    GridFunction half = free_propagator(u, 0.5 * dt);
    std::vector<cplx> v = phase_rotate_f(half.values(), 0.5 * dt, spec);
    v = phase_rotate_g(v, dW.values(), spec);
    v = phase_rotate_f(v, 0.5 * dt, spec);
    GridFunction out = free_propagator(GridFunction(u.grid_ptr(), std::move(v)), 0.5 * dt);
    check_finite(out, "step_splitting");
    return out;
}

GridFunction step_ito_em(const GridFunction& u, double dt, const GridFunction& dW,
                         const CoefficientSpec& spec, const GridFunction& p_field,
                         bool exponential, bool with_correction) {
    check_finite(u, "step_ito_em");
    const auto& v = u.values();
    const auto& w = dW.values();
    const auto& pf = p_field.values();
    const cplx I(0.0, 1.0);
    std::vector<cplx> stage(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        cplx drift = -I * f_eval(v[i], spec);
        if (with_correction) drift += 0.5 * pf[i].real() * m_eval(v[i], spec);
        stage[i] = v[i] + dt * drift - I * g_eval(v[i], spec) * w[i].real();
    }
    GridFunction staged(u.grid_ptr(), std::move(stage));
    if (exponential) {
        GridFunction out = free_propagator(staged, dt);
        check_finite(out, "step_ito_em");
        return out;
    }
    // plain forward-Euler linear term; only stable for spectrally trivial fields
    GridFunction lap = laplacian(u);
    std::vector<cplx> sv = staged.values();
    kernels::ops().axpy(sv.data(), I * dt, lap.values().data(), sv.size());
    GridFunction out(u.grid_ptr(), std::move(sv));
    check_finite(out, "step_ito_em");
    return out;
}

double top_shell_mass_fraction(const GridFunction& u) {
    const TorusGrid& g = u.grid();
    std::vector<cplx> hat = spectrum_of(u);
    double total = 0.0, top = 0.0;
    int cut = g.n / 3;
    for (int a = 0; a < g.n; ++a) {
        int ka = std::abs(g.mode_index(a));
        for (int b = 0; b < g.n; ++b) {
            int kb = std::abs(g.mode_index(b));
            double m = std::norm(hat[std::size_t(a) * g.n + b]);
            total += m;
            if (std::max(ka, kb) >= cut) top += m;
        }
    }
    return total > 0.0 ? top / total : 0.0;
}

RunResult run_trajectory(const SimConfig& cfg, const NoiseBasis& basis, const BrownianPath& path,
                         const GridFunction& u0, bool keep_states) {
    cfg.validate();
    int steps = cfg.steps();
    require(path.steps >= steps, "run_trajectory: path horizon shorter than T");
    require(path.modes == basis.J(), "run_trajectory: path and basis disagree on J");
    EnormSpec enorm = cfg.enorm();

    RunResult out;
    out.diag.reserve(steps + 1);
    std::vector<HittingRecord> hits;
    for (double k : cfg.thresholds) {
        hits.push_back(HittingRecord{k, false, 0.0, "H12"});
        hits.push_back(HittingRecord{k, false, 0.0, "Y"});
    }

    GridFunction u = u0;
    double sup_h_p = 0.0;        // running sup of H^{s,2} norm to the p-th power
    double e_integral_p = 0.0;   // running Σ Δt E^p (left endpoints)
    bool stopped = false;

    // ∫|g′(u)|²|∇u|²𝔭, ∫|g(u)|²𝔮, ½∫f̃(|u|²)|g(u)|²𝔭 — the three integrands
    // bounding the quadratic-variation part of the Ψ Itô expansion
    auto qv_integrands = [&](const GridFunction& state, StepDiag& d) {
        auto [g1, g2] = gradient(state);
        const auto& v = state.values();
        const auto& pf = basis.p_field.values();
        const auto& qf = basis.q_field.values();
        double b1 = 0.0, b2 = 0.0, b3 = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            double r = std::norm(v[i]);
            double gt = g_tilde(r, cfg.coeffs);
            double gp = g_tilde_prime(r, cfg.coeffs);
            double gop = std::max(std::abs(gt + 2.0 * r * gp), std::abs(gt));  // |g′| op-norm
            double grad2 = std::norm(g1.values()[i]) + std::norm(g2.values()[i]);
            double gsq = gt * gt * r;
            b1 += gop * gop * grad2 * pf[i].real();
            b2 += gsq * qf[i].real();
            b3 += 0.5 * f_tilde(r, cfg.coeffs) * gsq * pf[i].real();
        }
        double ca = state.grid().cell_area();
        d.qv_grad = ca * b1;
        d.qv_trace = ca * b2;
        d.qv_potential = ca * b3;
    };

    auto record = [&](double t, const GridFunction& state) {
        StepDiag d;
        d.t = t;
        d.mass = mass(state);
        EnergyRecord er = energy_psi(state, cfg.coeffs, t);
        d.kinetic = er.kinetic;
        d.potential = er.potential;
        d.psi = er.total;
        d.h1 = sobolev_norm(state, 1.0);
        d.e_norm = enorm.eval(state);
        double hs = sobolev_norm(state, cfg.s);
        sup_h_p = std::max(sup_h_p, std::pow(hs, cfg.p));
        d.y_running = std::pow(sup_h_p + e_integral_p, 1.0 / cfg.p);
        // left-endpoint quadrature: this state feeds the next interval
        e_integral_p += cfg.dt * std::pow(d.e_norm, cfg.p);
        if (cfg.record_energy_bound) qv_integrands(state, d);
        out.diag.push_back(d);
        for (auto& h : hits) {
            if (h.hit) continue;
            double monitor = h.norm == "H12" ? d.h1 : d.y_running;
            if (monitor >= h.threshold) {
                h.hit = true;
                h.time = t;
                if (cfg.stop_on_hit) stopped = true;
            }
        }
        if (!out.flags.resolution_loss && top_shell_mass_fraction(state) > 0.01) {
            out.flags.resolution_loss = true;
            out.flags.resolution_loss_time = t;
        }
    };

    if (keep_states) {
        out.traj.times.push_back(0.0);
        out.traj.states.push_back(u);
    }
    record(0.0, u);

    for (int i = 0; i < steps && !stopped; ++i) {
        GridFunction dW = noise_field(path, i, basis);
        GridFunction prev = u;
        try {
            if (cfg.scheme == Integrator::splitting) {
                u = step_splitting(u, cfg.dt, dW, cfg.coeffs, cfg.strang);
            } else {
                u = step_ito_em(u, cfg.dt, dW, cfg.coeffs, basis.p_field, cfg.exponential,
                                cfg.with_correction);
            }
        } catch (const BlowupError&) {
            out.flags.numerical_blowup = true;
            out.flags.blowup_time = double(i + 1) * cfg.dt;
            break;
        }
        double t = double(i + 1) * cfg.dt;
        if (keep_states) {
            out.traj.times.push_back(t);
            out.traj.states.push_back(u);
        }
        record(t, u);
        if (cfg.record_energy_bound) {
            // realized QV part of the Ψ expansion over this step: the Ψ
            // increment compensated by the martingale term; compared against
            // the recorded bound, violations flagged (truncated trace)
            const StepDiag& before = out.diag[out.diag.size() - 2];
            const StepDiag& after = out.diag.back();
            std::vector<double> pairs = pairing_noise(prev, basis, cfg.coeffs);
            double mart = 0.0;
            for (int j = 0; j < basis.J(); ++j) mart -= pairs[std::size_t(j)] * path.inc(i, j);
            double realized = after.psi - before.psi - mart;
            double bound = (before.qv_grad + before.qv_trace + before.qv_potential) * cfg.dt;
            double scale = std::abs(before.psi) + std::abs(bound) + 1.0;
            if (realized > bound + 0.1 * scale) ++out.flags.ito_bound_flags;
        }
    }

    out.hits = std::move(hits);
    out.final_state = u;
    return out;
}

GridFunction deterministic_convolution(const Trajectory& forcing, int t_index) {
    forcing.check();
    require(t_index >= 0 && std::size_t(t_index) < forcing.states.size(),
            "deterministic_convolution: index out of range");
    const auto& grid = forcing.states[0].grid_ptr();
    std::vector<cplx> acc(forcing.states[0].size(), cplx(0.0));
    if (t_index == 0) return GridFunction(grid, std::move(acc));
    double dt = forcing.dt();
    GridFunction result(grid, std::move(acc));
    for (int r = 0; r < t_index; ++r) {
        GridFunction prop = free_propagator(forcing.states[r], dt * double(t_index - r));
        std::vector<cplx> sum = result.values();
        kernels::ops().axpy(sum.data(), cplx(dt), prop.values().data(), sum.size());
        result = GridFunction(grid, std::move(sum));
    }
    return result;
}

namespace {

double y_distance(const Trajectory& a, const Trajectory& b, double p, double s,
                  const EnormSpec& enorm) {
    Trajectory diff;
    diff.times = a.times;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        std::vector<cplx> d(a.states[i].size());
        for (std::size_t j = 0; j < d.size(); ++j)
            d[j] = a.states[i].values()[j] - b.states[i].values()[j];
        diff.states.emplace_back(a.states[i].grid_ptr(), std::move(d));
    }
    return y_norm(diff, p, s, enorm);
}

}  // namespace

PicardResult picard_solve(const GridFunction& u0, double T, double n_cut,
                          const BrownianPath* path, const NoiseBasis* basis,
                          const SimConfig& cfg) {
    require(n_cut >= 1.0, "picard_solve: cutoff level must satisfy n_cut >= 1");
    double dt = cfg.dt;
    int M = int(T / dt + 0.5);
    require(M >= 1, "picard_solve: horizon shorter than one step");
    if (path) {
        require(basis != nullptr, "picard_solve: path given without basis");
        require(path->steps >= M, "picard_solve: path horizon too short");
        require(std::abs(path->dt - dt) < 1e-15 * std::max(1.0, dt),
                "picard_solve: path mesh does not match dt");
    }
    EnormSpec enorm = cfg.enorm();
    const cplx mi(0.0, -1.0);

    // pre-propagated free part U_{t_m} u0
    Trajectory free_part;
    for (int m = 0; m <= M; ++m) {
        free_part.times.push_back(dt * m);
        free_part.states.push_back(free_propagator(u0, dt * m));
    }

    Trajectory X = free_part;  // X^0
    ContractionReport rep;

    for (int iter = 0; iter < cfg.picard_max_iter; ++iter) {
        // cutoff weights θ_{n_cut}(|X|_{Y_{t_r}}) on the previous iterate
        std::vector<double> theta(M);
        for (int r = 0; r < M; ++r)
            theta[r] = cutoff_theta(y_norm_prefix(X, r, cfg.p, cfg.s, enorm), n_cut);

        // integrand fields θ·(−i)f(X(t_r)) and θ·(−i)g(X(t_r))
        std::vector<GridFunction> drift;
        drift.reserve(M);
        std::vector<GridFunction> diffusion;
        for (int r = 0; r < M; ++r) {
            std::vector<cplx> fv(X.states[r].size());
            const auto& xv = X.states[r].values();
            for (std::size_t i = 0; i < fv.size(); ++i)
                fv[i] = theta[r] * mi * f_eval(xv[i], cfg.coeffs);
            drift.emplace_back(u0.grid_ptr(), std::move(fv));
            if (path) {
                std::vector<cplx> gv(X.states[r].size());
                for (std::size_t i = 0; i < gv.size(); ++i)
                    gv[i] = theta[r] * mi * g_eval(xv[i], cfg.coeffs);
                diffusion.emplace_back(u0.grid_ptr(), std::move(gv));
            }
        }

        Trajectory next;
        next.times = free_part.times;
        for (int m = 0; m <= M; ++m) {
            std::vector<cplx> acc = free_part.states[m].values();
            // deterministic Duhamel sum
            for (int r = 0; r < m; ++r) {
                GridFunction prop = free_propagator(drift[r], dt * double(m - r));
                kernels::ops().axpy(acc.data(), cplx(dt), prop.values().data(), acc.size());
            }
            // stochastic convolution over the same fixed path
            if (path) {
                GridFunction sc = stochastic_convolution(diffusion, *path, *basis, m);
                kernels::ops().axpy(acc.data(), cplx(1.0), sc.values().data(), acc.size());
            }
            next.states.emplace_back(u0.grid_ptr(), std::move(acc));
        }

        double d = y_distance(next, X, cfg.p, cfg.s, enorm);
        rep.dist.push_back(d);
        if (rep.dist.size() >= 2 && rep.dist[rep.dist.size() - 2] > 0.0)
            rep.rho.push_back(d / rep.dist[rep.dist.size() - 2]);
        X = std::move(next);
        rep.iterations = iter + 1;

        if (d < cfg.picard_tol) {
            rep.converged = true;
            break;
        }
        if (rep.rho.size() >= 3) {
            std::size_t nr = rep.rho.size();
            if (rep.rho[nr - 1] >= 1.0 && rep.rho[nr - 2] >= 1.0 && rep.rho[nr - 3] >= 1.0) {
                rep.non_contractive = true;  // return best iterate, flagged
                break;
            }
        }
    }

    return PicardResult{std::move(X), std::move(rep)};
}

}  // namespace snls
