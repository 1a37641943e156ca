// diagnostics.cpp
#include "snls/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "snls/kernels.hpp"
#include "snls/rng.hpp"

namespace snls {

double mass(const GridFunction& u) {
    return u.grid().cell_area() * kernels::ops().sum_sq_mod(u.values().data(), u.size());
}

namespace {

// Σ |k|² |û_k|² with the Nyquist rows zeroed, matching the gradient() convention.
double kinetic_sum(const GridFunction& u) {
    const TorusGrid& g = u.grid();
    std::vector<cplx> hat = spectrum_of(u);
    double acc = 0.0;
    for (int a = 0; a < g.n; ++a) {
        if (g.is_nyquist(a)) continue;
        double ka = g.wavenumber(a);
        for (int b = 0; b < g.n; ++b) {
            if (g.is_nyquist(b)) continue;
            double kb = g.wavenumber(b);
            acc += (ka * ka + kb * kb) * std::norm(hat[std::size_t(a) * g.n + b]);
        }
    }
    return g.volume() * acc;
}

}  // namespace

EnergyRecord energy_psi(const GridFunction& u, const CoefficientSpec& spec, double t) {
    EnergyRecord r;
    r.time = t;
    r.kinetic = 0.5 * kinetic_sum(u);
    double pot = 0.0;
    for (const cplx& z : u.values()) pot += antiderivative_F(std::norm(z), spec);
    r.potential = 0.5 * u.grid().cell_area() * pot;
    r.total = r.kinetic + r.potential;
    r.mass_value = mass(u);
    return r;
}

namespace {

// Ψ′(u)(v) = Re∫∇u·conj(∇v) + ∫ f̃(|u|²) Re(u conj(v))
double psi_prime_pairing(const GridFunction& u, const GridFunction& v,
                         const CoefficientSpec& spec) {
    const TorusGrid& g = u.grid();
    std::vector<cplx> uh = spectrum_of(u);
    std::vector<cplx> vh = spectrum_of(v);
    double grad_term = 0.0;
    for (int a = 0; a < g.n; ++a) {
        if (g.is_nyquist(a)) continue;
        double ka = g.wavenumber(a);
        for (int b = 0; b < g.n; ++b) {
            if (g.is_nyquist(b)) continue;
            double kb = g.wavenumber(b);
            std::size_t i = std::size_t(a) * g.n + b;
            grad_term += (ka * ka + kb * kb) *
                         (uh[i].real() * vh[i].real() + uh[i].imag() * vh[i].imag());
        }
    }
    grad_term *= g.volume();
    double f_term = 0.0;
    const auto& uv = u.values();
    const auto& vv = v.values();
    for (std::size_t i = 0; i < uv.size(); ++i) {
        f_term += f_tilde(std::norm(uv[i]), spec) *
                  (uv[i].real() * vv[i].real() + uv[i].imag() * vv[i].imag());
    }
    f_term *= g.cell_area();
    return grad_term + f_term;
}

}  // namespace

double pairing_drift(const GridFunction& u, const CoefficientSpec& spec) {
    const cplx I(0.0, 1.0);
    GridFunction lap = laplacian(u);
    std::vector<cplx> vv(u.size());
    for (std::size_t i = 0; i < vv.size(); ++i)
        vv[i] = I * (lap.values()[i] - f_eval(u.values()[i], spec));
    GridFunction v(u.grid_ptr(), std::move(vv));
    return psi_prime_pairing(u, v, spec);
}

std::vector<double> pairing_noise(const GridFunction& u, const NoiseBasis& basis,
                                  const CoefficientSpec& spec) {
    const cplx I(0.0, 1.0);
    std::vector<double> out;
    out.reserve(basis.fields.size());
    for (const GridFunction& mode : basis.fields) {
        std::vector<cplx> vv(u.size());
        for (std::size_t i = 0; i < vv.size(); ++i)
            vv[i] = I * g_eval(u.values()[i], spec) * mode.values()[i].real();
        GridFunction v(u.grid_ptr(), std::move(vv));
        out.push_back(psi_prime_pairing(u, v, spec));
    }
    return out;
}

double psi_directional_fd(const GridFunction& u, const GridFunction& v,
                          const CoefficientSpec& spec, double h) {
    std::vector<cplx> up(u.size()), um(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        up[i] = u.values()[i] + h * v.values()[i];
        um[i] = u.values()[i] - h * v.values()[i];
    }
    EnergyRecord ep = energy_psi(GridFunction(u.grid_ptr(), std::move(up)), spec);
    EnergyRecord em = energy_psi(GridFunction(u.grid_ptr(), std::move(um)), spec);
    return (ep.total - em.total) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// Strichartz estimators

namespace {

std::pair<double, double> bootstrap_band_max(const std::vector<double>& samples, int B,
                                             std::uint64_t seed) {
    std::vector<double> maxima(B);
    int n = int(samples.size());
    for (int b = 0; b < B; ++b) {
        double m = 0.0;
        for (int i = 0; i < n; ++i) {
            int idx = int(rng::uniform(seed, rng::kStreamBootstrap, std::uint32_t(b),
                                       std::uint32_t(i), 0) *
                          n);
            if (idx >= n) idx = n - 1;
            m = std::max(m, samples[idx]);
        }
        maxima[b] = m;
    }
    std::sort(maxima.begin(), maxima.end());
    return {maxima[std::size_t(0.025 * B)], maxima[std::size_t(0.975 * B) - 1]};
}

}  // namespace

std::vector<QuotientReport> strichartz_hom(const std::shared_ptr<const TorusGrid>& grid,
                                           int draws, const std::vector<double>& Ts, double dt,
                                           double p, double q, double s, const EnormSpec& enorm,
                                           std::uint64_t seed) {
    require(!Ts.empty() && draws >= 2, "strichartz_hom: need horizons and at least two draws");
    double Tmax = *std::max_element(Ts.begin(), Ts.end());
    int Mmax = int(Tmax / dt + 0.5);

    // per-draw E-norm trajectory of the free evolution, shared across horizons
    std::vector<std::vector<double>> enorm_p(draws);
    std::vector<double> h_norm(draws);
    for (int d = 0; d < draws; ++d) {
        GridFunction v0 = random_band_limited(grid, grid->n / 4, seed, std::uint32_t(d));
        h_norm[d] = sobolev_norm(v0, s);
        enorm_p[d].resize(Mmax);
        for (int m = 0; m < Mmax; ++m) {
            GridFunction ut = free_propagator(v0, dt * m);
            enorm_p[d][m] = std::pow(enorm.eval(ut), p);
        }
    }

    std::vector<QuotientReport> reports;
    for (double T : Ts) {
        int M = int(T / dt + 0.5);
        QuotientReport rep;
        rep.T = T;
        rep.p = p;
        rep.q = q;
        rep.s = s;
        rep.ensemble = draws;
        rep.enorm = enorm.name();
        for (int d = 0; d < draws; ++d) {
            double integral = 0.0;
            for (int m = 0; m < M; ++m) integral += dt * enorm_p[d][m];
            double quot = std::pow(integral, 1.0 / p) / h_norm[d];
            rep.samples.push_back(quot);
            rep.max_quotient = std::max(rep.max_quotient, quot);
            rep.mean_quotient += quot / draws;
        }
        auto [lo, hi] = bootstrap_band_max(rep.samples, 200, seed ^ 0x626f6f74u);
        rep.bootstrap_lo = lo;
        rep.bootstrap_hi = hi;
        reports.push_back(std::move(rep));
    }
    return reports;
}

InhomReport strichartz_inhom(const std::shared_ptr<const TorusGrid>& grid, int draws, double T,
                             double dt, double p, double q, double s, const EnormSpec& enorm,
                             std::uint64_t seed) {
    int M = int(T / dt + 0.5);
    InhomReport rep;
    rep.T = T;
    rep.ensemble = draws;
    for (int d = 0; d < draws; ++d) {
        // random forcing trajectory; U∗f advances by the exact recursion
        // U∗f(t_{m+1}) = U_dt[U∗f(t_m) + dt f(t_m)]
        GridFunction conv = constant_field(grid, 0.0);
        double l1h = 0.0;
        double sup_h = 0.0;  // includes t=0 where U∗f = 0
        double lp_e = 0.0;
        for (int m = 0; m < M; ++m) {
            // left-point quadrature, matching the Itô convention elsewhere
            lp_e += dt * std::pow(enorm.eval(conv), p);
            GridFunction f = random_band_limited(grid, grid->n / 4, seed,
                                                 std::uint32_t(d * M + m) + 1000000u);
            l1h += dt * sobolev_norm(f, s);
            std::vector<cplx> acc = conv.values();
            kernels::ops().axpy(acc.data(), cplx(dt), f.values().data(), acc.size());
            conv = free_propagator(GridFunction(grid, std::move(acc)), dt);
            sup_h = std::max(sup_h, sobolev_norm(conv, s));
        }
        rep.lp_quotient_max = std::max(rep.lp_quotient_max, std::pow(lp_e, 1.0 / p) / l1h);
        rep.cnorm_quotient_max = std::max(rep.cnorm_quotient_max, sup_h / l1h);
    }
    (void)q;
    return rep;
}

namespace {

struct BatchStats {
    double mean = 0.0, se = 0.0;
};

BatchStats batch_means(const std::vector<double>& x, int batches) {
    int n = int(x.size());
    int per = n / batches;
    std::vector<double> bm(batches, 0.0);
    for (int b = 0; b < batches; ++b) {
        for (int i = 0; i < per; ++i) bm[b] += x[std::size_t(b) * per + i];
        bm[b] /= per;
    }
    BatchStats st;
    for (double v : bm) st.mean += v / batches;
    double var = 0.0;
    for (double v : bm) var += (v - st.mean) * (v - st.mean);
    var /= double(batches - 1);
    st.se = std::sqrt(var / batches);
    return st;
}

}  // namespace

StochStrichartzReport strichartz_stoch(const NoiseBasis& basis, const GridFunction& v0,
                                       const CoefficientSpec& spec, int paths, double T,
                                       double dt, double p, double s, const EnormSpec& enorm,
                                       std::uint64_t seed) {
    require(p > 2.0, "strichartz_stoch: p must lie in (2, inf)");
    require(paths >= 32, "strichartz_stoch: need an ensemble of at least 32 paths");
    int M = int(T / dt + 0.5);
    const auto& grid = basis.grid;

    // deterministic integrand multipliers φ(t_m) = g(U_{t_m} v0)
    std::vector<GridFunction> phi;
    phi.reserve(M);
    double rhs_integral = 0.0;
    bool all_zero = true;
    for (int m = 0; m < M; ++m) {
        GridFunction ut = free_propagator(v0, dt * m);
        std::vector<cplx> gv(ut.size());
        for (std::size_t i = 0; i < gv.size(); ++i) gv[i] = g_eval(ut.values()[i], spec);
        phi.emplace_back(grid, std::move(gv));
        double r2 = rkhs_norm_sq(phi.back(), basis, 0.0);
        if (r2 > 0.0) all_zero = false;
        rhs_integral += dt * r2;
    }

    StochStrichartzReport rep;
    rep.paths = paths;
    rep.J = basis.J();
    if (all_zero) {
        rep.degenerate = true;
        return rep;
    }
    rep.rhs = std::pow(rhs_integral, 0.5 * p);

    std::vector<double> lhs_samples(paths), max_samples(paths);
    for (int pa = 0; pa < paths; ++pa) {
        BrownianPath path = sample_path(basis.J(), dt, M, seed, std::uint32_t(pa));
        GridFunction Jt = constant_field(grid, 0.0);
        double lp = 0.0, suph = 0.0;
        for (int m = 0; m < M; ++m) {
            // left-point quadrature of ∫|J(t)|^p dt; J(t_0) = 0
            lp += dt * std::pow(enorm.eval(Jt), p);
            GridFunction dW = noise_field(path, m, basis);
            std::vector<cplx> kick(dW.size());
            for (std::size_t i = 0; i < kick.size(); ++i)
                kick[i] = phi[m].values()[i] * dW.values()[i];
            std::vector<cplx> acc = Jt.values();
            kernels::ops().axpy(acc.data(), cplx(1.0), kick.data(), acc.size());
            Jt = free_propagator(GridFunction(grid, std::move(acc)), dt);
            suph = std::max(suph, sobolev_norm(Jt, s));
        }
        lhs_samples[pa] = lp;
        max_samples[pa] = std::pow(suph, p);
    }

    BatchStats lhs = batch_means(lhs_samples, 8);
    BatchStats mx = batch_means(max_samples, 8);
    rep.lhs = lhs.mean;
    rep.lhs_se = lhs.se;
    rep.maximal_lhs = mx.mean;
    rep.maximal_se = mx.se;
    rep.ratio = rep.lhs / rep.rhs;
    rep.ratio_se = rep.lhs_se / rep.rhs;
    rep.maximal_ratio = rep.maximal_lhs / rep.rhs;
    return rep;
}

MomentCheck burkholder_check(const NoiseBasis& basis, const GridFunction& multiplier, int paths,
                             double T, double dt, double p, std::uint64_t seed) {
    int M = int(T / dt + 0.5);
    double r2 = rkhs_norm_sq(multiplier, basis, 0.0);
    MomentCheck mc;
    mc.what = "burkholder sup-moment ratio, E = L2";
    mc.reference = std::pow(T * r2, 0.5 * p);
    if (r2 == 0.0) {
        mc.what += " (degenerate: zero integrand)";
        return mc;
    }
    std::vector<double> sups(paths);
    const auto& grid = basis.grid;
    for (int pa = 0; pa < paths; ++pa) {
        BrownianPath path = sample_path(basis.J(), dt, M, seed, std::uint32_t(pa));
        GridFunction I = constant_field(grid, 0.0);
        double sup = 0.0;
        for (int m = 0; m < M; ++m) {
            GridFunction dW = noise_field(path, m, basis);
            std::vector<cplx> acc = I.values();
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] += multiplier.values()[i] * dW.values()[i];
            I = GridFunction(grid, std::move(acc));
            sup = std::max(sup, lq_norm(I, 2.0));
        }
        sups[pa] = std::pow(sup, p);
    }
    BatchStats st = batch_means(sups, 8);
    mc.value = st.mean / mc.reference;
    mc.se = st.se / mc.reference;
    return mc;
}

MomentCheck kahane_khinchin_check(const NoiseBasis& basis, double p, int draws,
                                  std::uint64_t seed) {
    require(draws >= 100, "kahane_khinchin_check: need at least 100 draws");
    const auto& grid = basis.grid;
    std::vector<double> norms(draws);
    for (int d = 0; d < draws; ++d) {
        std::vector<cplx> acc(std::size_t(grid->n) * grid->n, cplx(0.0));
        for (int j = 0; j < basis.J(); ++j) {
            double beta = rng::gaussian(seed, rng::kStreamGaussianSeries, std::uint32_t(d),
                                        std::uint32_t(j), 0);
            const auto& mv = basis.fields[j].values();
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += beta * mv[i].real();
        }
        GridFunction S(grid, std::move(acc));
        // norm of the R-space the basis is declared to live in
        norms[d] = sobolev_norm(S, 1.0) + bessel_lq_norm(S, basis.shat, basis.q);
    }
    double mp = 0.0, m2 = 0.0;
    for (double v : norms) {
        mp += std::pow(v, p);
        m2 += v * v;
    }
    mp /= draws;
    m2 /= draws;
    MomentCheck mc;
    mc.what = "kahane-khinchin Lp/L2 gaussian series ratio";
    mc.value = std::pow(mp, 1.0 / p) / std::sqrt(m2);
    mc.reference = 1.0;  // exact at p = 2
    BatchStats st = batch_means(norms, 8);
    mc.se = st.se / std::max(1e-300, std::sqrt(m2));
    return mc;
}

GronwallReport gronwall_envelope(const std::vector<PathDiagnostics>& ensemble,
                                 const CoefficientSpec& spec) {
    require(!ensemble.empty() && !ensemble[0].t.empty(), "gronwall_envelope: empty ensemble");
    std::size_t M = ensemble[0].t.size();
    for (const auto& p : ensemble)
        require(p.t.size() == M, "gronwall_envelope: paths must share one mesh");

    GronwallReport rep;
    // smallest c validating |u|²_{H¹} ≤ 2Ψ + c|u|² on every recorded state
    double c = 0.0;
    for (const auto& path : ensemble)
        for (std::size_t i = 0; i < M; ++i) {
            if (path.mass_v[i] <= 0.0) continue;  // zero state needs no offset
            double need = (path.h1[i] * path.h1[i] - 2.0 * path.psi[i]) / path.mass_v[i];
            c = std::max(c, need);
        }
    rep.c_coercivity = c;

    double min_pos = 1e300;
    for (const auto& path : ensemble)
        for (std::size_t i = 0; i < M; ++i)
            min_pos = std::min(min_pos, path.psi[i] + c * path.mass_v[i]);
    rep.min_psi_plus_cmass = min_pos;

    rep.times = ensemble[0].t;
    rep.mean_curve.assign(M, 0.0);
    double mean_mass0 = 0.0;
    for (const auto& path : ensemble) {
        for (std::size_t i = 0; i < M; ++i)
            rep.mean_curve[i] += (path.psi[i] + c * path.mass_v[i]) / double(ensemble.size());
        mean_mass0 += path.mass_v[0] / double(ensemble.size());
    }

    double sigma_exp = spec.f_case == FCase::focusing_power
                           ? std::max(2.0, 2.0 / (1.0 - spec.f_sigma))
                           : 2.0;
    double phi0 = std::pow(std::sqrt(mean_mass0), sigma_exp);
    double base = rep.mean_curve[0];

    auto fits = [&](double C) {
        for (std::size_t i = 0; i < M; ++i) {
            double t = rep.times[i];
            double env = (base + C * t * phi0) * std::exp(C * t);
            if (rep.mean_curve[i] > env * (1.0 + 1e-12)) return false;
        }
        return true;
    };

    double hi = 1e6;
    if (!fits(hi)) {
        rep.fit_failed = true;
        rep.C_fitted = hi;
        return rep;
    }
    double lo = 0.0;
    if (fits(0.0)) {
        rep.C_fitted = 0.0;
    } else {
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (fits(mid)) hi = mid;
            else lo = mid;
        }
        rep.C_fitted = hi;
    }
    rep.envelope.resize(M);
    for (std::size_t i = 0; i < M; ++i)
        rep.envelope[i] =
            (base + rep.C_fitted * rep.times[i] * phi0) * std::exp(rep.C_fitted * rep.times[i]);
    int viol = 0;
    for (std::size_t i = 0; i < M; ++i)
        if (rep.mean_curve[i] > rep.envelope[i] * (1.0 + 1e-9)) ++viol;
    rep.violations = viol;
    return rep;
}

}  // namespace snls
