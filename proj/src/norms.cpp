// norms.cpp
#include "snls/norms.hpp"

#include <algorithm>
#include <cmath>

#include "snls/kernels.hpp"

namespace snls {

double linf_norm(const GridFunction& u) {
    return std::sqrt(kernels::ops().max_sq_mod(u.values().data(), u.size()));
}

double lq_norm(const GridFunction& u, double q) {
    require(q >= 1.0, "lq_norm: exponent must satisfy q >= 1");
    if (q == kQInf) return linf_norm(u);
    const auto& v = u.values();
    double s;
    double hq = q * 0.5;
    if (hq == std::floor(hq) && hq >= 1 && hq <= 8) {
        s = kernels::ops().sum_pow_mod_even(v.data(), v.size(), int(hq));
    } else {
        s = 0.0;
        for (const cplx& z : v) s += std::pow(std::norm(z), hq);
    }
    return std::pow(u.grid().cell_area() * s, 1.0 / q);
}

double sobolev_norm(const GridFunction& u, double s) {
    require(s >= 0.0 && s <= 2.0, "sobolev_norm: order must lie in [0, 2]");
    const TorusGrid& g = u.grid();
    std::vector<cplx> hat = spectrum_of(u);
    double acc = 0.0;
    for (int a = 0; a < g.n; ++a) {
        double ka = g.wavenumber(a);
        for (int b = 0; b < g.n; ++b) {
            double kb = g.wavenumber(b);
            double w = std::pow(1.0 + ka * ka + kb * kb, s);
            acc += w * std::norm(hat[std::size_t(a) * g.n + b]);
        }
    }
    return std::sqrt(g.volume() * acc);
}

double slobodetskii_seminorm(const GridFunction& u, double theta, double q) {
    require(theta > 0.0 && theta < 1.0, "slobodetskii_seminorm: theta must lie in (0,1)");
    require(q >= 1.0 && q != kQInf, "slobodetskii_seminorm: q must lie in [1, inf)");
    const TorusGrid& g = u.grid();
    require(g.n <= 64,
            "slobodetskii_seminorm: the O(n^4) double sum is limited to n <= 64; "
            "subsample the field or use the Bessel L^q proxy norm");
    const int n = g.n;
    const double expo = 2.0 + theta * q;
    const double w2 = g.cell_area() * g.cell_area();
    const double hq = q * 0.5;
    const bool even = hq == std::floor(hq) && hq >= 1 && hq <= 8;
    const auto& ops = kernels::ops();
    const cplx* data = u.values().data();

    double acc = 0.0;
    for (int sa = 0; sa < n; ++sa) {
        for (int sb = 0; sb < n; ++sb) {
            if (sa == 0 && sb == 0) continue;  // singular diagonal excluded
            double d = geodesic_distance(g, 0.0, 0.0, g.coord(sa), g.coord(sb));
            double weight = std::pow(d, -expo);
            double inner;
            if (even) {
                inner = ops.shift_diff_pow_even(data, n, sa, sb, int(hq));
            } else {
                inner = 0.0;
                for (int a = 0; a < n; ++a) {
                    const cplx* r1 = data + std::size_t(a) * n;
                    const cplx* r2 = data + std::size_t((a + sa) % n) * n;
                    for (int b = 0; b < n; ++b)
                        inner += std::pow(std::norm(r2[(b + sb) % n] - r1[b]), hq);
                }
            }
            acc += weight * inner;
        }
    }
    return std::pow(w2 * acc, 1.0 / q);
}

double gradient_lq_seminorm(const GridFunction& u, double q) {
    auto [d1, d2] = gradient(u);
    const auto& a = d1.values();
    const auto& b = d2.values();
    double acc = 0.0;
    double hq = q * 0.5;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::pow(std::norm(a[i]) + std::norm(b[i]), hq);
    return std::pow(u.grid().cell_area() * acc, 1.0 / q);
}

double w_norm(const GridFunction& u, double theta, double q) {
    require(theta > 0.0 && theta <= 1.0, "w_norm: theta must lie in (0,1]");
    double semi = theta == 1.0 ? gradient_lq_seminorm(u, q) : slobodetskii_seminorm(u, theta, q);
    return lq_norm(u, q) + semi;
}

double r_norm(const GridFunction& u, double theta, double q) {
    return w_norm(u, theta, q) + linf_norm(u);
}

double bessel_lq_norm(const GridFunction& u, double shat, double q) {
    return lq_norm(bessel_multiplier(u, shat), q);
}

void Trajectory::check() const {
    require(!times.empty() && times.size() == states.size(),
            "Trajectory: empty or inconsistent time mesh");
    for (std::size_t i = 1; i < times.size(); ++i)
        require(times[i] > times[i - 1], "Trajectory: mesh must be strictly increasing");
    for (std::size_t i = 1; i < states.size(); ++i)
        require(states[i].grid_ptr().get() == states[0].grid_ptr().get(),
                "Trajectory: all states must live on one grid");
}

double y_norm_prefix(const Trajectory& tr, int m, double p, double s, const EnormSpec& enorm) {
    require(p > 2.0, "y_norm: exponent p must lie in (2, inf)");
    tr.check();
    require(m >= 0 && std::size_t(m) < tr.states.size(), "y_norm: prefix index out of range");
    double sup_h = 0.0;
    for (int i = 0; i <= m; ++i) sup_h = std::max(sup_h, sobolev_norm(tr.states[i], s));
    double integral = 0.0;
    if (m >= 1) {
        double dt = tr.dt();
        for (int i = 0; i < m; ++i) integral += dt * std::pow(enorm.eval(tr.states[i]), p);
    }
    return std::pow(std::pow(sup_h, p) + integral, 1.0 / p);
}

double y_norm(const Trajectory& tr, double p, double s, const EnormSpec& enorm) {
    tr.check();
    return y_norm_prefix(tr, int(tr.states.size()) - 1, p, s, enorm);
}

NormReport norm_report(const GridFunction& u, const std::vector<double>& qs,
                       const std::vector<double>& sobolev_orders,
                       const std::vector<std::pair<double, double>>& theta_q) {
    NormReport rep;
    for (double q : qs) rep.lq[q] = lq_norm(u, q);
    for (double s : sobolev_orders) rep.sobolev[s] = sobolev_norm(u, s);
    rep.linf = linf_norm(u);
    for (auto [theta, q] : theta_q) {
        double semi =
            theta == 1.0 ? gradient_lq_seminorm(u, q) : slobodetskii_seminorm(u, theta, q);
        double full = lq_norm(u, q) + semi;
        rep.slobodetskii[{theta, q}] = {semi, full};
        if (rep.r_value == 0.0) rep.r_value = full + rep.linf;
    }
    return rep;
}

}  // namespace snls
