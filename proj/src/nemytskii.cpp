// nemytskii.cpp
#include "snls/nemytskii.hpp"

#include <cmath>

#include "snls/rng.hpp"

namespace snls {

GridFunction nemytskii_apply(const ScalarMap& fn, const GridFunction& gamma) {
    std::vector<cplx> out(gamma.size());
    const auto& v = gamma.values();
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = fn(v[i]);
    return GridFunction(gamma.grid_ptr(), std::move(out));
}

namespace {

cplx draw_disc(double R, std::uint64_t seed, std::uint32_t i, std::uint32_t sub) {
    double r = R * std::sqrt(rng::uniform(seed, rng::kStreamScalarSamples, 11, i, sub));
    double ph = kTwoPi * rng::uniform(seed, rng::kStreamScalarSamples, 11, i, sub + 1);
    return cplx(r * std::cos(ph), r * std::sin(ph));
}

// ℝ-Fréchet derivative of fn at z applied to direction h, central differences.
cplx fd_dir(const ScalarMap& fn, cplx z, cplx h, double step) {
    return (fn(z + step * h) - fn(z - step * h)) / (2.0 * step);
}

// Operator norm of the FD Jacobian difference f'(y) − f'(x), probed on a
// fixed direction set; a lower bound like everything sampled here.
double jac_diff_norm(const ScalarMap& fn, cplx y, cplx x, double step) {
    double best = 0.0;
    for (int d = 0; d < 8; ++d) {
        double ang = kTwoPi * double(d) / 8.0;
        cplx h(std::cos(ang), std::sin(ang));
        best = std::max(best, std::abs(fd_dir(fn, y, h, step) - fd_dir(fn, x, h, step)));
    }
    return best;
}

}  // namespace

double estimate_K(const ScalarMap& fn, double R, int j, int samples, std::uint64_t seed) {
    require(R > 0.0, "estimate_K: radius must be positive");
    require(samples >= 1000, "estimate_K: need at least 10^3 samples");
    require(j == 1 || j == 2, "estimate_K: j must be 1 or 2");
    const double fd_step = 1e-6;
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        cplx x = draw_disc(R, seed, std::uint32_t(i), 0);
        cplx y;
        if (i % 2 == 0) {
            y = draw_disc(R, seed, std::uint32_t(i), 2);  // far pair
        } else {
            // nearby pair; the sup quotient is often attained as |y−x| → 0
            cplx dir = draw_disc(1.0, seed, std::uint32_t(i), 2);
            double scale = 1e-3 * R;
            y = x + scale * (dir / std::max(1e-12, std::abs(dir)));
            if (std::abs(y) > R) y = x - scale * (dir / std::max(1e-12, std::abs(dir)));
        }
        double sep = std::abs(y - x);
        if (sep < 1e-12) continue;
        double quot;
        if (j == 1) {
            quot = std::abs(fn(y) - fn(x)) / sep;
        } else {
            quot = jac_diff_norm(fn, y, x, fd_step) / sep;
        }
        best = std::max(best, quot);
    }
    return best;
}

KSet cubic_analytic_K(double R) { return KSet{3.0 * R * R, 6.0 * R, "analytic"}; }

namespace {
double seminorm(const GridFunction& u, double theta, double q) {
    return theta == 1.0 ? gradient_lq_seminorm(u, q) : slobodetskii_seminorm(u, theta, q);
}
}  // namespace

AuditRecord audit_growth(const ScalarMap& fn, const GridFunction& gamma, double theta, double q,
                         std::optional<double> K1_override, std::uint64_t seed) {
    require(theta > 0.0 && theta <= 1.0, "audit_growth: theta must lie in (0,1]");
    AuditRecord rec;
    rec.inequality = "growth-bound";
    rec.seed = seed;
    double R = linf_norm(gamma);
    double K1;
    if (K1_override) {
        K1 = *K1_override;
        rec.k_source = "analytic";
    } else {
        K1 = estimate_K(fn, std::max(R, 1e-9), 1, 4000, seed);
        rec.k_source = "sampled";
    }
    rec.K1 = K1;
    GridFunction Fg = nemytskii_apply(fn, gamma);
    rec.lhs = w_norm(Fg, theta, q);
    rec.rhs = std::abs(fn(cplx(0.0))) * gamma.grid().volume() + K1 * w_norm(gamma, theta, q);
    rec.slack = rec.rhs - rec.lhs;
    return rec;
}

std::pair<AuditRecord, AuditRecord> audit_lipschitz(const ScalarMap& fn, const GridFunction& gamma,
                                                    const GridFunction& sigma, double theta,
                                                    double q, std::optional<KSet> K_override,
                                                    std::uint64_t seed) {
    require(theta > 0.0 && theta <= 1.0, "audit_lipschitz: theta must lie in (0,1]");
    double R = std::max(linf_norm(gamma), linf_norm(sigma));
    KSet K;
    if (K_override) {
        K = *K_override;
    } else {
        double Rs = std::max(R, 1e-9);
        K = KSet{estimate_K(fn, Rs, 1, 4000, seed), estimate_K(fn, Rs, 2, 4000, seed), "sampled"};
    }

    GridFunction Fg = nemytskii_apply(fn, gamma);
    GridFunction Fs = nemytskii_apply(fn, sigma);
    std::vector<cplx> dF(Fg.size()), dgs(gamma.size());
    for (std::size_t i = 0; i < dF.size(); ++i) {
        dF[i] = Fg.values()[i] - Fs.values()[i];
        dgs[i] = gamma.values()[i] - sigma.values()[i];
    }
    GridFunction diffF(gamma.grid_ptr(), std::move(dF));
    GridFunction diff(gamma.grid_ptr(), std::move(dgs));

    AuditRecord lq_rec;
    lq_rec.inequality = "lipschitz-lq";
    lq_rec.seed = seed;
    lq_rec.K1 = K.K1;
    lq_rec.K2 = K.K2;
    lq_rec.k_source = K.source;
    lq_rec.lhs = lq_norm(diffF, q);
    lq_rec.rhs = K.K1 * lq_norm(diff, q);
    lq_rec.slack = lq_rec.rhs - lq_rec.lhs;

    AuditRecord semi_rec = lq_rec;
    semi_rec.inequality = "lipschitz-seminorm";
    double semi_sigma = seminorm(sigma, theta, q);
    double semi_diff = seminorm(diff, theta, q);
    double linf_diff = linf_norm(diff);
    semi_rec.lhs = seminorm(diffF, theta, q);
    double cross = K.K2 * linf_diff * (semi_sigma + 0.5 * semi_diff);
    semi_rec.rhs = cross + K.K1 * semi_diff;
    semi_rec.slack = semi_rec.rhs - semi_rec.lhs;
    // how much of the ½⦀γ−σ⦀ term the lhs actually needs (1 ⇒ the ½ is tight)
    double half = 0.5 * K.K2 * linf_diff * semi_diff;
    if (half > 0.0)
        semi_rec.half_term_utilization =
            (semi_rec.lhs - K.K2 * linf_diff * semi_sigma - K.K1 * semi_diff) / half;
    return {lq_rec, semi_rec};
}

AuditRecord audit_algebra(const GridFunction& sigma, const GridFunction& gamma, double theta,
                          double q) {
    require(sigma.grid_ptr().get() == gamma.grid_ptr().get(),
            "audit_algebra: fields must share a grid");
    std::vector<cplx> prod(sigma.size());
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = sigma.values()[i] * gamma.values()[i];
    GridFunction sg(sigma.grid_ptr(), std::move(prod));

    AuditRecord rec;
    rec.inequality = "algebra";
    double semi_prod = seminorm(sg, theta, q);
    rec.lhs = w_norm(sg, theta, q);
    rec.rhs = linf_norm(sigma) * w_norm(gamma, theta, q) + linf_norm(gamma) * w_norm(sigma, theta, q);
    rec.slack = rec.rhs - rec.lhs;
    // the first inequality of the chain, ⦀σγ⦀ ≤ ‖σγ‖, is definitional; keep
    // the seminorm in the record for completeness
    rec.K1 = semi_prod;
    return rec;
}

}  // namespace snls
