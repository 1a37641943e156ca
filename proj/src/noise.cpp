// noise.cpp
#include "snls/noise.hpp"

#include <algorithm>
#include <tuple>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "snls/kernels.hpp"
#include "snls/rng.hpp"

namespace snls {

namespace {

std::vector<NoiseMode> enumerate_modes(int J, double rho) {
    std::vector<NoiseMode> out;
    out.push_back(NoiseMode{0, 0, false, 1.0});
    // half-plane representatives: k1 > 0, or k1 == 0 && k2 > 0
    struct K {
        int k1, k2, norm2;
    };
    std::vector<K> ks;
    int box = 1;
    while (int(ks.size()) < 2 * J) {
        ks.clear();
        for (int k1 = -box; k1 <= box; ++k1)
            for (int k2 = -box; k2 <= box; ++k2) {
                if (k1 > 0 || (k1 == 0 && k2 > 0)) ks.push_back({k1, k2, k1 * k1 + k2 * k2});
            }
        ++box;
    }
    // (1,0) precedes (0,1) so the first nonconstant mode is cos(x₁)
    auto key = [](const K& k) { return std::tuple(k.norm2, std::abs(k.k2), k.k2, k.k1); };
    std::sort(ks.begin(), ks.end(), [&](const K& a, const K& b) { return key(a) < key(b); });
    for (const K& k : ks) {
        double w = std::pow(1.0 + double(k.norm2), -0.5 * rho);
        out.push_back(NoiseMode{k.k1, k.k2, false, w});
        out.push_back(NoiseMode{k.k1, k.k2, true, w});
        if (int(out.size()) >= J) break;
    }
    out.resize(J);
    return out;
}

GridFunction mode_field(const std::shared_ptr<const TorusGrid>& grid, const NoiseMode& m) {
    int n = grid->n;
    std::vector<cplx> v(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double phase = kTwoPi * (double(m.k1 * a) + double(m.k2 * b)) / double(n);
            double val = m.is_sin ? std::sin(phase) : std::cos(phase);
            v[std::size_t(a) * n + b] = cplx(m.weight * val, 0.0);
        }
    return GridFunction(grid, std::move(v));
}

std::pair<GridFunction, GridFunction> compute_traces(
    const std::shared_ptr<const TorusGrid>& grid, const std::vector<GridFunction>& fields) {
    std::size_t sz = std::size_t(grid->n) * grid->n;
    std::vector<cplx> p(sz, cplx(0.0)), qf(sz, cplx(0.0));
    for (const GridFunction& f : fields) {
        const auto& v = f.values();
        for (std::size_t i = 0; i < sz; ++i) p[i] += v[i].real() * v[i].real();
        auto [d1, d2] = gradient(f);
        const auto& g1 = d1.values();
        const auto& g2 = d2.values();
        for (std::size_t i = 0; i < sz; ++i) qf[i] += std::norm(g1[i]) + std::norm(g2[i]);
    }
    return {GridFunction(grid, std::move(p)), GridFunction(grid, std::move(qf))};
}

}  // namespace

NoiseBasis build_basis(const std::shared_ptr<const TorusGrid>& grid, int J, double rho, double s0,
                       double shat, double q) {
    require(J >= 1, "build_basis: need at least one mode");
    require(s0 > 1.0, "build_basis: smoothness budget requires s0 > 1");
    std::vector<NoiseMode> modes = enumerate_modes(J, rho);
    std::vector<GridFunction> fields;
    fields.reserve(modes.size());
    for (const NoiseMode& m : modes) fields.push_back(mode_field(grid, m));

    auto [p, qf] = compute_traces(grid, fields);

    SummabilityReport rep;
    rep.rho = rho;
    // Σ over the truncation of ‖Λe_j‖²_{H^{1,2s₀} ∩ W^{ŝ,q}}, intersection norm
    // realized as the sum of the two norms (Bessel L^q surrogate for W^{ŝ,q}).
    for (const GridFunction& f : fields) {
        double h = bessel_lq_norm(f, 1.0, 2.0 * s0);
        double w = bessel_lq_norm(f, shat, q);
        double nsum = h + w;
        rep.series_value += nsum * nsum;
    }
    // Infinite-series criterion: the tail term behaves like (1+|k|²)^{1−ρ},
    // summable over ℤ² iff ρ > 2.
    rep.summable = rho > 2.0;

    NoiseBasis basis{grid, rho, s0, shat, q, std::move(modes), std::move(fields),
                     std::move(p), std::move(qf), rep};
    return basis;
}

std::pair<GridFunction, GridFunction> trace_fields(const NoiseBasis& basis) {
    return compute_traces(basis.grid, basis.fields);
}

BrownianPath sample_path(int modes, double dt, int steps, std::uint64_t seed,
                         std::uint32_t path_id) {
    require(dt > 0.0, "sample_path: dt must be positive");
    require(steps >= 1 && modes >= 1, "sample_path: need at least one step and one mode");
    BrownianPath p;
    p.dt = dt;
    p.steps = steps;
    p.modes = modes;
    p.seed = seed;
    p.path_id = path_id;
    p.increments.resize(std::size_t(steps) * modes);
    double sd = std::sqrt(dt);
    for (int s = 0; s < steps; ++s)
        for (int j = 0; j < modes; ++j)
            p.increments[std::size_t(s) * modes + j] =
                sd * rng::gaussian(seed, rng::kStreamBrownian, path_id, std::uint32_t(s),
                                   std::uint32_t(j));
    return p;
}

BrownianPath coarsen_path(const BrownianPath& p, int factor) {
    require(factor >= 1 && p.steps % factor == 0, "coarsen_path: factor must divide the step count");
    BrownianPath c;
    c.dt = p.dt * factor;
    c.steps = p.steps / factor;
    c.modes = p.modes;
    c.seed = p.seed;
    c.path_id = p.path_id;
    c.increments.assign(std::size_t(c.steps) * c.modes, 0.0);
    for (int s = 0; s < p.steps; ++s)
        for (int j = 0; j < p.modes; ++j)
            c.increments[std::size_t(s / factor) * c.modes + j] += p.inc(s, j);
    return c;
}

GridFunction noise_field(const BrownianPath& path, int step, const NoiseBasis& basis) {
    require(step >= 0 && step < path.steps, "noise_field: step index out of range");
    require(path.modes == basis.J(), "noise_field: path and basis mode counts differ");
    std::size_t sz = basis.fields.empty() ? 0 : basis.fields[0].size();
    std::vector<cplx> acc(sz, cplx(0.0));
    for (int j = 0; j < basis.J(); ++j) {
        double w = path.inc(step, j);
        const auto& v = basis.fields[j].values();
        for (std::size_t i = 0; i < sz; ++i) acc[i] += w * v[i].real();
    }
    return GridFunction(basis.grid, std::move(acc));
}

void write_path(const BrownianPath& p, const std::string& file) {
    std::FILE* f = std::fopen(file.c_str(), "wb");
    require(f != nullptr, "write_path: cannot open " + file);
    auto put = [&](const void* ptr, std::size_t n) {
        if (std::fwrite(ptr, 1, n, f) != n) {
            std::fclose(f);
            throw std::runtime_error("write_path: short write to " + file);
        }
    };
    std::uint64_t steps = std::uint64_t(p.steps), modes = std::uint64_t(p.modes);
    put(&p.seed, 8);
    put(&p.dt, 8);
    put(&steps, 8);
    put(&modes, 8);
    put(p.increments.data(), p.increments.size() * 8);
    std::fclose(f);
}

BrownianPath read_path(const std::string& file) {
    std::FILE* f = std::fopen(file.c_str(), "rb");
    require(f != nullptr, "read_path: cannot open " + file);
    auto get = [&](void* ptr, std::size_t n) {
        if (std::fread(ptr, 1, n, f) != n) {
            std::fclose(f);
            throw std::runtime_error("read_path: truncated file " + file);
        }
    };
    BrownianPath p;
    std::uint64_t steps = 0, modes = 0;
    get(&p.seed, 8);
    get(&p.dt, 8);
    get(&steps, 8);
    get(&modes, 8);
    p.steps = int(steps);
    p.modes = int(modes);
    p.increments.resize(std::size_t(p.steps) * p.modes);
    get(p.increments.data(), p.increments.size() * 8);
    std::fclose(f);
    return p;
}

double rkhs_norm_sq(const GridFunction& multiplier, const NoiseBasis& basis, double sobolev_s) {
    double acc = 0.0;
    for (const GridFunction& mode : basis.fields) {
        std::vector<cplx> prod(mode.size());
        const auto& mv = multiplier.values();
        const auto& ev = mode.values();
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = mv[i] * ev[i].real();
        GridFunction pf(basis.grid, std::move(prod));
        double nrm = sobolev_s == 0.0 ? lq_norm(pf, 2.0) : sobolev_norm(pf, sobolev_s);
        acc += nrm * nrm;
    }
    return acc;
}

GridFunction stochastic_convolution(const std::vector<GridFunction>& integrand,
                                    const BrownianPath& path, const NoiseBasis& basis,
                                    int t_index) {
    require(t_index >= 0 && t_index <= path.steps,
            "stochastic_convolution: time index out of range");
    if (!integrand.empty())
        require(int(integrand.size()) >= t_index,
                "stochastic_convolution: integrand mesh shorter than requested index");
    std::size_t sz = std::size_t(basis.grid->n) * basis.grid->n;
    std::vector<cplx> acc(sz, cplx(0.0));
    GridFunction result(basis.grid, std::move(acc));
    for (int r = 0; r < t_index; ++r) {
        GridFunction kick = noise_field(path, r, basis);
        if (!integrand.empty()) {
            std::vector<cplx> prod(sz);
            const auto& phi = integrand[r].values();
            const auto& kv = kick.values();
            for (std::size_t i = 0; i < sz; ++i) prod[i] = phi[i] * kv[i];
            kick = GridFunction(basis.grid, std::move(prod));
        }
        GridFunction propagated = free_propagator(kick, path.dt * double(t_index - r));
        std::vector<cplx> sum = result.values();
        kernels::ops().axpy(sum.data(), cplx(1.0), propagated.values().data(), sz);
        result = GridFunction(basis.grid, std::move(sum));
    }
    return result;
}

GridFunction random_band_limited(const std::shared_ptr<const TorusGrid>& grid, int kmax,
                                 std::uint64_t seed, std::uint32_t draw, double coeff_std) {
    require(kmax >= 0 && kmax <= grid->n / 2 - 1, "random_band_limited: kmax exceeds the grid band");
    int n = grid->n;
    std::vector<cplx> hat(std::size_t(n) * n, cplx(0.0));
    std::uint32_t idx = 0;
    for (int a = 0; a < n; ++a) {
        int ka = grid->mode_index(a);
        for (int b = 0; b < n; ++b) {
            int kb = grid->mode_index(b);
            if (std::abs(ka) > kmax || std::abs(kb) > kmax) {
                ++idx;
                continue;
            }
            double re = rng::gaussian(seed, rng::kStreamField, draw, idx, 0);
            double im = rng::gaussian(seed, rng::kStreamField, draw, idx, 1);
            int band = 2 * kmax + 1;
            hat[std::size_t(a) * n + b] =
                coeff_std / double(band) * cplx(re, im);  // keeps |γ|_∞ ≈ O(coeff_std)
            ++idx;
        }
    }
    return GridFunction::from_spectrum(grid, std::move(hat));
}

}  // namespace snls
