// torus.cpp
#include "snls/torus.hpp"

#include <cmath>

#include "snls/kernels.hpp"

namespace snls {

std::shared_ptr<const TorusGrid> make_grid(int n, double side) {
    require(n >= 4 && (n & (n - 1)) == 0, "TorusGrid: n must be a power of two, n >= 4");
    require(side > 0.0, "TorusGrid: period must be positive");
    auto g = std::make_shared<TorusGrid>();
    g->n = n;
    g->side = side;
    g->fft = std::make_shared<const Fft2D>(n);
    return g;
}

GridFunction GridFunction::from_spectrum(std::shared_ptr<const TorusGrid> grid,
                                         std::vector<cplx> hat) {
    std::vector<cplx> vals = hat;
    grid->fft->inverse(vals);
    GridFunction u(std::move(grid), std::move(vals));
    u.spectrum_ = std::move(hat);
    return u;
}

bool GridFunction::finite() const {
    for (const cplx& z : values_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

std::vector<cplx> spectrum_of(const GridFunction& u) {
    if (const auto* s = u.cached_spectrum()) return *s;
    std::vector<cplx> hat = u.values();
    u.grid().fft->forward(hat);
    return hat;
}

GridFunction constant_field(const std::shared_ptr<const TorusGrid>& grid, cplx c) {
    return GridFunction(grid, std::vector<cplx>(std::size_t(grid->n) * grid->n, c));
}

GridFunction fourier_mode(const std::shared_ptr<const TorusGrid>& grid, int k1, int k2) {
    int n = grid->n;
    std::vector<cplx> v(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double phase = kTwoPi * (double(k1 * a) + double(k2 * b)) / double(n);
            v[std::size_t(a) * n + b] = cplx(std::cos(phase), std::sin(phase));
        }
    return GridFunction(grid, std::move(v));
}

namespace {
void require_finite(const GridFunction& u, const char* op) {
    if (!u.finite())
        throw std::invalid_argument(std::string(op) + ": input field has non-finite samples");
}

// applies a mode-wise complex multiplier m(k1_index, k2_index)
template <typename M>
GridFunction apply_multiplier(const GridFunction& u, M&& mult) {
    const TorusGrid& g = u.grid();
    std::vector<cplx> hat = spectrum_of(u);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) hat[std::size_t(a) * g.n + b] *= mult(a, b);
    return GridFunction::from_spectrum(u.grid_ptr(), std::move(hat));
}
}  // namespace

GridFunction free_propagator(const GridFunction& u, double t) {
    require_finite(u, "free_propagator");
    const TorusGrid& g = u.grid();
    return apply_multiplier(u, [&](int a, int b) {
        double ka = g.wavenumber(a), kb = g.wavenumber(b);
        double phase = -(ka * ka + kb * kb) * t;
        return cplx(std::cos(phase), std::sin(phase));
    });
}

GridFunction laplacian(const GridFunction& u) {
    require_finite(u, "laplacian");
    const TorusGrid& g = u.grid();
    return apply_multiplier(u, [&](int a, int b) {
        double ka = g.wavenumber(a), kb = g.wavenumber(b);
        return cplx(-(ka * ka + kb * kb), 0.0);
    });
}

GridFunction bessel_multiplier(const GridFunction& u, double s) {
    require_finite(u, "bessel_multiplier");
    require(s >= -2.0 && s <= 2.0, "bessel_multiplier: order must lie in [-2, 2]");
    const TorusGrid& g = u.grid();
    return apply_multiplier(u, [&](int a, int b) {
        double ka = g.wavenumber(a), kb = g.wavenumber(b);
        return cplx(std::pow(1.0 + ka * ka + kb * kb, 0.5 * s), 0.0);
    });
}

std::pair<GridFunction, GridFunction> gradient(const GridFunction& u) {
    require_finite(u, "gradient");
    const TorusGrid& g = u.grid();
    const cplx I(0.0, 1.0);
    auto d1 = apply_multiplier(u, [&](int a, int) {
        return g.is_nyquist(a) ? cplx(0.0) : I * g.wavenumber(a);
    });
    auto d2 = apply_multiplier(u, [&](int, int b) {
        return g.is_nyquist(b) ? cplx(0.0) : I * g.wavenumber(b);
    });
    return {std::move(d1), std::move(d2)};
}

double geodesic_distance(const TorusGrid& g, double x1a, double x1b, double x2a, double x2b) {
    double L = g.side;
    auto axis = [L](double d) {
        d = std::fmod(std::abs(d), L);
        return std::min(d, L - d);
    };
    double da = axis(x2a - x1a);
    double db = axis(x2b - x1b);
    return std::sqrt(da * da + db * db);
}

}  // namespace snls
