// torus.hpp — the flat 2-torus: periodic grid, spectral Laplacian, free
// Schrödinger group, fractional smoothing multipliers and geodesic distance.
#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "snls/common.hpp"
#include "snls/fft.hpp"

namespace snls {

struct TorusGrid {
    int n;        // points per axis, power of two, ≥ 4
    double side;  // physical period L, default 2π
    std::shared_ptr<const Fft2D> fft;

    double cell_area() const { return (side / n) * (side / n); }
    double volume() const { return side * side; }
    double coord(int idx) const { return side * double(idx) / double(n); }

    // signed integer mode index in {−n/2+1, …, n/2}
    int mode_index(int j) const { return j <= n / 2 ? j : j - n; }
    // physical wave number 2π k / L
    double wavenumber(int j) const { return kTwoPi * double(mode_index(j)) / side; }
    bool is_nyquist(int j) const { return mode_index(j) == n / 2; }
};

std::shared_ptr<const TorusGrid> make_grid(int n, double side = kTwoPi);

// Complex field on a TorusGrid.  Point values are always present; the Fourier
// coefficients are carried along when an operation produced them.  All
// instances are immutable after construction and safe to share across threads.
class GridFunction {
  public:
    GridFunction(std::shared_ptr<const TorusGrid> grid, std::vector<cplx> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        require(values_.size() == std::size_t(grid_->n) * grid_->n,
                "GridFunction: value count does not match the grid");
    }

    static GridFunction from_spectrum(std::shared_ptr<const TorusGrid> grid,
                                      std::vector<cplx> hat);

    const TorusGrid& grid() const { return *grid_; }
    const std::shared_ptr<const TorusGrid>& grid_ptr() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    const std::vector<cplx>* cached_spectrum() const {
        return spectrum_ ? &*spectrum_ : nullptr;
    }
    std::size_t size() const { return values_.size(); }

    bool finite() const;

  private:
    std::shared_ptr<const TorusGrid> grid_;
    std::vector<cplx> values_;
    std::optional<std::vector<cplx>> spectrum_;
};

// Fourier coefficients of u (cache-aware copy).
std::vector<cplx> spectrum_of(const GridFunction& u);

GridFunction constant_field(const std::shared_ptr<const TorusGrid>& grid, cplx c);
// e^{i k·x} for an integer mode k
GridFunction fourier_mode(const std::shared_ptr<const TorusGrid>& grid, int k1, int k2);

// U_t u, mode-wise multiplication by exp(−i|k|² t); unitary in discrete L².
GridFunction free_propagator(const GridFunction& u, double t);
// Δu, multiplication by −|k|²
GridFunction laplacian(const GridFunction& u);
// (1+|k|²)^{s/2} u, the fractional smoothing multiplier; s ∈ [−2, 2]
GridFunction bessel_multiplier(const GridFunction& u, double s);
// spectral ∂₁u, ∂₂u; Nyquist-mode derivative zeroed
std::pair<GridFunction, GridFunction> gradient(const GridFunction& u);
// geodesic (minimum-image) distance between two points of the torus
double geodesic_distance(const TorusGrid& g, double x1a, double x1b, double x2a, double x2b);

}  // namespace snls
