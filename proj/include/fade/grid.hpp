#pragma once

#include <memory>
#include <vector>

#include "fade/errors.hpp"

namespace fade {

/// Graded radial grid: uniform spacing up to r_uniform, geometric afterwards.
/// Node 0 is always r = 0.
class RadialGrid {
  public:
    /// Builds a graded grid with n nodes up to r_max; uniform_fraction of the
    /// nodes cover [0, r_uniform], the rest grow geometrically.
    static std::shared_ptr<const RadialGrid> graded(int d, double r_max, int n,
                                                    double r_uniform = 1.0,
                                                    double uniform_fraction = 0.3,
                                                    double tail_exponent_hint = -4.0);

    /// Purely log-spaced nodes on [r_min, r_max] preceded by the r = 0 node;
    /// the layout used by the spectral eigenproblems.
    static std::shared_ptr<const RadialGrid> logarithmic(int d, double r_min, double r_max, int n,
                                                         double tail_exponent_hint = -4.0);

    static std::shared_ptr<const RadialGrid> from_nodes(int d, std::vector<double> nodes,
                                                        double tail_exponent_hint = -4.0);

    int dimension() const { return d_; }
    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    double node(int i) const { return nodes_[static_cast<size_t>(i)]; }
    double r_max() const { return nodes_.back(); }
    double tail_exponent_hint() const { return tail_hint_; }

    /// Trapezoid weights for integrals in the radial coordinate (no r^{d-1}).
    const std::vector<double>& dr_weights() const { return drw_; }

    /// Surface area of the unit sphere in R^d, 2 pi^{d/2} / Gamma(d/2).
    double omega_d() const;

  private:
    RadialGrid(int d, std::vector<double> nodes, double tail_hint);
    int d_;
    std::vector<double> nodes_;
    std::vector<double> drw_;
    double tail_hint_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Value + estimated numerical error of a quadrature.
struct Measured {
    double value = 0.0;
    double error = 0.0;
};

/// Radially symmetric function sampled on a RadialGrid.
class RadialField {
  public:
    RadialField() = default;
    RadialField(GridPtr grid, std::vector<double> values);
    explicit RadialField(GridPtr grid, double fill = 0.0);

    template <class F>
    static RadialField sample(GridPtr grid, F&& f) {
        std::vector<double> v(static_cast<size_t>(grid->size()));
        for (int i = 0; i < grid->size(); ++i) v[static_cast<size_t>(i)] = f(grid->node(i));
        return RadialField(std::move(grid), std::move(v));
    }

    const RadialGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    double& operator[](int i) { return values_[static_cast<size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double min() const;
    double max() const;

    /// Evaluates the field at radius r by monotone cubic interpolation
    /// (Fritsch-Carlson limited slopes); past the last node a power law
    /// fitted on the final decade is used, before the first an even extension.
    double interpolate(double r) const;

    /// Resamples onto another grid via interpolate().
    RadialField resample(GridPtr target) const;

  private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// omega_d * [ trapezoid of f(r) r^{weight_exponent + d - 1} on the grid
///           + analytic power-law tail fitted on the last quarter of nodes ].
/// Throws divergent_tail_error when the fitted tail is not integrable.
Measured integrate(const RadialField& f, double weight_exponent = 0.0);

/// Centered second-order radial derivative on the graded grid; one-sided at
/// the endpoints, and d/dr = 0 at r = 0 (even extension).
RadialField radial_gradient(const RadialField& f);

}  // namespace fade
