#pragma once

#include <functional>

#include "bgsusy/grid.hpp"

namespace bgsusy {

using RealFn = std::function<double(double)>;

// First or second derivative of sampled data. 5-point (4th-order) stencils in
// the interior, one-sided formulas near the boundary; every node is exact for
// cubics.
SampledFunction differentiate(const SampledFunction& f, int order);

// Adaptive composite Simpson with interval halving; relative stop criterion
// with absolute fallback 1e-14 near zero. Throws ConvergenceError after 24
// refinements.
double integrate(const RealFn& f, double a, double b, double rel_tol);

// Composite Simpson over the samples (trapezoid fixup for an even point count).
double integrate(const SampledFunction& f);

// W(f,g) = f g' - f' g with stencil derivatives.
SampledFunction wronskian(const SampledFunction& f, const SampledFunction& g);

// Analytic-derivative variant for closed-form inputs.
SampledFunction wronskian(const Grid& grid, const RealFn& f, const RealFn& g,
                          const RealFn& df, const RealFn& dg);

// Prefix/suffix antiderivative on a grid, built from per-cell 5-point
// Gauss-Legendre panels. Prefix sums of positive integrands keep relative
// accuracy deep in the tails, which the confluent w-function needs.
class CumulativeIntegral {
  public:
    CumulativeIntegral(RealFn f, const Grid& grid);

    // integral from x_min to x (x inside the domain)
    double prefix(double x) const;
    // integral from x to x_max
    double suffix(double x) const;
    double total() const { return total_; }
    const Grid& grid() const { return grid_; }

  private:
    double cell(double a, double b) const;

    RealFn f_;
    Grid grid_;
    std::vector<double> pre_;  // pre_[i] = integral over [x_0, x_i]
    std::vector<double> suf_;  // suf_[i] = integral over [x_i, x_end]
    double total_ = 0.0;
};

}  // namespace bgsusy
