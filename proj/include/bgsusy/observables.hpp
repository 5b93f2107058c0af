#pragma once

#include <vector>

#include "bgsusy/bilayer.hpp"
#include "bgsusy/grid.hpp"
#include "bgsusy/susy.hpp"

namespace bgsusy {

// rho(x) = (|upper|^2 + |lower|^2)/2, or |lower|^2 for single-component
// states; y-independent by the plane-wave ansatz.
std::vector<double> probability_density(const SpinorState& state);

// J = Im(Psi^dag j Psi) + A Psi^dag varsigma Psi with j_x = s_x d_x + s_y d_y,
// j_y = s_y d_x - s_x d_y, varsigma_x = s_y, varsigma_y = -s_x, and d_y acting
// as ik. include_gauge_term=false drops the A term (regression handle only).
struct CurrentDensity {
    std::vector<double> Jx, Jy;
};
CurrentDensity current_density(const SpinorState& state, const SampledFunction& A,
                               bool include_gauge_term = true);

// General complex-component form; a and b are the spinor entries as they
// appear in Psi (any normalization factors already folded in).
CurrentDensity current_density(const Grid& grid, const std::vector<Complex>& a,
                               const std::vector<Complex>& b, double k,
                               const SampledFunction& A,
                               bool include_gauge_term = true);

// max interior |d_x Jx| (the y-derivative of Jy vanishes identically).
double continuity_residual(const SpinorState& state, const SampledFunction& A);
double continuity_residual(const Grid& grid, const std::vector<Complex>& a,
                           const std::vector<Complex>& b, double k,
                           const SampledFunction& A);

// Vector potential in the gauge of the ansatz: A(x) = eta(x)/2 - k, so that
// (eta - 2A)/2 = k identically.
SampledFunction physical_vector_potential(const SusyTransform& transform, double k);

// Bundled per-state output rows.
struct DensityProfile {
    Grid grid;
    std::vector<double> rho, Jx, Jy;
    double k = 0.0;
    int n_aux = 0;
    int m_std = -1;
};
DensityProfile density_profile(const SpinorState& state, const SampledFunction& A);

}  // namespace bgsusy
