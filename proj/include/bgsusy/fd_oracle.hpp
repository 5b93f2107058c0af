#pragma once

#include <vector>

#include "bgsusy/grid.hpp"

namespace bgsusy {

// Dirichlet eigenpairs of the 3-point discretization of -d^2/dx^2 + V.
// Eigenvectors live on the interior nodes and carry unit discrete L2 norm
// (sum v_i^2 h = 1).
struct OracleSpectrum {
    Grid grid;
    std::vector<double> eigenvalues;               // ascending
    std::vector<std::vector<double>> eigenvectors; // eigenvectors[k][i], interior nodes
};

// Lowest `count` eigenpairs via Sturm-sequence bisection plus inverse
// iteration. Deliberately the simplest trustworthy discretization: this is
// the independent oracle every analytic construction is checked against.
OracleSpectrum fd_spectrum(const SampledFunction& V, int count);

}  // namespace bgsusy
