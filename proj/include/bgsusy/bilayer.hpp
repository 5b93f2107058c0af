#pragma once

#include <optional>
#include <vector>

#include "bgsusy/grid.hpp"
#include "bgsusy/potentials.hpp"
#include "bgsusy/susy.hpp"

namespace bgsusy {

// Two-component electron state assembled from the auxiliary scalar problem.
// upper = psi^(2) (identically zero for the deleted levels), lower = psi^(0).
// Components are real after global-phase stripping; the e^{iky} factor and the
// 1/sqrt(2) of the two-component ansatz are bookkept, not stored.
struct SpinorState {
    int n_aux = 0;
    int m_std = -1;  // assigned by standard_ordering
    double energy = 0.0;
    SampledFunction upper;
    SampledFunction lower;
    bool has_upper = false;
    double k = 0.0;
    std::optional<int> degenerate_with;  // n_aux of the degenerate partner
    std::vector<int> masked;             // interpolated samples of upper
};

// E_n = sqrt(Delta_{n,j} Delta_{n,j+1})/2 (consecutive) or |Delta_{n,j}|/2
// (confluent), Delta_{n,m} = E_n^(0) - E_m^(0). The per-family closed forms
// are evaluated alongside and must agree to relative 1e-12.
double electron_energy(const PotentialModel& model, const SusyTransform& transform,
                       int n);

// Assembled, normalized state on the transform grid. The deleted levels (and
// the confluent limit cases w0 in {0,1} at n = j) carry a single component
// without the 1/sqrt(2); the confluent isospectral n = j state has
// upper proportional to psi_j/w.
SpinorState spinor_state(const PotentialModel& model, const SusyTransform& transform,
                         int n, double k);

// Stable sort by energy; m_std labels distinct energy levels, degenerate
// partners (|dE| < 1e-9 (1+E)) share m_std and reference each other.
std::vector<SpinorState> standard_ordering(std::vector<SpinorState> states);

struct KappaBranch {
    double kappa = 0.0;
    bool physical = false;  // E(k) locally quadratic with positive curvature
};

// k = (C1 - C2)/2 where C1 is the constant part of eta and C2 the integration
// constant of the vector potential. constancy_std is the spread of
// (eta - 2A)/2 over the interior with A anchored at the left end; it must
// vanish identically and guards eta/A consistency.
struct WavenumberRelation {
    double C1 = 0.0;
    double C2 = 0.0;
    double k = 0.0;
    double constancy_std = 0.0;
    std::vector<KappaBranch> branches;
};

// Standard deviation of (eta(x) - 2A(x))/2 over the central 80% of the grid.
double wavenumber_constancy(const SusyTransform& transform);

// True when a closed-form k(kappa) relation exists for this family/transform.
bool has_wavenumber_relation(const PotentialModel& model,
                             const SusyTransform& transform);

// Evaluate the closed-form relation and verify the constancy invariant.
// Throws NoBranch when no relation is known, RelationInconsistent when the
// constancy check fails.
WavenumberRelation kappa_to_k(const PotentialModel& model,
                              const SusyTransform& transform);

// All real roots of k(kappa) = k on |kappa| <= 1000, refined to 1e-10.
// Throws NoBranch when there is no real root (or no known relation).
std::vector<KappaBranch> k_to_kappa(const PotentialModel& model,
                                    const SusyTransform& transform, double k);

}  // namespace bgsusy
