#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "bgsusy/grid.hpp"
#include "bgsusy/numerics.hpp"
#include "bgsusy/potentials.hpp"

namespace bgsusy {

// Second-order Darboux transformation built either from two consecutive bound
// states (levels j, j+1 deleted from the partner spectrum) or from a single
// level j in the confluent limit (isospectral for w0 < 0 or w0 > 1; level j
// removed at w0 = 0 or 1).
class SusyTransform {
  public:
    enum class Kind { Consecutive, Confluent };

    static SusyTransform consecutive(const PotentialModel& model, int j);
    static SusyTransform consecutive(const PotentialModel& model, int j, const Grid& grid);
    static SusyTransform confluent(const PotentialModel& model, int j, double w0);
    static SusyTransform confluent(const PotentialModel& model, int j, double w0,
                                   const Grid& grid);

    Kind kind() const { return kind_; }
    int j() const { return j_; }
    double eps1() const { return eps1_; }
    double eps2() const { return eps2_; }
    double w0() const { return w0_; }
    const PotentialModel& model() const { return model_; }
    const Grid& grid() const { return grid_; }
    double eta_scale() const { return eta_scale_; }

    // |eta| at or below this value counts as a genuine zero (0/0 limit point).
    double eta_guard() const;

    double eta(double x) const;
    double eta_prime(double x) const;
    double eta_second(double x) const;

    // gamma of the intertwiner L2- = d2 + eta d + gamma; diverges only in the
    // 0/0 sense at zeros of eta, where SingularPoint is thrown.
    double gamma_coefficient(double x) const;

    // Potential recovered from eta and the factorization energies alone; must
    // reproduce the analytic V0 — the central anti-bug identity.
    double reconstruct_v0(double x) const;

    // sigma_x coupling of the extended Hamiltonian.
    double extra_term_f(double x) const;

    // Confluent w-function w0 - integral of psi_j^2 (relative accuracy kept in
    // both tails).
    double w(double x) const;

    const BoundState& seed() const { return *psi_j_; }
    const BoundState& seed_upper() const { return *psi_j1_; }  // consecutive only

  private:
    SusyTransform() = default;
    struct Derivs {
        double eta, eta_p, eta_pp;
    };
    Derivs derivs(double x) const;

    Kind kind_ = Kind::Consecutive;
    PotentialModel model_;
    int j_ = 0;
    double w0_ = 0.0;
    double eps1_ = 0.0, eps2_ = 0.0;
    Grid grid_;
    std::optional<BoundState> psi_j_, psi_j1_;
    std::shared_ptr<CumulativeIntegral> cum_;
    double eta_scale_ = 1.0;
};

// Sampled partner data on a grid: V2 = V0 + 2 eta', B = eta'/2,
// A(x) = integral of B from the left end (A(x_min) = 0), and the sigma_x
// coupling f. Indices where eta crosses zero are interpolated and listed.
struct MagneticProfile {
    Grid grid;
    std::vector<double> V0, V2, B, A, f_extra;
    std::vector<int> masked;
};
MagneticProfile partner_profile(const SusyTransform& t, const Grid& grid);

// Cumulative integral of the normalized seed squared, via the closed forms
// (incomplete gamma / 2F1 / incomplete beta). available = false outside the
// worked cases or when the 2F1 guard fires.
struct ClosedFormW {
    bool available = false;
    double value = 0.0;
};
ClosedFormW w_closed_form(const PotentialModel& model, int j, double x);

// Closed-form magnetic field for the worked cases (consecutive j = 1 for all
// three families; confluent harmonic oscillator j = 0).
struct ClosedFormB {
    bool available = false;
    double value = 0.0;
};
ClosedFormB closed_form_B(const SusyTransform& t, double x);

enum class L2Direction { Minus, Plus };

// Result of applying an intertwiner on the transform grid; masked lists the
// indices that sat on a zero of eta and were filled by interpolation.
struct AppliedState {
    SampledFunction values;
    std::vector<int> masked;
};

// Analytic-derivative path for known eigenstates.
AppliedState apply_L2(L2Direction dir, const SusyTransform& t, const BoundState& psi);
// Stencil path for arbitrary sampled data on the transform grid.
AppliedState apply_L2(L2Direction dir, const SusyTransform& t, const SampledFunction& psi);

}  // namespace bgsusy
