#pragma once

#include <optional>

#include "bgsusy/grid.hpp"
#include "bgsusy/special.hpp"

namespace bgsusy {

enum class Family { ShiftedHO, TrigRM, HypRM };

// Exactly solvable confining potential with analytic spectrum.
//   ShiftedHO: (omega^2/4)(x + 2 kappa/omega)^2 - omega/2            on R
//   TrigRM:    D(D-a) csc^2(a x) - 2 D kappa cot(a x) - D^2 + kappa^2 on (0, pi/a)
//   HypRM:     D^2 + kappa^2 - D(D+a) sech^2(a x) + 2 kappa D tanh(a x) on R
struct PotentialModel {
    Family family;
    double omega = 0.0;
    double kappa = 0.0;
    double D = 0.0;
    double alpha = 0.0;

    static PotentialModel shifted_ho(double omega, double kappa);
    static PotentialModel trig_rm(double D, double alpha, double kappa);
    static PotentialModel hyp_rm(double D, double alpha, double kappa);

    double s() const { return D / alpha; }
    double domain_min() const;  // -inf / 0 / -inf represented by the grid below
    double domain_max() const;
};

double potential_value(const PotentialModel& model, double x);

// E_n of the auxiliary scalar problem.
double eigenvalue0(const PotentialModel& model, int n);

// Number of bound states; nullopt means infinitely many.
std::optional<int> bound_state_count(const PotentialModel& model);

// Coordinate map zeta(x) per family.
double zeta_map(const PotentialModel& model, double x);

// Level-dependent constants entering the eigenfunctions and the confluent
// closed forms. p, q are the edge exponents (complex for TrigRM).
struct SeedParams {
    int n = 0;
    double a_n = 0.0;
    Complex p{0.0, 0.0};
    Complex q{0.0, 0.0};
};
SeedParams seed_params(const PotentialModel& model, int n);

// Unnormalized eigenfunction value. For TrigRM the complex closed form is
// evaluated and its constant global phase removed; the result must be real to
// 1e-9 (asserted), families with real formulas return a real value directly.
Complex eigenfunction0(const PotentialModel& model, int n, double x);

// 1/sqrt(integral |psi_unnorm|^2) over the grid span, rel_tol 1e-10.
double normalization0(const PotentialModel& model, int n, const Grid& grid);

// Grid covering the numerical support of the low-lying states.
Grid default_grid(const PotentialModel& model);

// Normalized bound state with analytic value and derivative; the second
// derivative comes from the eigenvalue equation itself.
class BoundState {
  public:
    BoundState(const PotentialModel& model, int n, const Grid& grid);
    BoundState(const PotentialModel& model, int n);

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;  // (V0(x) - E) psi(x)

    int level() const { return n_; }
    double energy() const { return energy_; }
    const PotentialModel& model() const { return model_; }
    const Grid& grid() const { return grid_; }

  private:
    PotentialModel model_;
    int n_;
    double energy_;
    Grid grid_;
    double norm_;
    Complex phase_ = 1.0;   // constant phase of the raw TrigRM formula
    double peak_ = 1.0;     // raw-magnitude scale for the reality assertion
};

}  // namespace bgsusy
