#pragma once

#include <stdexcept>
#include <string>

namespace bgsusy {

// Iterative scheme failed to reach its tolerance within the allowed work.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A special-function parameter hit a pole (e.g. gamma at a non-positive integer).
struct ParameterPole : std::domain_error {
    explicit ParameterPole(const std::string& msg) : std::domain_error(msg) {}
};

// Requested bound-state index does not exist for the potential.
struct NoSuchLevel : std::out_of_range {
    explicit NoSuchLevel(const std::string& msg) : std::out_of_range(msg) {}
};

// The seed Wronskian (or w-function) has a node on the interior, so the
// transformation produces a singular partner potential.
struct TransformSingular : std::runtime_error {
    explicit TransformSingular(const std::string& msg) : std::runtime_error(msg) {}
};

// eta vanishes at the evaluation point; the coefficient formula is 0/0 there.
struct SingularPoint : std::runtime_error {
    SingularPoint(const std::string& msg, double where)
        : std::runtime_error(msg), location(where) {}
    double location;
};

// No real kappa branch exists for the requested wavenumber.
struct NoBranch : std::runtime_error {
    explicit NoBranch(const std::string& msg) : std::runtime_error(msg) {}
};

// The wavenumber constancy test failed beyond tolerance.
struct RelationInconsistent : std::runtime_error {
    explicit RelationInconsistent(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bgsusy
