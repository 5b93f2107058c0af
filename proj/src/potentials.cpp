#include "bgsusy/potentials.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bgsusy/errors.hpp"
#include "bgsusy/numerics.hpp"

namespace bgsusy {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_level(const PotentialModel& m, int n) {
    if (n < 0) throw NoSuchLevel("level index must be >= 0");
    if (auto cnt = bound_state_count(m); cnt && n >= *cnt)
        throw NoSuchLevel("level beyond the last bound state");
}

void check_domain(const PotentialModel& m, double x) {
    if (m.family == Family::TrigRM && !(x > 0.0 && x < kPi / m.alpha))
        throw std::domain_error("x outside (0, pi/alpha)");
}

// Eigenfunction formula without normalization; for TrigRM also without the
// constant multivalued prefactor, whose phase is stripped downstream anyway.
Complex raw_value(const PotentialModel& m, int n, double x) {
    const double zeta = zeta_map(m, x);
    switch (m.family) {
        case Family::ShiftedHO:
            return std::exp(-0.5 * zeta * zeta) * hermite(n, zeta);
        case Family::TrigRM: {
            const SeedParams sp = seed_params(m, n);
            const double sn = m.s() + n;
            const Complex A{-sn, -sp.a_n}, B{-sn, sp.a_n};
            // arccot(zeta) = alpha x on the domain
            return std::pow(zeta * zeta + 1.0, -0.5 * sn) * std::exp(sp.a_n * m.alpha * x) *
                   jacobi_complex(n, A, B, Complex(0.0, zeta));
        }
        case Family::HypRM: {
            const SeedParams sp = seed_params(m, n);
            const double p = sp.p.real(), q = sp.q.real();
            // cancellation-free 1 -+ tanh for the edge factors
            const double y = m.alpha * x;
            const double om = 2.0 / (1.0 + std::exp(2.0 * y));
            const double op = 2.0 / (1.0 + std::exp(-2.0 * y));
            return std::pow(om, 0.5 * p) * std::pow(op, 0.5 * q) * jacobi(n, p, q, zeta);
        }
    }
    throw std::logic_error("unreachable");
}

Complex raw_derivative(const PotentialModel& m, int n, double x) {
    const double zeta = zeta_map(m, x);
    switch (m.family) {
        case Family::ShiftedHO: {
            const double dz = std::sqrt(0.5 * m.omega);
            const double hprime = n > 0 ? 2.0 * n * hermite(n - 1, zeta) : 0.0;
            return dz * std::exp(-0.5 * zeta * zeta) * (hprime - zeta * hermite(n, zeta));
        }
        case Family::TrigRM: {
            const SeedParams sp = seed_params(m, n);
            const double sn = m.s() + n;
            const Complex A{-sn, -sp.a_n}, B{-sn, sp.a_n};
            const Complex val = raw_value(m, n, x);
            Complex d = m.alpha * (sp.a_n + sn * zeta) * val;
            if (n > 0) {
                const Complex dP = 0.5 * (static_cast<double>(n) + A + B + 1.0) *
                                   jacobi_complex(n - 1, A + 1.0, B + 1.0, Complex(0.0, zeta));
                const Complex pref = std::pow(zeta * zeta + 1.0, -0.5 * sn) *
                                     std::exp(sp.a_n * m.alpha * x);
                d += pref * Complex(0.0, -m.alpha * (1.0 + zeta * zeta)) * dP;
            }
            return d;
        }
        case Family::HypRM: {
            const SeedParams sp = seed_params(m, n);
            const double p = sp.p.real(), q = sp.q.real();
            const double y = m.alpha * x;
            const double om = 2.0 / (1.0 + std::exp(2.0 * y));
            const double op = 2.0 / (1.0 + std::exp(-2.0 * y));
            const Complex val = raw_value(m, n, x);
            Complex d = 0.5 * m.alpha * (-p * op + q * om) * val;
            if (n > 0) {
                const double dP = 0.5 * (n + p + q + 1.0) * jacobi(n - 1, p + 1.0, q + 1.0, zeta);
                d += std::pow(om, 0.5 * p + 1.0) * std::pow(op, 0.5 * q + 1.0) * m.alpha * dP;
            }
            return d;
        }
    }
    throw std::logic_error("unreachable");
}

// Constant global phase of the raw TrigRM formula, measured at a point where
// the state does not vanish; families with real formulas report phase 1.
Complex raw_phase(const PotentialModel& m, int n, const Grid& g, double* peak_out) {
    if (m.family != Family::TrigRM) {
        *peak_out = 1.0;
        return 1.0;
    }
    const double span = g.x_max - g.x_min;
    const double mid = 0.5 * (g.x_min + g.x_max);
    const double candidates[3] = {mid, mid + 0.053 * span, mid - 0.081 * span};
    Complex best = 0.0;
    for (double xc : candidates) {
        const Complex v = raw_value(m, n, xc);
        if (std::abs(v) > std::abs(best)) best = v;
    }
    if (std::abs(best) == 0.0) throw std::logic_error("phase reference vanished");
    *peak_out = std::abs(best);
    return best / std::abs(best);
}

double strip(Complex v, Complex phase, double peak) {
    const Complex r = v / phase;
    if (std::abs(r.imag()) > 1e-9 * std::max(std::abs(r.real()), peak))
        throw std::logic_error("phase-stripped eigenfunction is not real");
    return r.real();
}

}  // namespace

PotentialModel PotentialModel::shifted_ho(double omega, double kappa) {
    if (!(omega > 0.0)) throw std::invalid_argument("shifted_ho: need omega > 0");
    PotentialModel m;
    m.family = Family::ShiftedHO;
    m.omega = omega;
    m.kappa = kappa;
    return m;
}

PotentialModel PotentialModel::trig_rm(double D, double alpha, double kappa) {
    if (!(D > 0.0 && alpha > 0.0)) throw std::invalid_argument("trig_rm: need D, alpha > 0");
    PotentialModel m;
    m.family = Family::TrigRM;
    m.D = D;
    m.alpha = alpha;
    m.kappa = kappa;
    return m;
}

PotentialModel PotentialModel::hyp_rm(double D, double alpha, double kappa) {
    if (!(D > 0.0 && alpha > 0.0)) throw std::invalid_argument("hyp_rm: need D, alpha > 0");
    if (!(std::abs(kappa) < D))
        throw std::invalid_argument("hyp_rm: |kappa| < D required for a bound state");
    PotentialModel m;
    m.family = Family::HypRM;
    m.D = D;
    m.alpha = alpha;
    m.kappa = kappa;
    return m;
}

double PotentialModel::domain_min() const {
    return family == Family::TrigRM ? 0.0 : -std::numeric_limits<double>::infinity();
}

double PotentialModel::domain_max() const {
    return family == Family::TrigRM ? kPi / alpha : std::numeric_limits<double>::infinity();
}

double potential_value(const PotentialModel& m, double x) {
    check_domain(m, x);
    switch (m.family) {
        case Family::ShiftedHO: {
            const double u = x + 2.0 * m.kappa / m.omega;
            return 0.25 * m.omega * m.omega * u * u - 0.5 * m.omega;
        }
        case Family::TrigRM: {
            const double s = std::sin(m.alpha * x), c = std::cos(m.alpha * x);
            return m.D * (m.D - m.alpha) / (s * s) - 2.0 * m.D * m.kappa * c / s -
                   m.D * m.D + m.kappa * m.kappa;
        }
        case Family::HypRM: {
            const double t = std::tanh(m.alpha * x), sech = 1.0 / std::cosh(m.alpha * x);
            return m.D * m.D + m.kappa * m.kappa - m.D * (m.D + m.alpha) * sech * sech +
                   2.0 * m.kappa * m.D * t;
        }
    }
    throw std::logic_error("unreachable");
}

double eigenvalue0(const PotentialModel& m, int n) {
    check_level(m, n);
    switch (m.family) {
        case Family::ShiftedHO:
            return n * m.omega;
        case Family::TrigRM: {
            const double dn = m.D + n * m.alpha;
            return m.kappa * m.kappa - m.D * m.D + dn * dn -
                   m.kappa * m.kappa * m.D * m.D / (dn * dn);
        }
        case Family::HypRM: {
            const double dn = m.D - n * m.alpha;
            return m.D * m.D + m.kappa * m.kappa - dn * dn -
                   m.kappa * m.kappa * m.D * m.D / (dn * dn);
        }
    }
    throw std::logic_error("unreachable");
}

std::optional<int> bound_state_count(const PotentialModel& m) {
    if (m.family != Family::HypRM) return std::nullopt;
    int count = 0;
    while (true) {
        const double dn = m.D - count * m.alpha;
        if (!(dn > 0.0) || !(std::abs(m.kappa) < dn * dn / m.D)) break;
        ++count;
    }
    return count;
}

double zeta_map(const PotentialModel& m, double x) {
    check_domain(m, x);
    switch (m.family) {
        case Family::ShiftedHO:
            return std::sqrt(0.5 * m.omega) * (x + 2.0 * m.kappa / m.omega);
        case Family::TrigRM:
            return 1.0 / std::tan(m.alpha * x);
        case Family::HypRM:
            return std::tanh(m.alpha * x);
    }
    throw std::logic_error("unreachable");
}

SeedParams seed_params(const PotentialModel& m, int n) {
    check_level(m, n);
    SeedParams sp;
    sp.n = n;
    switch (m.family) {
        case Family::ShiftedHO:
            break;
        case Family::TrigRM: {
            sp.a_n = -m.kappa * m.D / (m.alpha * (m.D + n * m.alpha));
            const double sj = m.s() + n;
            sp.p = Complex(sj, sp.a_n);
            sp.q = Complex(-sj, sp.a_n);
            break;
        }
        case Family::HypRM: {
            sp.a_n = m.D * m.kappa / (m.alpha * (m.D - n * m.alpha));
            sp.p = m.s() - n + sp.a_n;
            sp.q = m.s() - n - sp.a_n;
            break;
        }
    }
    return sp;
}

Complex eigenfunction0(const PotentialModel& m, int n, double x) {
    check_level(m, n);
    check_domain(m, x);
    if (m.family != Family::TrigRM) return raw_value(m, n, x);
    const Grid g = default_grid(m);
    double peak = 1.0;
    const Complex phase = raw_phase(m, n, g, &peak);
    const Complex r = raw_value(m, n, x) / phase;
    if (std::abs(r.imag()) > 1e-9 * std::max(std::abs(r.real()), peak))
        throw std::logic_error("phase-stripped eigenfunction is not real");
    return r;
}

double normalization0(const PotentialModel& m, int n, const Grid& grid) {
    check_level(m, n);
    const double total = integrate(
        [&](double x) { return std::norm(raw_value(m, n, x)); }, grid.x_min, grid.x_max, 1e-10);
    return 1.0 / std::sqrt(total);
}

Grid default_grid(const PotentialModel& m) {
    switch (m.family) {
        case Family::ShiftedHO: {
            const double c = -2.0 * m.kappa / m.omega;
            const double half = 12.0 / std::sqrt(m.omega);
            const int n = static_cast<int>(std::lround(2.0 * half / 0.01)) + 1;
            return make_grid(c - half, c + half, n);
        }
        case Family::TrigRM: {
            const double margin = 1e-4 / m.alpha;
            const double a = margin, b = kPi / m.alpha - margin;
            const int n = static_cast<int>(std::lround((b - a) * m.alpha / 0.002)) + 1;
            return make_grid(a, b, n);
        }
        case Family::HypRM: {
            const double half = 14.0 / m.alpha;
            const int n = static_cast<int>(std::lround(2.0 * half * m.alpha / 0.005)) + 1;
            return make_grid(-half, half, n);
        }
    }
    throw std::logic_error("unreachable");
}

BoundState::BoundState(const PotentialModel& model, int n, const Grid& grid)
    : model_(model), n_(n), energy_(eigenvalue0(model, n)), grid_(grid) {
    phase_ = raw_phase(model_, n_, grid_, &peak_);
    norm_ = normalization0(model_, n_, grid_);
    // sign convention: first significant lobe positive (matches fd_spectrum)
    std::vector<double> vals(grid_.n_points);
    double peakv = 0.0;
    for (int i = 0; i < grid_.n_points; ++i) {
        vals[i] = strip(raw_value(model_, n_, grid_.points[i]), phase_, peak_);
        peakv = std::max(peakv, std::abs(vals[i]));
    }
    for (double v : vals)
        if (std::abs(v) > 0.5 * peakv) {
            if (v < 0.0) norm_ = -norm_;
            break;
        }
}

BoundState::BoundState(const PotentialModel& model, int n)
    : BoundState(model, n, default_grid(model)) {}

double BoundState::value(double x) const {
    return norm_ * strip(raw_value(model_, n_, x), phase_, peak_);
}

double BoundState::derivative(double x) const {
    return norm_ * strip(raw_derivative(model_, n_, x), phase_, peak_);
}

double BoundState::second_derivative(double x) const {
    return (potential_value(model_, x) - energy_) * value(x);
}

}  // namespace bgsusy
