#include "bgsusy/susy.hpp"

#include <cmath>
#include <stdexcept>

#include "bgsusy/errors.hpp"
#include "bgsusy/special.hpp"

namespace bgsusy {

namespace {

constexpr double kPi = 3.14159265358979323846;

// indices adjacent to a sign change of eta, where the 0/0 coefficient limits
// lose accuracy; decaying tails keep a fixed sign and stay well conditioned
std::vector<int> crossing_indices(const std::vector<double>& eta, double guard) {
    std::vector<int> out;
    const int n = static_cast<int>(eta.size());
    auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
    for (int i = 0; i < n; ++i) {
        const bool tiny = std::abs(eta[i]) <= guard;
        const bool left = i > 0 && sgn(eta[i - 1]) * sgn(eta[i]) < 0;
        const bool right = i + 1 < n && sgn(eta[i]) * sgn(eta[i + 1]) < 0;
        if (tiny || left || right) out.push_back(i);
    }
    return out;
}

}  // namespace

SusyTransform SusyTransform::consecutive(const PotentialModel& model, int j) {
    return consecutive(model, j, default_grid(model));
}

SusyTransform SusyTransform::consecutive(const PotentialModel& model, int j,
                                         const Grid& grid) {
    if (j < 1) throw std::invalid_argument("consecutive transform needs j >= 1");
    SusyTransform t;
    t.kind_ = Kind::Consecutive;
    t.model_ = model;
    t.j_ = j;
    t.eps2_ = eigenvalue0(model, j);
    t.eps1_ = eigenvalue0(model, j + 1);
    t.grid_ = grid;
    t.psi_j_.emplace(model, j, t.grid_);
    t.psi_j1_.emplace(model, j + 1, t.grid_);

    // the Wronskian of consecutive bound states must be nodeless
    double prev = 0.0, scale = 0.0;
    std::vector<double> etas(t.grid_.n_points);
    for (int i = 0; i < t.grid_.n_points; ++i) {
        const double x = t.grid_.points[i];
        const double W = t.psi_j_->value(x) * t.psi_j1_->derivative(x) -
                         t.psi_j_->derivative(x) * t.psi_j1_->value(x);
        if (i > 0 && prev * W < 0.0)
            throw TransformSingular("seed Wronskian changes sign on the interior");
        prev = W;
        scale = std::max(scale, std::abs(t.derivs(x).eta));
    }
    t.eta_scale_ = scale;
    return t;
}

SusyTransform SusyTransform::confluent(const PotentialModel& model, int j, double w0) {
    return confluent(model, j, w0, default_grid(model));
}

SusyTransform SusyTransform::confluent(const PotentialModel& model, int j, double w0,
                                       const Grid& grid) {
    if (j < 0) throw std::invalid_argument("confluent transform needs j >= 0");
    if (w0 > 0.0 && w0 < 1.0)
        throw std::invalid_argument("confluent transform needs w0 <= 0 or w0 >= 1");
    SusyTransform t;
    t.kind_ = Kind::Confluent;
    t.model_ = model;
    t.j_ = j;
    t.w0_ = w0;
    t.eps1_ = t.eps2_ = eigenvalue0(model, j);
    t.grid_ = grid;
    t.psi_j_.emplace(model, j, t.grid_);
    const BoundState& seed = *t.psi_j_;
    t.cum_ = std::make_shared<CumulativeIntegral>(
        [seed](double x) {
            const double v = seed.value(x);
            return v * v;
        },
        t.grid_);
    double scale = 0.0;
    for (int i = 0; i < t.grid_.n_points; ++i)
        scale = std::max(scale, std::abs(t.derivs(t.grid_.points[i]).eta));
    t.eta_scale_ = scale;
    return t;
}

double SusyTransform::w(double x) const {
    if (kind_ != Kind::Confluent) throw std::logic_error("w(): confluent transforms only");
    if (w0_ <= 0.0) return w0_ - cum_->prefix(x);
    // summing from the right keeps relative accuracy when w0 = 1
    return (w0_ - cum_->total()) + cum_->suffix(x);
}

SusyTransform::Derivs SusyTransform::derivs(double x) const {
    Derivs d;
    if (kind_ == Kind::Consecutive) {
        const double f = psi_j_->value(x), g = psi_j1_->value(x);
        const double fp = psi_j_->derivative(x), gp = psi_j1_->derivative(x);
        const double fpp = psi_j_->second_derivative(x), gpp = psi_j1_->second_derivative(x);
        const double W = f * gp - fp * g;
        const double de = eps2_ - eps1_;
        const double W1 = de * f * g;                       // Abel identity
        const double W2 = de * (fp * g + f * gp);
        const double W3 = de * (fpp * g + 2.0 * fp * gp + f * gpp);
        const double r1 = W1 / W, r2 = W2 / W, r3 = W3 / W;
        d.eta = -r1;
        d.eta_p = -r2 + r1 * r1;
        d.eta_pp = -r3 + 3.0 * r2 * r1 - 2.0 * r1 * r1 * r1;
    } else {
        const double ww = w(x);
        const double p = psi_j_->value(x), pp = psi_j_->derivative(x);
        const double u = p * p;
        const double up = 2.0 * p * pp;
        const double upp = 2.0 * (pp * pp + p * psi_j_->second_derivative(x));
        const double r = u / ww;
        d.eta = r;
        d.eta_p = up / ww + r * r;
        d.eta_pp = upp / ww + 3.0 * u * up / (ww * ww) + 2.0 * r * r * r;
    }
    return d;
}

double SusyTransform::eta(double x) const { return derivs(x).eta; }

// consecutive transforms hit genuine 0/0 limits near nodes of the seed
// product; confluent eta merely decays without crossing zero, so only an
// exact zero is singular there
double SusyTransform::eta_guard() const {
    return kind_ == Kind::Consecutive ? 1e-12 * eta_scale_ : 0.0;
}
double SusyTransform::eta_prime(double x) const { return derivs(x).eta_p; }
double SusyTransform::eta_second(double x) const { return derivs(x).eta_pp; }

double SusyTransform::gamma_coefficient(double x) const {
    const Derivs d = derivs(x);
    if (std::abs(d.eta) <= eta_guard())
        throw SingularPoint("gamma: eta vanishes here", x);
    const double de = eps1_ - eps2_;
    const double h = 0.5 / d.eta;
    return 0.5 * d.eta_p + 0.25 * d.eta * d.eta - d.eta_pp * h +
           (d.eta_p * h) * (d.eta_p * h) - (de * h) * (de * h);
}

double SusyTransform::reconstruct_v0(double x) const {
    const Derivs d = derivs(x);
    if (std::abs(d.eta) <= eta_guard())
        throw SingularPoint("reconstruct_v0: eta vanishes here", x);
    const double h = 0.5 / d.eta;
    const double de = eps1_ - eps2_;
    return d.eta_pp * h - (d.eta_p * h) * (d.eta_p * h) - d.eta_p +
           0.25 * d.eta * d.eta + 0.5 * (eps1_ + eps2_) + (de * h) * (de * h);
}

double SusyTransform::extra_term_f(double x) const {
    const Derivs d = derivs(x);
    if (std::abs(d.eta) <= eta_guard())
        throw SingularPoint("extra_term_f: eta vanishes here", x);
    const double h = 0.5 / d.eta;
    const double de = eps1_ - eps2_;
    return (d.eta_p * h) * (d.eta_p * h) - d.eta_pp * h - (de * h) * (de * h);
}

namespace {

// fill listed indices by cubic Lagrange interpolation through the two nearest
// clean samples on each side (linear / constant near the boundary)
void interpolate_masked(std::vector<double>& v, const std::vector<int>& masked) {
    const int n = static_cast<int>(v.size());
    std::vector<char> bad(n, 0);
    for (int m : masked) bad[m] = 1;
    for (int idx : masked) {
        int lo = idx - 1, hi = idx + 1;
        while (lo >= 0 && bad[lo]) --lo;
        while (hi < n && bad[hi]) ++hi;
        int lo2 = lo - 1, hi2 = hi + 1;
        while (lo2 >= 0 && bad[lo2]) --lo2;
        while (hi2 < n && bad[hi2]) ++hi2;
        if (lo2 >= 0 && hi2 < n) {
            const double xs[4] = {static_cast<double>(lo2), static_cast<double>(lo),
                                  static_cast<double>(hi), static_cast<double>(hi2)};
            double acc = 0.0;
            const double ys[4] = {v[lo2], v[lo], v[hi], v[hi2]};
            for (int a = 0; a < 4; ++a) {
                double term = ys[a];
                for (int b = 0; b < 4; ++b)
                    if (b != a) term *= (idx - xs[b]) / (xs[a] - xs[b]);
                acc += term;
            }
            v[idx] = acc;
        } else if (lo >= 0 && hi < n) {
            const double t = static_cast<double>(idx - lo) / (hi - lo);
            v[idx] = (1.0 - t) * v[lo] + t * v[hi];
        } else if (lo >= 0) {
            v[idx] = v[lo];
        } else if (hi < n) {
            v[idx] = v[hi];
        }
    }
}

}  // namespace

MagneticProfile partner_profile(const SusyTransform& t, const Grid& grid) {
    MagneticProfile p;
    p.grid = grid;
    const int n = grid.n_points;
    p.V0.resize(n);
    p.V2.resize(n);
    p.B.resize(n);
    p.A.resize(n);
    p.f_extra.resize(n);
    std::vector<double> etas(n);
    for (int i = 0; i < n; ++i) {
        const double x = grid.points[i];
        const double ep = t.eta_prime(x);
        p.V0[i] = potential_value(t.model(), x);
        p.V2[i] = p.V0[i] + 2.0 * ep;
        p.B[i] = 0.5 * ep;
        etas[i] = t.eta(x);
    }
    p.masked = crossing_indices(etas, t.eta_guard());
    std::vector<char> is_masked(n, 0);
    for (int idx : p.masked) is_masked[idx] = 1;
    for (int i = 0; i < n; ++i)
        p.f_extra[i] = is_masked[i] ? 0.0 : t.extra_term_f(grid.points[i]);
    interpolate_masked(p.f_extra, p.masked);
    CumulativeIntegral ci([&t](double x) { return 0.5 * t.eta_prime(x); }, grid);
    for (int i = 0; i < n; ++i) p.A[i] = ci.prefix(grid.points[i]);
    return p;
}

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// cumulative |psi_j|^2 for the shifted oscillator: incomplete-gamma sums
double w_closed_ho(const PotentialModel& m, int j, double x) {
    const double zeta = zeta_map(m, x);
    const double z2 = zeta * zeta;
    double num = 0.0, den = 0.0;
    for (int l = 0; l <= j / 2; ++l)
        for (int mm = 0; mm <= j / 2; ++mm) {
            const double pref = ((mm + l) % 2 ? -1.0 : 1.0) /
                                (factorial(mm) * factorial(l) * factorial(j - 2 * mm) *
                                 factorial(j - 2 * l));
            const double sarg = j - mm - l + 0.5;
            const double g = std::tgamma(sarg);
            const double gi = lower_incomplete_gamma(sarg, z2);
            num += pref * std::pow(2.0, 2.0 * (j - mm - l) - 1.0) *
                   (zeta >= 0.0 ? g + gi : g - gi);
            den += pref * std::pow(2.0, 2.0 * (j - mm - l)) * g;
        }
    return num / den;
}

// cumulative |psi_j|^2 for the hyperbolic family: incomplete-beta sums
double G_hyp(double a, double b, double c, int j) {
    double tot = 0.0;
    for (int l = 0; l <= j; ++l)
        for (int r = 0; r <= j; ++r) {
            const double pref = std::pow(-0.5, l + r) * binom(j, l) * binom(j, r) *
                                std::tgamma(b + c + j + l + 1.0) *
                                std::tgamma(b + c + j + r + 1.0) /
                                (2.0 * (b + l + r) * std::tgamma(b + l + 1.0) *
                                 std::tgamma(b + r + 1.0));
            const double core =
                std::pow(2.0, b + c + l + r) * (b + c + l + r) *
                (incomplete_beta(c, b + l + r + 1.0, 0.5 * (a + 1.0)) -
                 incomplete_beta(c, b + l + r + 1.0, 0.5));
            const double extra = -std::pow(1.0 - a, b + l + r) * std::pow(1.0 + a, c) + 1.0;
            tot += pref * (core + extra);
        }
    const double g = std::tgamma(b + j + 1.0);
    return g * g * tot;
}

double w_closed_hyp(const PotentialModel& m, int j, double x) {
    const SeedParams sp = seed_params(m, j);
    const double p = sp.p.real(), q = sp.q.real();
    const double zeta = zeta_map(m, x);
    const double g1qp = G_hyp(1.0, q, p, j);
    return (G_hyp(zeta, p, q, j) + g1qp) / (G_hyp(1.0, p, q, j) + g1qp);
}

// cumulative |psi_0|^2 for the trigonometric family: complex 2F1 on the unit
// circle; throws ConvergenceError when the series guard fires
double w_closed_trig(const PotentialModel& m, double x) {
    const SeedParams sp = seed_params(m, 0);
    const Complex p = sp.p, q = sp.q;
    const double th = std::atan(1.0 / std::tan(m.alpha * x));
    const Complex i1(0.0, 1.0);
    auto term = [&](double theta) {
        return std::exp(-i1 * (p + q) * 0.5 * (kPi - 2.0 * theta)) *
                   std::exp(-i1 * (p - q) * theta) *
                   hyp2f1(q, q - p, 1.0 + q, -std::exp(2.0 * i1 * theta)) -
               cgamma(1.0 + q) * cgamma(p - q + 1.0) / cgamma(p + 1.0) *
                   std::exp(-i1 * (p - q) * 0.5 * kPi);
    };
    const Complex num = term(th);
    const Complex den = cgamma(1.0 + q) * cgamma(p - q + 1.0) / cgamma(p + 1.0) *
                        (std::exp(-i1 * (p + q) * kPi) * std::exp(i1 * (p - q) * 0.5 * kPi) -
                         std::exp(-i1 * (p - q) * 0.5 * kPi));
    const Complex r = num / den;
    if (std::abs(r.imag()) > 1e-8 * (1.0 + std::abs(r.real())))
        throw std::logic_error("trig closed-form w is not real");
    return r.real();
}

}  // namespace

ClosedFormW w_closed_form(const PotentialModel& model, int j, double x) {
    ClosedFormW out;
    switch (model.family) {
        case Family::ShiftedHO:
            if (j < 0 || j > 10) return out;
            out.available = true;
            out.value = w_closed_ho(model, j, x);
            return out;
        case Family::TrigRM:
            if (j != 0) return out;
            try {
                out.value = w_closed_trig(model, x);
                out.available = true;
            } catch (const ConvergenceError&) {
                out.available = false;
            }
            return out;
        case Family::HypRM: {
            const int count = bound_state_count(model).value();
            if (j < 0 || j > std::min(4, count - 1)) return out;
            out.available = true;
            out.value = w_closed_hyp(model, j, x);
            return out;
        }
    }
    return out;
}

ClosedFormB closed_form_B(const SusyTransform& t, double x) {
    ClosedFormB out;
    const PotentialModel& m = t.model();
    if (t.kind() == SusyTransform::Kind::Consecutive && t.j() == 1) {
        const double zeta = zeta_map(m, x);
        switch (m.family) {
            case Family::ShiftedHO: {
                const double d = 2.0 * zeta * zeta + 1.0;
                out.value = 0.5 * m.omega * (1.0 + (4.0 * zeta * zeta - 2.0) / (d * d));
                out.available = true;
                return out;
            }
            case Family::TrigRM: {
                const double D = m.D, a = m.alpha, k = m.kappa;
                const double bsi = 0.5 * a * (2.0 * D + a) * (1.0 + zeta * zeta);
                const double num = (D + a) * (2.0 * D + 3.0 * a) * zeta * zeta -
                                   2.0 * k * (2.0 * D + 3.0 * a) * zeta + 2.0 * k * k -
                                   a * (D + a);
                const double den = (D + 2.0 * a) * (2.0 * D + 3.0 * a) * zeta * zeta -
                                   2.0 * k * (2.0 * D + 3.0 * a) * zeta + 2.0 * k * k +
                                   a * (D + 2.0 * a);
                out.value = bsi * (1.0 + 4.0 * a * (k * k + (D + 2.0 * a) * (D + 2.0 * a)) /
                                             (2.0 * D + a) * num / (den * den));
                out.available = true;
                return out;
            }
            case Family::HypRM: {
                const double D = m.D, a = m.alpha, k = m.kappa;
                const double bsi = 0.5 * a * (2.0 * D - a) * (1.0 - zeta * zeta);
                const double dz = D * zeta + k;
                const double num =
                    2.0 * dz * dz -
                    (5.0 * D * zeta * zeta + 6.0 * k * zeta + D) * a +
                    (3.0 * zeta * zeta + 1.0) * a * a;
                const double den = 2.0 * k * k +
                                   (D - 2.0 * a) * (zeta * zeta * (2.0 * D - 3.0 * a) + a) +
                                   2.0 * k * zeta * (2.0 * D - 3.0 * a);
                out.value = bsi * (1.0 + 4.0 * a * ((D - 2.0 * a) * (D - 2.0 * a) - k * k) *
                                             num / ((2.0 * D - a) * den * den));
                out.available = true;
                return out;
            }
        }
    }
    if (t.kind() == SusyTransform::Kind::Confluent && t.j() == 0 &&
        m.family == Family::ShiftedHO) {
        const double zeta = zeta_map(m, x);
        // erfc(z) - 2 + 2 w0 rewritten as 2 w0 - erfc(-z) to avoid cancellation
        const double d = 2.0 * t.w0() - std::erfc(-zeta);
        out.value = m.omega * (std::exp(-2.0 * zeta * zeta) / (kPi * d * d) -
                               zeta * std::exp(-zeta * zeta) / (std::sqrt(kPi) * d));
        out.available = true;
        return out;
    }
    return out;
}

namespace {

AppliedState apply_impl(L2Direction dir, const SusyTransform& t,
                        const std::vector<double>& psi, const std::vector<double>& dpsi,
                        const std::vector<double>& d2psi) {
    const Grid& g = t.grid();
    AppliedState out;
    out.values.grid = g;
    out.values.values.resize(g.n_points);
    std::vector<double> etas(g.n_points);
    for (int i = 0; i < g.n_points; ++i) etas[i] = t.eta(g.points[i]);
    out.masked = crossing_indices(etas, t.eta_guard());
    std::vector<char> is_masked(g.n_points, 0);
    for (int idx : out.masked) is_masked[idx] = 1;
    for (int i = 0; i < g.n_points; ++i) {
        if (is_masked[i]) {
            out.values.values[i] = 0.0;
            continue;
        }
        const double x = g.points[i];
        const double gam = t.gamma_coefficient(x);
        if (dir == L2Direction::Minus)
            out.values.values[i] = d2psi[i] + etas[i] * dpsi[i] + gam * psi[i];
        else
            out.values.values[i] =
                d2psi[i] - etas[i] * dpsi[i] + (gam - t.eta_prime(x)) * psi[i];
    }
    interpolate_masked(out.values.values, out.masked);
    return out;
}

}  // namespace

AppliedState apply_L2(L2Direction dir, const SusyTransform& t, const BoundState& psi) {
    const Grid& g = t.grid();
    std::vector<double> v(g.n_points), dv(g.n_points), d2v(g.n_points);
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.points[i];
        v[i] = psi.value(x);
        dv[i] = psi.derivative(x);
        d2v[i] = psi.second_derivative(x);
    }
    return apply_impl(dir, t, v, dv, d2v);
}

AppliedState apply_L2(L2Direction dir, const SusyTransform& t, const SampledFunction& psi) {
    if (!psi.grid.same_as(t.grid()))
        throw std::invalid_argument("apply_L2: sampled state must live on the transform grid");
    SampledFunction d1 = differentiate(psi, 1);
    SampledFunction d2 = differentiate(psi, 2);
    return apply_impl(dir, t, psi.values, d1.values, d2.values);
}

}  // namespace bgsusy
