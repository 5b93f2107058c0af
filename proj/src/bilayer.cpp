#include "bgsusy/bilayer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "bgsusy/errors.hpp"
#include "bgsusy/numerics.hpp"

namespace bgsusy {

namespace {

// closed-form electron energy where one is known for the family/transform
std::optional<double> closed_energy(const PotentialModel& m, const SusyTransform& t,
                                    int n) {
    const double D = m.D, a = m.alpha, kap = m.kappa;
    if (t.kind() == SusyTransform::Kind::Consecutive) {
        const int j = t.j();
        switch (m.family) {
            case Family::ShiftedHO:
                return 0.5 * m.omega *
                       std::sqrt(static_cast<double>((n - j) * (n - j - 1)));
            case Family::TrigRM: {
                if (j != 1) return std::nullopt;
                const double d1 =
                    D * D * kap * kap *
                        (1.0 / ((D + a) * (D + a)) - 1.0 / ((D + a * n) * (D + a * n))) +
                    (n - 1) * (2.0 * D + (n + 1) * a) * a;
                const double d2 =
                    D * D * kap * kap *
                        (1.0 / ((D + 2.0 * a) * (D + 2.0 * a)) -
                         1.0 / ((D + a * n) * (D + a * n))) +
                    (n - 2) * (2.0 * D + (n + 2) * a) * a;
                return 0.5 * std::sqrt(d1 * d2);
            }
            case Family::HypRM: {
                if (j != 1) return std::nullopt;
                const double d1 =
                    D * D * kap * kap *
                        (1.0 / ((D - a) * (D - a)) - 1.0 / ((D - a * n) * (D - a * n))) +
                    a * (n - 1) * (2.0 * D - a * (n + 1));
                const double d2 =
                    D * D * kap * kap *
                        (1.0 / ((D - 2.0 * a) * (D - 2.0 * a)) -
                         1.0 / ((D - a * n) * (D - a * n))) +
                    a * (n - 2) * (2.0 * D - a * (n + 2));
                return 0.5 * std::sqrt(d1 * d2);
            }
        }
    } else {
        switch (m.family) {
            case Family::ShiftedHO:
                return 0.5 * m.omega * std::abs(n - t.j());
            case Family::TrigRM: {
                if (t.j() != 0) return std::nullopt;
                const double dn = D + n * a;
                return 0.5 * (kap * kap - D * D + dn * dn - kap * kap * D * D / (dn * dn));
            }
            case Family::HypRM: {
                if (t.j() != 0) return std::nullopt;
                const double dn = D - n * a;
                return 0.5 * (D * D + kap * kap - dn * dn - kap * kap * D * D / (dn * dn));
            }
        }
    }
    return std::nullopt;
}

}  // namespace

double electron_energy(const PotentialModel& model, const SusyTransform& transform,
                       int n) {
    const double en = eigenvalue0(model, n);
    double e;
    if (transform.kind() == SusyTransform::Kind::Consecutive)
        e = 0.5 * std::sqrt((en - transform.eps2()) * (en - transform.eps1()));
    else
        e = 0.5 * std::abs(en - transform.eps2());
    if (const std::optional<double> closed = closed_energy(model, transform, n)) {
        if (std::abs(e - *closed) > 1e-12 * (1.0 + std::abs(e)))
            throw RelationInconsistent(
                "closed-form electron energy disagrees with the Delta product");
    }
    return e;
}

SpinorState spinor_state(const PotentialModel& model, const SusyTransform& transform,
                         int n, double k) {
    const Grid& g = transform.grid();
    SpinorState s;
    s.n_aux = n;
    s.k = k;
    s.energy = electron_energy(model, transform, n);

    BoundState low(model, n, g);
    s.lower.grid = g;
    s.lower.values.resize(g.n_points);
    for (int i = 0; i < g.n_points; ++i) s.lower.values[i] = low.value(g.points[i]);

    const bool confluent = transform.kind() == SusyTransform::Kind::Confluent;
    const bool limit_case =
        confluent && (transform.w0() == 0.0 || transform.w0() == 1.0);
    const bool deleted =
        (!confluent && (n == transform.j() || n == transform.j() + 1)) ||
        (limit_case && n == transform.j());

    s.upper.grid = g;
    s.upper.values.assign(g.n_points, 0.0);
    if (deleted) {
        s.has_upper = false;
        return s;
    }
    s.has_upper = true;

    if (confluent && n == transform.j()) {
        // isospectral zero mode: upper proportional to psi_j / w
        SampledFunction sq{g, std::vector<double>(g.n_points)};
        for (int i = 0; i < g.n_points; ++i) {
            s.upper.values[i] = s.lower.values[i] / transform.w(g.points[i]);
            sq.values[i] = s.upper.values[i] * s.upper.values[i];
        }
        const double norm = 1.0 / std::sqrt(integrate(sq));
        for (double& v : s.upper.values) v *= norm;
        return s;
    }

    AppliedState a = apply_L2(L2Direction::Minus, transform, low);
    const double etilde = 2.0 * s.energy;
    // with upper = sigma L2- psi / Etilde the first coupled-equation residual
    // is |1 + sigma| max|L2- psi|, so sigma = -1 makes it vanish identically;
    // the second equation then holds through the factorization identity
    const double sigma = -1.0;
    for (int i = 0; i < g.n_points; ++i)
        s.upper.values[i] = sigma * a.values.values[i] / etilde;
    s.masked = a.masked;

    SampledFunction sq{g, std::vector<double>(g.n_points)};
    for (int i = 0; i < g.n_points; ++i)
        sq.values[i] = s.upper.values[i] * s.upper.values[i];
    const double nrm = integrate(sq);
    if (std::abs(nrm - 1.0) > 1e-6)
        throw RelationInconsistent("mapped upper component is not unit-norm");
    return s;
}

std::vector<SpinorState> standard_ordering(std::vector<SpinorState> states) {
    std::stable_sort(states.begin(), states.end(),
                     [](const SpinorState& a, const SpinorState& b) {
                         return a.energy < b.energy;
                     });
    int m = -1;
    double prev = 0.0;
    for (size_t i = 0; i < states.size(); ++i) {
        if (i == 0 || std::abs(states[i].energy - prev) >= 1e-9 * (1.0 + prev)) ++m;
        states[i].m_std = m;
        prev = states[i].energy;
    }
    for (size_t i = 0; i < states.size(); ++i) {
        states[i].degenerate_with.reset();
        for (size_t l = 0; l < states.size(); ++l)
            if (l != i && states[l].m_std == states[i].m_std) {
                states[i].degenerate_with = states[l].n_aux;
                break;
            }
    }
    return states;
}

double wavenumber_constancy(const SusyTransform& transform) {
    const Grid& g = transform.grid();
    MagneticProfile p = partner_profile(transform, g);
    const int lo = g.n_points / 10, hi = g.n_points - g.n_points / 10;
    double mean = 0.0;
    int count = 0;
    std::vector<double> vals;
    vals.reserve(hi - lo);
    for (int i = lo; i < hi; ++i) {
        const double v = 0.5 * (transform.eta(g.points[i]) - 2.0 * p.A[i]);
        vals.push_back(v);
        mean += v;
        ++count;
    }
    mean /= count;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    return std::sqrt(var / count);
}

namespace {

bool near(double x, double y) { return std::abs(x - y) < 1e-12; }

// closed-form k(kappa); nullopt when the paper has no relation for this case
std::optional<double> closed_k(const PotentialModel& m, const SusyTransform& t,
                               double kap) {
    const double D = m.D, a = m.alpha;
    if (t.kind() == SusyTransform::Kind::Consecutive) {
        switch (m.family) {
            case Family::ShiftedHO:
                return kap;
            case Family::TrigRM:
                return kap * (2.0 * D + 3.0 * a) / (2.0 * (D + a) * (D + 2.0 * a)) *
                       ((D + a) * (D + 2.0 * a) * (D + 2.0 * a) - D * kap * kap) /
                       ((D + a) * (D + 2.0 * a) - kap * kap);
            case Family::HypRM:
                return (2.0 * D - 3.0 * a) *
                       (D * kap * kap * kap +
                        kap * (D * D * D - 5.0 * a * D * D + 8.0 * a * a * D -
                               4.0 * a * a * a)) /
                       (2.0 * (D - 2.0 * a) * (D - a) *
                        (kap * kap + D * D - 3.0 * a * D + 2.0 * a * a));
        }
        return std::nullopt;
    }
    // confluent: only the trigonometric D=2, alpha=1 case is worked out
    if (m.family == Family::TrigRM && t.j() == 0 && near(D, 2.0) && near(a, 1.0))
        return kap + 4.0 / kap;
    return std::nullopt;
}

// ground-state curvature test on a 5-point k-stencil: the branch is physical
// when the lowest nonzero electron energy is locally convex in k
bool branch_is_physical(const PotentialModel& m, const SusyTransform& t, double k0,
                        double kappa_root) {
    if (m.family == Family::ShiftedHO) return true;  // kappa = k, single branch
    auto kfun = [&](double kap) { return *closed_k(m, t, kap); };
    auto energy_floor = [&](double kap) {
        PotentialModel mm = m;
        mm.kappa = kap;
        double best = -1.0;
        int top = 8;
        if (const std::optional<int> count = bound_state_count(mm))
            top = std::min(top, *count - 1);
        for (int n = 0; n <= top; ++n) {
            double en;
            if (t.kind() == SusyTransform::Kind::Consecutive) {
                const double d1 = eigenvalue0(mm, n) - eigenvalue0(mm, t.j());
                const double d2 = eigenvalue0(mm, n) - eigenvalue0(mm, t.j() + 1);
                en = 0.5 * std::sqrt(std::max(0.0, d1 * d2));
            } else {
                en = 0.5 * std::abs(eigenvalue0(mm, n) - eigenvalue0(mm, t.j()));
            }
            if (en > 1e-9 && (best < 0.0 || en < best)) best = en;
        }
        return best;
    };
    const double dk = 0.01 * (1.0 + std::abs(k0));
    double e[5];
    try {
    for (int s = -2; s <= 2; ++s) {
        // track the root continuously by local secant iteration
        double kap = kappa_root;
        const double target = k0 + s * dk;
        bool ok = false;
        for (int it = 0; it < 80; ++it) {
            const double f = kfun(kap) - target;
            if (std::abs(f) < 1e-11 * (1.0 + std::abs(target))) {
                ok = true;
                break;
            }
            const double h = 1e-6 * (1.0 + std::abs(kap));
            const double df = (kfun(kap + h) - kfun(kap - h)) / (2.0 * h);
            if (df == 0.0 || !std::isfinite(df)) break;
            double step = f / df;
            step = std::clamp(step, -0.5, 0.5);
            kap -= step;
        }
        if (!ok || !std::isfinite(kap)) return false;
        e[s + 2] = energy_floor(kap);
        if (e[s + 2] < 0.0) return false;
    }
    } catch (const NoSuchLevel&) {
        return false;
    }
    const double second =
        (-e[0] + 16.0 * e[1] - 30.0 * e[2] + 16.0 * e[3] - e[4]) / (12.0 * dk * dk);
    return second > 0.0;
}

}  // namespace

bool has_wavenumber_relation(const PotentialModel& model,
                             const SusyTransform& transform) {
    return closed_k(model, transform, model.kappa).has_value();
}

WavenumberRelation kappa_to_k(const PotentialModel& model,
                              const SusyTransform& transform) {
    WavenumberRelation rel;
    rel.constancy_std = wavenumber_constancy(transform);
    const std::optional<double> k = closed_k(model, transform, model.kappa);
    if (!k) throw NoBranch("no closed-form k(kappa) relation for this configuration");
    rel.k = *k;
    if (rel.constancy_std > 1e-8 * (1.0 + std::abs(rel.k)))
        throw RelationInconsistent("(eta - 2A)/2 is not constant over the grid");
    // anchor the eta/A split at the left grid end
    rel.C1 = transform.eta(transform.grid().points.front());
    rel.C2 = rel.C1 - 2.0 * rel.k;
    rel.branches = k_to_kappa(model, transform, rel.k);
    return rel;
}

std::vector<KappaBranch> k_to_kappa(const PotentialModel& model,
                                    const SusyTransform& transform, double k) {
    if (!has_wavenumber_relation(model, transform))
        throw NoBranch("no closed-form k(kappa) relation for this configuration");
    std::vector<double> roots;

    if (transform.kind() == SusyTransform::Kind::Confluent) {
        // kappa^2 - k kappa + 4 = 0 (trigonometric D=2, alpha=1)
        const double disc = k * k - 16.0;
        if (disc < -1e-12) throw NoBranch("no real kappa for this k");
        if (disc < 1e-12) {
            roots.push_back(0.5 * k);
        } else {
            roots.push_back(0.5 * (k - std::sqrt(disc)));
            roots.push_back(0.5 * (k + std::sqrt(disc)));
        }
    } else if (model.family == Family::ShiftedHO) {
        roots.push_back(k);
    } else {
        auto kfun = [&](double kap) { return *closed_k(model, transform, kap); };
        auto den = [&](double kap) {
            const double D = model.D, a = model.alpha;
            if (model.family == Family::TrigRM)
                return (D + a) * (D + 2.0 * a) - kap * kap;
            return kap * kap + D * D - 3.0 * a * D + 2.0 * a * a;
        };
        const double K = 1000.0;
        const int cells = 400000;
        const double h = 2.0 * K / cells;
        double xl = -K, fl = kfun(xl) - k;
        for (int i = 1; i <= cells; ++i) {
            const double xr = -K + i * h;
            const double fr = kfun(xr) - k;
            const bool pole = den(xl) * den(xr) <= 0.0;
            if (!pole && std::isfinite(fl) && std::isfinite(fr) && fl * fr <= 0.0) {
                double lo = xl, hi = xr, vlo = fl;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = kfun(mid) - k;
                    if (vlo * fm <= 0.0) {
                        hi = mid;
                    } else {
                        lo = mid;
                        vlo = fm;
                    }
                    if (hi - lo < 1e-12) break;
                }
                roots.push_back(0.5 * (lo + hi));
            }
            xl = xr;
            fl = fr;
        }
        if (roots.empty()) throw NoBranch("no real kappa in the search bracket");
    }

    std::vector<KappaBranch> out;
    for (double r : roots)
        out.push_back({r, branch_is_physical(model, transform, k, r)});
    return out;
}

}  // namespace bgsusy
