#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bgsusy/errors.hpp"
#include "bgsusy/numerics.hpp"
#include "bgsusy/potentials.hpp"
#include "bgsusy/susy.hpp"

using namespace bgsusy;

namespace {
PotentialModel ho() { return PotentialModel::shifted_ho(1.0, 1.0); }
PotentialModel trig() { return PotentialModel::trig_rm(4.0, 1.0, -7.0); }
PotentialModel hyp() { return PotentialModel::hyp_rm(8.0, 1.0, 1.0); }

// eta crosses zero only for consecutive transforms (nodes of the seed
// product); confluent eta merely decays in the tails, where the coefficient
// ratios stay well conditioned.
bool near_masked(const SusyTransform& t, double x) {
    const double frac = t.kind() == SusyTransform::Kind::Consecutive ? 1e-3 : 1e-9;
    return std::abs(t.eta(x)) < frac * t.eta_scale();
}
}  // namespace

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(SusyTransform::consecutive(ho(), 0), std::invalid_argument);
    CHECK_THROWS_AS(SusyTransform::confluent(ho(), 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(SusyTransform::confluent(ho(), -1, -1.0), std::invalid_argument);
}

TEST_CASE("factorization energies") {
    SusyTransform t = SusyTransform::consecutive(ho(), 1);
    CHECK(t.eps2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.eps1() == doctest::Approx(2.0).epsilon(1e-14));
    SusyTransform c = SusyTransform::confluent(ho(), 0, -1.0);
    CHECK(c.eps1() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(c.eps1() == c.eps2());
}

TEST_CASE("field profile matches closed form: oscillator, consecutive j=1") {
    SusyTransform t = SusyTransform::consecutive(ho(), 1);
    const Grid& g = t.grid();
    for (int i = 5; i < g.n_points - 5; i += 13) {
        const double x = g.points[i];
        const ClosedFormB b = closed_form_B(t, x);
        REQUIRE(b.available);
        CHECK(std::abs(0.5 * t.eta_prime(x) - b.value) < 1e-8);
    }
}

TEST_CASE("field profile matches closed form: trigonometric, consecutive j=1") {
    SusyTransform t = SusyTransform::consecutive(trig(), 1);
    const Grid& g = t.grid();
    // partner potential at the domain midpoint
    const double mid = M_PI / 2.0;
    const ClosedFormB bm = closed_form_B(t, mid);
    REQUIRE(bm.available);
    const double v2_closed = potential_value(trig(), mid) + 4.0 * bm.value;
    CHECK(std::abs(potential_value(trig(), mid) + 2.0 * t.eta_prime(mid) - v2_closed) <
          1e-7);
    for (int i = 20; i < g.n_points - 20; i += 37) {
        const double x = g.points[i];
        const ClosedFormB b = closed_form_B(t, x);
        REQUIRE(b.available);
        CHECK(std::abs(0.5 * t.eta_prime(x) - b.value) < 1e-6 * (1.0 + std::abs(b.value)));
    }
}

TEST_CASE("field profile matches closed form: hyperbolic, consecutive j=1") {
    SusyTransform t = SusyTransform::consecutive(hyp(), 1);
    const Grid& g = t.grid();
    for (int i = 20; i < g.n_points - 20; i += 37) {
        const double x = g.points[i];
        const ClosedFormB b = closed_form_B(t, x);
        REQUIRE(b.available);
        CHECK(std::abs(0.5 * t.eta_prime(x) - b.value) < 1e-6 * (1.0 + std::abs(b.value)));
    }
}

TEST_CASE("field profile matches closed form: oscillator, confluent j=0") {
    for (double w0 : {-1.0, 2.0}) {
        SusyTransform t = SusyTransform::confluent(ho(), 0, w0);
        const Grid& g = t.grid();
        for (int i = 5; i < g.n_points - 5; i += 13) {
            const double x = g.points[i];
            const ClosedFormB b = closed_form_B(t, x);
            REQUIRE(b.available);
            CHECK(std::abs(0.5 * t.eta_prime(x) - b.value) < 1e-7);
        }
    }
}

TEST_CASE("potential reconstruction, all family/transform combinations") {
    for (const PotentialModel& m : {ho(), trig(), hyp()}) {
        SusyTransform tc = SusyTransform::consecutive(m, 1);
        SusyTransform tf = SusyTransform::confluent(m, 0, -1.0);
        for (const SusyTransform* t : {&tc, &tf}) {
            const Grid& g = t->grid();
            // the coefficient combinations stay well conditioned down to
            // |eta| ~ 1e-4 of its peak (consecutive) resp. the deep tails
            // (confluent, where eta never crosses zero)
            const double frac =
                t->kind() == SusyTransform::Kind::Consecutive ? 1e-4 : 1e-9;
            std::vector<int> eligible;
            for (int i = 10; i < g.n_points - 10; ++i)
                if (std::abs(t->eta(g.points[i])) >= frac * t->eta_scale())
                    eligible.push_back(i);
            REQUIRE(static_cast<int>(eligible.size()) >= 100);
            const int stride = static_cast<int>(eligible.size()) / 100;
            int checked = 0;
            for (size_t k = 0; k < eligible.size() && checked < 100; k += stride) {
                const double x = g.points[eligible[k]];
                const double v0 = potential_value(m, x);
                CHECK(std::abs(t->reconstruct_v0(x) - v0) < 1e-6 * (1.0 + std::abs(v0)));
                ++checked;
            }
            CHECK(checked == 100);
        }
    }
}

TEST_CASE("gamma splits into field plus scalar coupling") {
    SusyTransform t = SusyTransform::consecutive(hyp(), 1);
    for (double x : {-1.5, -0.3, 0.4, 1.1}) {
        if (near_masked(t, x)) continue;
        const double e = t.eta(x);
        const double lhs = t.gamma_coefficient(x);
        const double rhs = 0.5 * t.eta_prime(x) + 0.25 * e * e + t.extra_term_f(x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("singular-point reporting at zeros of eta") {
    SusyTransform t = SusyTransform::consecutive(ho(), 1);
    // psi_1 has its node at zeta = 0, i.e. x = -2
    CHECK_THROWS_AS(t.gamma_coefficient(-2.0), SingularPoint);
    CHECK_THROWS_AS(t.reconstruct_v0(-2.0), SingularPoint);
}

TEST_CASE("confluent w-function range and monotonicity") {
    for (const PotentialModel& m : {ho(), trig(), hyp()}) {
        for (double w0 : {-1.0, 0.0, 1.0, 2.5}) {
            SusyTransform t = SusyTransform::confluent(m, 0, w0);
            const Grid& g = t.grid();
            double prev = t.w(g.points[0]);
            CHECK(prev <= w0 + 1e-12);
            for (int i = 1; i < g.n_points; i += 3) {
                const double v = t.w(g.points[i]);
                CHECK(v <= prev + 1e-12);
                CHECK(v >= w0 - 1.0 - 1e-9);
                prev = v;
            }
        }
    }
}

TEST_CASE("closed-form w agrees with quadrature: oscillator") {
    for (int j : {0, 1, 2}) {
        SusyTransform t = SusyTransform::confluent(ho(), j, -1.0);
        const Grid& g = t.grid();
        for (int i = 10; i < g.n_points - 10; i += g.n_points / 50 + 1) {
            const double x = g.points[i];
            const ClosedFormW cw = w_closed_form(ho(), j, x);
            REQUIRE(cw.available);
            CHECK(std::abs((t.w0() - t.w(x)) - cw.value) < 1e-7);
        }
    }
}

TEST_CASE("closed-form w agrees with quadrature: hyperbolic") {
    for (int j : {0, 1}) {
        SusyTransform t = SusyTransform::confluent(hyp(), j, -1.0);
        const Grid& g = t.grid();
        for (int i = 10; i < g.n_points - 10; i += g.n_points / 50 + 1) {
            const double x = g.points[i];
            const ClosedFormW cw = w_closed_form(hyp(), j, x);
            REQUIRE(cw.available);
            CHECK(std::abs((t.w0() - t.w(x)) - cw.value) < 1e-7);
        }
    }
}

TEST_CASE("closed-form w frozen reference values: hyperbolic") {
    CHECK(w_closed_form(hyp(), 0, 0.0).value ==
          doctest::Approx(0.696380615234375).epsilon(1e-10));
    CHECK(w_closed_form(hyp(), 0, -2.0).value ==
          doctest::Approx(3.451928272212414e-09).epsilon(1e-6));
    CHECK(w_closed_form(hyp(), 1, 0.0).value ==
          doctest::Approx(0.5612017623265743).epsilon(1e-10));
    CHECK(w_closed_form(hyp(), 1, -2.0).value ==
          doctest::Approx(9.437855173275516e-07).epsilon(1e-6));
}

TEST_CASE("closed-form w frozen reference values: trigonometric") {
    const PotentialModel m = PotentialModel::trig_rm(2.0, 1.0, -2.0);
    struct Ref {
        double x, value;
    };
    const Ref refs[] = {{0.5, 1.1222399025193103e-05},
                        {M_PI / 2.0, 0.041702879098005526},
                        {2.0, 0.23301422460197144},
                        {2.8, 0.9692272480663559}};
    SusyTransform t = SusyTransform::confluent(m, 0, -1.0);
    for (const Ref& r : refs) {
        const ClosedFormW cw = w_closed_form(m, 0, r.x);
        REQUIRE(cw.available);
        CHECK(cw.value == doctest::Approx(r.value).epsilon(1e-8));
        CHECK(std::abs((t.w0() - t.w(r.x)) - cw.value) < 1e-7);
    }
}

TEST_CASE("closed-form availability flags") {
    CHECK(!w_closed_form(trig(), 1, 1.0).available);
    CHECK(!w_closed_form(hyp(), 5, 0.0).available);
    SusyTransform t = SusyTransform::consecutive(ho(), 2);
    CHECK(!closed_form_B(t, 0.0).available);
}

TEST_CASE("intertwiner annihilates the deleted levels") {
    SusyTransform t = SusyTransform::consecutive(ho(), 1);
    for (int n : {1, 2}) {
        BoundState psi(ho(), n, t.grid());
        AppliedState a = apply_L2(L2Direction::Minus, t, psi);
        double worst = 0.0;
        for (int i = 2; i < t.grid().n_points - 2; ++i)
            worst = std::max(worst, std::abs(a.values.values[i]));
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("factorization on eigenstates") {
    // finer grid: the stencil in the chained application limits the pointwise
    // relative accuracy near nodes of psi_n
    const Grid fine = make_grid(-14.0, 10.0, 6001);
    SusyTransform t = SusyTransform::consecutive(ho(), 1, fine);
    const Grid& g = t.grid();
    for (int n : {0, 3, 4, 5}) {
        BoundState psi(ho(), n, g);
        AppliedState lo = apply_L2(L2Direction::Minus, t, psi);
        AppliedState hi = apply_L2(L2Direction::Plus, t, lo.values);
        const double fac = (psi.energy() - t.eps1()) * (psi.energy() - t.eps2());
        // interpolated samples contaminate the stencil within two cells
        std::vector<char> skip(g.n_points, 0);
        for (int idx : lo.masked)
            for (int d = -2; d <= 2; ++d)
                if (idx + d >= 0 && idx + d < g.n_points) skip[idx + d] = 1;
        for (int idx : hi.masked)
            for (int d = -2; d <= 2; ++d)
                if (idx + d >= 0 && idx + d < g.n_points) skip[idx + d] = 1;
        double worst = 0.0;
        for (int i = 2; i < g.n_points - 2; ++i) {
            if (skip[i]) continue;
            const double ref = fac * psi.value(g.points[i]);
            if (std::abs(psi.value(g.points[i])) <= 1e-8) continue;
            worst = std::max(worst, std::abs(hi.values.values[i] - ref) / std::abs(ref));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("norm of the mapped ground state") {
    SusyTransform t = SusyTransform::consecutive(ho(), 1);
    BoundState psi(ho(), 0, t.grid());
    AppliedState a = apply_L2(L2Direction::Minus, t, psi);
    SampledFunction sq{t.grid(), {}};
    sq.values.resize(t.grid().n_points);
    for (int i = 0; i < t.grid().n_points; ++i)
        sq.values[i] = a.values.values[i] * a.values.values[i];
    // (E_0 - eps1)(E_0 - eps2) = (0-2)(0-1) = 2
    CHECK(integrate(sq) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("partner profile consistency") {
    SusyTransform t = SusyTransform::consecutive(hyp(), 1);
    const Grid& g = t.grid();
    MagneticProfile p = partner_profile(t, g);
    REQUIRE(static_cast<int>(p.V2.size()) == g.n_points);
    CHECK(p.A.front() == doctest::Approx(0.0).epsilon(1e-14));
    for (int i = 0; i < g.n_points; i += 53) {
        CHECK(p.V2[i] == doctest::Approx(p.V0[i] + 4.0 * p.B[i]).epsilon(1e-12));
        CHECK(p.B[i] == doctest::Approx(0.5 * t.eta_prime(g.points[i])).epsilon(1e-12));
    }
    // A' = B by construction
    SampledFunction As{g, p.A};
    SampledFunction dA = differentiate(As, 1);
    for (int i = 4; i < g.n_points - 4; i += 53)
        CHECK(std::abs(dA.values[i] - p.B[i]) < 1e-6 * (1.0 + std::abs(p.B[i])));
}

TEST_CASE("wronskian node detection") {
    // levels 1 and 3 are not consecutive in disguise: their Wronskian has nodes
    const PotentialModel m = ho();
    BoundState p1(m, 1), p3(m, 3);
    const Grid g = default_grid(m);
    int sign_changes = 0;
    double prev = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        const double x = g.points[i];
        const double W = p1.value(x) * p3.derivative(x) - p1.derivative(x) * p3.value(x);
        if (prev != 0.0 && W * prev < 0.0) ++sign_changes;
        if (std::abs(W) > 1e-12) prev = W;
    }
    CHECK(sign_changes > 0);
}
