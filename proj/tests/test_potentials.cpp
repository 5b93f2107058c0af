#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bgsusy/errors.hpp"
#include "bgsusy/fd_oracle.hpp"
#include "bgsusy/numerics.hpp"
#include "bgsusy/potentials.hpp"

using namespace bgsusy;

namespace {
PotentialModel ho() { return PotentialModel::shifted_ho(1.0, 1.0); }
PotentialModel trig() { return PotentialModel::trig_rm(4.0, 1.0, -7.0); }
PotentialModel hyp() { return PotentialModel::hyp_rm(8.0, 1.0, 1.0); }
}  // namespace

TEST_CASE("potential values at reference points") {
    CHECK(potential_value(ho(), -2.0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(potential_value(trig(), M_PI / 2.0) == doctest::Approx(45.0).epsilon(1e-13));
    CHECK(potential_value(hyp(), 200.0) == doctest::Approx(81.0).epsilon(1e-12));
    CHECK_THROWS_AS(potential_value(trig(), -0.1), std::domain_error);
    CHECK_THROWS_AS(potential_value(trig(), M_PI + 0.1), std::domain_error);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(PotentialModel::shifted_ho(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PotentialModel::trig_rm(4.0, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PotentialModel::hyp_rm(8.0, 1.0, 9.0), std::invalid_argument);
}

TEST_CASE("eigenvalues") {
    CHECK(eigenvalue0(ho(), 3) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(eigenvalue0(trig(), 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eigenvalue0(trig(), 1) == doctest::Approx(26.64).epsilon(1e-13));
    CHECK(eigenvalue0(hyp(), 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(eigenvalue0(hyp(), 6), NoSuchLevel);
    CHECK_THROWS_AS(eigenvalue0(ho(), -1), NoSuchLevel);
}

TEST_CASE("bound state accounting") {
    CHECK(!bound_state_count(ho()).has_value());
    CHECK(!bound_state_count(trig()).has_value());
    CHECK(bound_state_count(hyp()).value() == 6);
    CHECK(bound_state_count(PotentialModel::hyp_rm(8.0, 1.0, 7.9)).value() == 1);
}

TEST_CASE("seed parameters") {
    CHECK(seed_params(trig(), 1).a_n == doctest::Approx(5.6).epsilon(1e-14));
    CHECK(seed_params(hyp(), 0).a_n == doctest::Approx(1.0).epsilon(1e-14));
    const SeedParams sp = seed_params(hyp(), 1);
    CHECK(sp.p.real() == doctest::Approx(8.0 - 1.0 + 8.0 / 7.0).epsilon(1e-14));
    CHECK(sp.q.real() == doctest::Approx(8.0 - 1.0 - 8.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("eigenfunction special values") {
    CHECK(std::abs(eigenfunction0(ho(), 0, -2.0) - Complex(1.0)) < 1e-14);
    CHECK(std::abs(eigenfunction0(ho(), 1, -2.0)) < 1e-14);
    CHECK(std::abs(eigenfunction0(hyp(), 0, 0.0) - Complex(1.0)) < 1e-14);
}

TEST_CASE("normalization") {
    const Grid g = default_grid(ho());
    CHECK(normalization0(ho(), 0, g) ==
          doctest::Approx(std::pow(2.0 * M_PI, -0.25)).epsilon(1e-9));
    for (const PotentialModel& m : {ho(), trig(), hyp()}) {
        const Grid gg = default_grid(m);
        BoundState st(m, 2, gg);
        SampledFunction rho{gg, {}};
        rho.values.resize(gg.n_points);
        for (int i = 0; i < gg.n_points; ++i) {
            const double v = st.value(gg.points[i]);
            rho.values[i] = v * v;
        }
        CHECK(integrate(rho) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("analytic derivative matches stencil derivative") {
    for (const PotentialModel& m : {ho(), trig(), hyp()}) {
        const Grid g = default_grid(m);
        for (int n : {0, 1, 3}) {
            BoundState st(m, n, g);
            SampledFunction f{g, {}};
            f.values.resize(g.n_points);
            for (int i = 0; i < g.n_points; ++i) f.values[i] = st.value(g.points[i]);
            SampledFunction df = differentiate(f, 1);
            double peak = 0.0;
            for (double v : df.values) peak = std::max(peak, std::abs(v));
            for (int i = 2; i < g.n_points - 2; i += 7)
                CHECK(std::abs(st.derivative(g.points[i]) - df.values[i]) < 1e-6 * peak);
        }
    }
}

TEST_CASE("Schrodinger residual with stencil second derivative") {
    for (const PotentialModel& m : {ho(), trig(), hyp()}) {
        const Grid g = default_grid(m);
        const int top = m.family == Family::HypRM ? 5 : 6;
        for (int n = 0; n <= top; ++n) {
            BoundState st(m, n, g);
            SampledFunction f{g, {}};
            f.values.resize(g.n_points);
            for (int i = 0; i < g.n_points; ++i) f.values[i] = st.value(g.points[i]);
            SampledFunction d2 = differentiate(f, 2);
            double peak = 0.0, worst = 0.0;
            for (double v : f.values) peak = std::max(peak, std::abs(v));
            for (int i = 2; i < g.n_points - 2; ++i) {
                const double x = g.points[i];
                const double r =
                    -d2.values[i] + (potential_value(m, x) - st.energy()) * f.values[i];
                worst = std::max(worst, std::abs(r));
            }
            CHECK(worst < 1e-4 * peak * (1.0 + std::abs(st.energy())));
        }
    }
}

TEST_CASE("orthogonality of normalized states") {
    for (const PotentialModel& m : {ho(), trig(), hyp()}) {
        const Grid g = default_grid(m);
        std::vector<BoundState> states;
        for (int n = 0; n < 5; ++n) states.emplace_back(m, n, g);
        std::vector<std::vector<double>> vals(5, std::vector<double>(g.n_points));
        for (int n = 0; n < 5; ++n)
            for (int i = 0; i < g.n_points; ++i) vals[n][i] = states[n].value(g.points[i]);
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) {
                SampledFunction prod{g, {}};
                prod.values.resize(g.n_points);
                for (int i = 0; i < g.n_points; ++i) prod.values[i] = vals[a][i] * vals[b][i];
                CHECK(std::abs(integrate(prod)) < 1e-7);
            }
    }
}

TEST_CASE("node counts") {
    for (const PotentialModel& m : {ho(), trig(), hyp()}) {
        const Grid g = default_grid(m);
        for (int n : {0, 1, 2, 4}) {
            BoundState st(m, n, g);
            int nodes = 0;
            double prev = 0.0;
            double peak = 0.0;
            std::vector<double> vals(g.n_points);
            for (int i = 0; i < g.n_points; ++i) {
                vals[i] = st.value(g.points[i]);
                peak = std::max(peak, std::abs(vals[i]));
            }
            for (double v : vals) {
                if (std::abs(v) < 1e-6 * peak) continue;
                if (prev != 0.0 && v * prev < 0.0) ++nodes;
                prev = v;
            }
            CHECK(nodes == n);
        }
    }
}

TEST_CASE("fd spectrum agrees with closed-form eigenvalues") {
    for (const PotentialModel& m : {ho(), trig(), hyp()}) {
        const Grid g = default_grid(m);
        SampledFunction V{g, {}};
        V.values.resize(g.n_points);
        for (int i = 0; i < g.n_points; ++i) V.values[i] = potential_value(m, g.points[i]);
        OracleSpectrum s = fd_spectrum(V, 4);
        const double tol = m.family == Family::ShiftedHO ? 5e-4 : 5e-3;
        for (int k = 0; k < 4; ++k) {
            const double exact = eigenvalue0(m, k);
            CHECK(std::abs(s.eigenvalues[k] - exact) < tol * (1.0 + std::abs(exact)));
        }
    }
}
