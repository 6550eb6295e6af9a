#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "greenlab/drift.hpp"
#include "greenlab/quadrature.hpp"

using namespace greenlab;

namespace {

// Independent oracle: adaptive quadrature of -b over [a,r], split at the
// kinks (branch point, tabulated knots) so each piece is smooth.
double quad_integral(const DriftSpec& spec, double a, double r) {
    QuadratureConfig q;
    q.rel_tol = 1e-12;
    auto f = [&](double t) { return -radial_component(spec, t); };
    std::vector<double> cuts = {a};
    const double bp = spec.branch_point();
    if (bp > a && bp < r) cuts.push_back(bp);
    for (double knot : spec.tab_r)
        if (knot > a && knot < r) cuts.push_back(knot);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(r);
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate(f, cuts[i], cuts[i + 1], q);
    return total;
}

std::vector<double> dense_grid(int count) {
    std::vector<double> g;
    for (int i = 0; i < count; ++i)
        g.push_back(static_cast<double>(i) / count * 0.999999);
    return g;
}

}  // namespace

TEST_CASE("radial component, truncated inverse branches") {
    auto spec = DriftSpec::truncated_inverse(1.0, 100);
    CHECK(radial_component(spec, 0.5) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(radial_component(spec, 0.995) == doctest::Approx(-100.0).epsilon(1e-14));
    // branch boundary r = 1 - 1/m: both branches agree
    CHECK(radial_component(spec, 0.99) == doctest::Approx(-100.0).epsilon(1e-12));
    CHECK_THROWS_AS(radial_component(spec, 1.0), std::domain_error);
    CHECK_THROWS_AS(radial_component(spec, -0.1), std::domain_error);
}

TEST_CASE("radial component, other families") {
    auto pow_spec = DriftSpec::power_regularized(1.0, 0.5);
    CHECK(radial_component(pow_spec, 0.75) == doctest::Approx(-2.0).epsilon(1e-14));
    auto eps_spec = DriftSpec::small_constant(0.01);
    CHECK(radial_component(eps_spec, 0.5) == doctest::Approx(-0.02).epsilon(1e-14));
    CHECK(radial_component(DriftSpec::zero(), 0.3) == 0.0);
}

TEST_CASE("drift integral closed forms") {
    auto spec = DriftSpec::truncated_inverse(1.0, 100);
    // spans the truncation point, finite at r = 1
    CHECK(drift_integral(spec, 0.5, 1.0) ==
          doctest::Approx(std::log(50.0) + 1.0).epsilon(1e-14));
    CHECK(drift_integral(spec, 0.5, 0.75) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(drift_integral(spec, 0.3, 0.3) == 0.0);
    CHECK_THROWS_AS(drift_integral(spec, 0.7, 0.5), std::domain_error);
    CHECK_THROWS_AS(drift_integral(DriftSpec::small_constant(0.1), 0.5, 1.0),
                    std::domain_error);
}

TEST_CASE("drift integral matches quadrature oracle") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<DriftSpec> specs = {
        DriftSpec::truncated_inverse(1.0, 100),
        DriftSpec::truncated_inverse(0.5, 1000),
        DriftSpec::power_regularized(1.0, 0.3),
        DriftSpec::power_regularized(2.0, 0.7),
        DriftSpec::small_constant(0.01),
        DriftSpec::tabulated({0.0, 0.4, 1.0}, {-1.0, -3.0, 0.0}),
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& spec = specs[trial % specs.size()];
        double a = uni(rng) * 0.998;
        double r = a + uni(rng) * (0.999 - a);
        double exact = drift_integral(spec, a, r);
        double numeric = quad_integral(spec, a, r);
        CHECK(std::abs(exact - numeric) <= 1e-10 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("drift integral additivity and monotonicity") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto spec = DriftSpec::truncated_inverse(1.0, 50);
    for (int trial = 0; trial < 200; ++trial) {
        double a = uni(rng) * 0.99, b = uni(rng) * 0.99, c = uni(rng) * 0.99;
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        double whole = drift_integral(spec, a, c);
        double split = drift_integral(spec, a, b) + drift_integral(spec, b, c);
        CHECK(std::abs(whole - split) <= 1e-12 * std::max(1.0, std::abs(whole)));
        CHECK(drift_integral(spec, a, c) >= drift_integral(spec, a, b));
        CHECK(drift_integral(spec, a, c) >= drift_integral(spec, b, c));
    }
}

TEST_CASE("branch continuity at the truncation point") {
    auto spec = DriftSpec::truncated_inverse(1.0, 100);
    const double bp = spec.branch_point();
    const double eps = 1e-13;
    double below = drift_integral(spec, 0.2, bp - eps);
    double above = drift_integral(spec, 0.2, bp + eps);
    CHECK(std::abs(above - below) < 1e-10);
}

TEST_CASE("limiting bound sup") {
    auto grid = dense_grid(20000);
    auto trunc = limiting_bound_holds(DriftSpec::truncated_inverse(1.0, 100), grid);
    CHECK(trunc.holds);
    CHECK(trunc.sup == doctest::Approx(1.0).epsilon(1e-10));
    auto eps = limiting_bound_holds(DriftSpec::small_constant(0.01), grid);
    CHECK(eps.holds);
    CHECK(eps.sup == doctest::Approx(0.01).epsilon(1e-12));
    auto pow = limiting_bound_holds(DriftSpec::power_regularized(1.0, 0.5), grid);
    CHECK(pow.holds);
    CHECK(pow.sup == doctest::Approx(1.0).epsilon(1e-10));  // attained at r = 0
}

TEST_CASE("json round trip and unknown-field rejection") {
    auto spec = DriftSpec::truncated_inverse(1.5, 200);
    nlohmann::json j;
    to_json(j, spec);
    auto back = j.get<DriftSpec>();
    CHECK(back.family == DriftFamily::TruncatedInverse);
    CHECK(back.C == spec.C);
    CHECK(back.m == spec.m);
    nlohmann::json bad = {{"family", "small_constant"}, {"epsilon", 0.1}, {"bogus", 1}};
    CHECK_THROWS_AS(bad.get<DriftSpec>(), std::invalid_argument);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(DriftSpec::truncated_inverse(1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(DriftSpec::power_regularized(1.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(DriftSpec::small_constant(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(DriftSpec::tabulated({0.0, 1.0}, {1.0, 0.0}), std::invalid_argument);
}
