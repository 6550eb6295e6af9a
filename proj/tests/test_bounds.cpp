#include <doctest.h>

#include <cmath>
#include <vector>

#include "greenlab/bounds.hpp"

using namespace greenlab;

namespace {
const QuadratureConfig kQuad;

std::vector<double> probe_radii() {
    return {1e-4, 3e-4, 1e-3, 3e-3, 0.01, 0.03, 0.1, 0.2, 0.3, 0.4, 0.5};
}

std::vector<double> inner_radii() {
    return {0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.24};
}
}  // namespace

TEST_CASE("zero-drift interior lower bound closed form") {
    auto profile = build_profile(DriftSpec::zero(), 3, 32, kQuad);
    std::vector<double> radii = {0.1, 0.2, 0.3, 0.4, 0.5};
    auto report = interior_lower_bound(profile, radii);
    // r G(r) = (1-r)/(4 pi), minimized at r = 1/2 over the probe set
    CHECK(report.c0_empirical == doctest::Approx(1.0 / (8.0 * M_PI)).epsilon(1e-9));
    CHECK(report.positive);
    CHECK(report.probes.size() == radii.size());
}

TEST_CASE("m-uniform interior constant") {
    std::vector<double> at_smallest;
    for (int m : {100, 10000, 1000000}) {
        auto profile = build_profile(DriftSpec::truncated_inverse(1.0, m), 3, 64, kQuad);
        auto radii = probe_radii();
        auto report = interior_lower_bound(profile, radii);
        CHECK(report.c0_empirical > 0.0);
        at_smallest.push_back(report.probes.front().second);
    }
    for (double v : at_smallest)
        CHECK(std::abs(v - at_smallest.front()) <= 0.01 * at_smallest.front());
}

TEST_CASE("interior bound input validation") {
    auto profile = build_profile(DriftSpec::zero(), 3, 32, kQuad);
    std::vector<double> empty;
    CHECK_THROWS_AS(interior_lower_bound(profile, empty), std::invalid_argument);
    std::vector<double> outside = {0.7};
    CHECK_THROWS_AS(interior_lower_bound(profile, outside), std::domain_error);
}

TEST_CASE("derivative probe: zero drift is the exact Laplacian flux") {
    auto profile = build_profile(DriftSpec::zero(), 3, 32, kQuad);
    auto radii = inner_radii();
    CHECK(derivative_lower_bound(profile, radii) ==
          doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("derivative probe is m-stable and inside the expected band") {
    const double base = 1.0 / (4.0 * M_PI);
    std::vector<double> values;
    for (int m : {100, 10000, 1000000}) {
        auto profile = build_profile(DriftSpec::truncated_inverse(1.0, m), 3, 64, kQuad);
        auto radii = inner_radii();
        double v = derivative_lower_bound(profile, radii);
        CHECK(v >= base);          // e^{D(0,a)} >= 1
        CHECK(v <= 4.0 / 3.0 * base * 1.0001);  // (1-a)^{-1} <= 4/3 for a <= 1/4
        values.push_back(v);
    }
    for (double v : values)
        CHECK(std::abs(v - values.front()) <= 0.01 * values.front());
}

TEST_CASE("small constant drift derivative probe near Laplacian") {
    auto profile = build_profile(DriftSpec::small_constant(0.01), 3, 32, kQuad);
    auto radii = inner_radii();
    double v = derivative_lower_bound(profile, radii);
    CHECK(std::abs(v - 1.0 / (4.0 * M_PI)) < 0.03 / (4.0 * M_PI));
}

TEST_CASE("upper bound status across m-sweeps") {
    auto sweep = [&](double C) {
        std::vector<RadialGreenProfile> family;
        for (int m : {100, 10000, 1000000})
            family.push_back(build_profile(DriftSpec::truncated_inverse(C, m), 3, 64, kQuad));
        return upper_bound_status(family);
    };
    auto critical = sweep(1.0);
    CHECK(critical.status == UpperBoundStatus::NoUniformUpper);
    auto subcritical = sweep(0.5);
    CHECK(subcritical.status == UpperBoundStatus::UniformUpper);
    CHECK(subcritical.C2_empirical > 0.0);
    std::vector<RadialGreenProfile> single = {
        build_profile(DriftSpec::zero(), 3, 32, kQuad)};
    CHECK_THROWS_AS(upper_bound_status(single), std::invalid_argument);
}

TEST_CASE("critical sequence increases without bound; subcritical is Cauchy") {
    std::vector<double> critical, subcritical;
    for (int m : {100, 1000, 10000, 100000, 1000000}) {
        critical.push_back(
            green_value(DriftSpec::truncated_inverse(1.0, m), 3, 0.5, kQuad));
        subcritical.push_back(
            green_value(DriftSpec::truncated_inverse(0.5, m), 3, 0.5, kQuad));
    }
    for (size_t i = 1; i < critical.size(); ++i)
        CHECK(critical[i] > critical[i - 1]);
    CHECK(critical.back() / critical.front() > 2.0);
    CHECK(std::abs(subcritical[4] - subcritical[3]) < 0.02 * subcritical[3]);
}

TEST_CASE("bound report json") {
    auto profile = build_profile(DriftSpec::zero(), 3, 32, kQuad);
    std::vector<double> radii = {0.25};
    auto report = interior_lower_bound(profile, radii);
    auto j = to_json(report);
    CHECK(j["positive"].get<bool>());
    CHECK(j["probes"].size() == 1);
}
