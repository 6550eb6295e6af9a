#include <doctest.h>

#include <cmath>

#include "greenlab/quadrature.hpp"

using namespace greenlab;

TEST_CASE("polynomials are exact") {
    QuadratureConfig q;
    auto f = [](double x) { return x * x * x - 2.0 * x + 1.0; };
    double got = integrate(f, 0.0, 2.0, q);
    CHECK(got == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("steep boundary-layer exponential") {
    QuadratureConfig q;
    const double m = 1e6;
    auto f = [&](double s) { return m * std::exp(-m * (1.0 - s)); };
    double got = integrate(f, 1.0 - 1.0 / m, 1.0, q);
    CHECK(got == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
}

TEST_CASE("integrable endpoint singularity") {
    QuadratureConfig q;
    q.rel_tol = 1e-10;
    auto f = [](double s) { return 1.0 / std::sqrt(1.0 - s); };
    double got = integrate(f, 0.0, 1.0, q);
    CHECK(got == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("near-singular inverse-distance integrand") {
    QuadratureConfig q;
    auto f = [](double s) { return 1.0 / (1.0 - s); };
    double got = integrate(f, 0.0, 1.0 - 1e-6, q);
    CHECK(got == doctest::Approx(std::log(1e6)).epsilon(1e-12));
}

TEST_CASE("subdivision budget is enforced") {
    QuadratureConfig q;
    q.max_subdivisions = 3;
    q.rel_tol = 1e-14;
    auto f = [](double s) { return 1.0 / std::sqrt(std::abs(s - 0.37) + 1e-14); };
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, q), QuadratureFailure);
}

TEST_CASE("config validation") {
    QuadratureConfig q;
    q.rel_tol = -1.0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    QuadratureConfig g;
    g.boundary_grading = 0.5;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}
