#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "greenlab/experiments.hpp"

using namespace greenlab;

TEST_CASE("least squares on an exact line") {
    std::vector<double> x = {1, 2, 3, 4};
    std::vector<double> y = {3, 5, 7, 9};
    auto fit = least_squares(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("m sweep fits the log-divergence slope") {
    auto rep = run_m_sweep(1.0, 3, {100, 1000, 10000, 100000, 1000000});
    REQUIRE(rep.fit.has_value());
    const double expected = 1.0 / (4.0 * M_PI);
    CHECK(std::abs(rep.fit->slope - expected) < 0.02 * expected);
    CHECK(rep.fit->r2 > 0.999);
    CHECK(rep.rows.size() == 5);
}

TEST_CASE("sub-critical slope collapses") {
    auto critical = run_m_sweep(1.0, 3, {100, 1000, 10000, 100000, 1000000});
    auto sub = run_m_sweep(0.5, 3, {100, 1000, 10000, 100000, 1000000});
    CHECK(std::abs(sub.fit->slope) < 0.05 * critical.fit->slope);
}

TEST_CASE("m sweep is order-insensitive") {
    auto fwd = run_m_sweep(1.0, 3, {100, 1000, 10000, 100000});
    auto rev = run_m_sweep(1.0, 3, {100000, 10000, 1000, 100});
    REQUIRE(fwd.rows.size() == rev.rows.size());
    for (size_t i = 0; i < fwd.rows.size(); ++i)
        CHECK(fwd.rows[i] == rev.rows[i]);
    CHECK(fwd.fit->slope == rev.fit->slope);
}

TEST_CASE("m sweep wants >= 4 levels") {
    CHECK_THROWS_AS(run_m_sweep(1.0, 3, {100, 1000, 10000}), std::invalid_argument);
}

TEST_CASE("beta sweep: finite, monotone decreasing in beta") {
    auto rep = run_beta_sweep(1.0, 3, {0.1, 0.3, 0.5, 0.7, 0.9});
    double prev = 1e300;
    for (const auto& row : rep.rows) {
        double g = row[4];
        CHECK(std::isfinite(g));
        CHECK(g > 0.0);
        CHECK(g < prev);
        prev = g;
    }
    CHECK_THROWS_AS(run_beta_sweep(1.0, 3, {}), std::invalid_argument);
    CHECK_THROWS_AS(run_beta_sweep(1.0, 3, {1.5}), std::invalid_argument);
}

TEST_CASE("beta near 1 approaches the constant-drift limit") {
    // beta -> 1 gives b = -C everywhere, so D(0,s) -> C s
    auto rep = run_beta_sweep(1.0, 3, {0.95, 0.99});
    QuadratureConfig q;
    double limit = integrate([](double s) { return std::exp(s) / (s * s); }, 0.5,
                             1.0, q) /
                   (4.0 * M_PI);
    double g99 = rep.rows.back()[4];
    CHECK(std::abs(g99 - limit) < 0.03 * limit);
}

TEST_CASE("c sweep reports monotone values") {
    auto rep = run_c_sweep(1000, 3, {0.25, 0.5, 1.0});
    CHECK(rep.rows.size() == 3);
    CHECK(rep.rows[0][4] < rep.rows[2][4]);
}

TEST_CASE("verify experiment pass and deliberate failure") {
    auto pass = run_verify(DriftSpec::truncated_inverse(1.0, 10000), 3);
    CHECK(pass.passed);
    auto fail = run_verify(DriftSpec::truncated_inverse(1.0, 10000), 3, 2.0);
    CHECK_FALSE(fail.passed);
    double max_res = fail.config_echo["max_abs_residual"].get<double>();
    CHECK(std::abs(max_res - 1.0) < 1e-4);  // residual ~ phi(0)
}

TEST_CASE("report files are written and CSV is deterministic") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "greenlab_report_test";
    fs::remove_all(dir);
    auto rep = run_m_sweep(1.0, 3, {100, 1000, 10000, 100000});
    write_report(rep, dir.string());
    REQUIRE(fs::exists(dir / "rows.csv"));
    REQUIRE(fs::exists(dir / "report.json"));
    auto read = [&](const fs::path& p) {
        std::ifstream f(p);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    std::string first = read(dir / "rows.csv");
    auto rep2 = run_m_sweep(1.0, 3, {100, 1000, 10000, 100000});
    write_report(rep2, dir.string());
    CHECK(read(dir / "rows.csv") == first);  // byte-identical data file
    std::ifstream jf(dir / "report.json");
    nlohmann::json j;
    jf >> j;
    CHECK(j["kind"] == "m_sweep");
    CHECK(j["config"]["C"].get<double>() == 1.0);
    fs::remove_all(dir);
}
