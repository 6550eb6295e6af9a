#include "greenlab/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace greenlab {

BoundReport interior_lower_bound(const RadialGreenProfile& profile,
                                 std::span<const double> radii) {
    if (radii.empty())
        throw std::invalid_argument("interior_lower_bound: empty radii list");
    BoundReport report;
    report.spec = profile.spec;
    report.n = profile.n;
    report.c0_empirical = std::numeric_limits<double>::infinity();
    report.C2_empirical = 0.0;
    report.positive = true;
    for (double r : radii) {
        if (!(r > 0.0 && r <= 0.5))
            throw std::domain_error("interior_lower_bound: radii must lie in (0, 1/2]");
        double v = std::pow(r, profile.n - 2) * profile.value(r);
        report.probes.emplace_back(r, v);
        report.c0_empirical = std::min(report.c0_empirical, v);
        report.C2_empirical = std::max(report.C2_empirical, v);
        if (!(v > 0.0)) report.positive = false;
    }
    return report;
}

double derivative_lower_bound(const RadialGreenProfile& profile,
                              std::span<const double> inner_radii) {
    if (inner_radii.empty())
        throw std::invalid_argument("derivative_lower_bound: empty radii list");
    double inf = std::numeric_limits<double>::infinity();
    for (double a : inner_radii) {
        if (!(a > 0.0 && a < 0.25))
            throw std::domain_error("derivative_lower_bound: radii must lie in (0, 1/4)");
        inf = std::min(inf, std::pow(a, profile.n - 1) * std::abs(profile.derivative(a)));
    }
    return inf;
}

UpperBoundResult upper_bound_status(std::span<const RadialGreenProfile> family,
                                    double r) {
    if (family.size() < 2)
        throw std::invalid_argument("upper_bound_status: need at least 2 profiles");
    UpperBoundResult out;
    out.C2_empirical = 0.0;
    for (const auto& p : family) {
        double v = std::pow(r, p.n - 2) * p.value(r);
        out.values.push_back(v);
        out.C2_empirical = std::max(out.C2_empirical, v);
    }
    out.status = (out.values.back() > 2.0 * out.values.front())
                     ? UpperBoundStatus::NoUniformUpper
                     : UpperBoundStatus::UniformUpper;
    return out;
}

nlohmann::json to_json(const BoundReport& report) {
    nlohmann::json spec_j;
    to_json(spec_j, report.spec);
    nlohmann::json probes = nlohmann::json::array();
    for (const auto& [r, v] : report.probes) probes.push_back({{"r", r}, {"value", v}});
    return nlohmann::json{{"spec", spec_j},
                          {"n", report.n},
                          {"c0_empirical", report.c0_empirical},
                          {"C2_empirical", report.C2_empirical},
                          {"derivative_c0", report.derivative_c0},
                          {"positive", report.positive},
                          {"probes", probes}};
}

}  // namespace greenlab
