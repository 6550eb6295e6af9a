#include "greenlab/verifier.hpp"

#include <cmath>
#include <stdexcept>

namespace greenlab {

RadialTestFunction bump(int k, double R) {
    RadialTestFunction tf;
    tf.id = "bump_k" + std::to_string(k) + "_R" + std::to_string(R).substr(0, 3);
    tf.phi = [k, R](double r) {
        if (r >= R) return 0.0;
        double t = 1.0 - (r / R) * (r / R);
        return std::pow(t, k);
    };
    tf.phi_prime = [k, R](double r) {
        if (r >= R) return 0.0;
        double t = 1.0 - (r / R) * (r / R);
        return -2.0 * k * r / (R * R) * std::pow(t, k - 1);
    };
    tf.phi_at_0 = 1.0;
    tf.support_radius = R;
    return tf;
}

RadialTestFunction plateau() {
    RadialTestFunction tf;
    tf.id = "plateau_0.4_0.7";
    const double a = 0.4, b = 0.7;
    tf.phi = [a, b](double r) {
        if (r <= a) return 1.0;
        if (r >= b) return 0.0;
        double t = (r - a) / (b - a);
        return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    };
    tf.phi_prime = [a, b](double r) {
        if (r <= a || r >= b) return 0.0;
        double t = (r - a) / (b - a);
        return -30.0 * t * t * (1.0 - t) * (1.0 - t) / (b - a);
    };
    tf.phi_at_0 = 1.0;
    tf.support_radius = b;
    return tf;
}

std::vector<RadialTestFunction> certified_family() {
    std::vector<RadialTestFunction> fam;
    for (int k : {2, 3, 4})
        for (double R : {0.3, 0.6, 0.8}) fam.push_back(bump(k, R));
    fam.push_back(plateau());
    return fam;
}

double identity_residual(const RadialGreenProfile& profile,
                         const RadialTestFunction& tf, const QuadratureConfig& q) {
    if (tf.support_radius >= 1.0)
        throw std::domain_error("identity_residual: test function must have compact support");
    const DriftSpec& spec = profile.spec;
    const int n = profile.n;
    const double omega = unit_sphere_area(n);
    // r^{n-1} G'(r) = scale * (-1/omega) e^{D(0,r)}: bounded on the support.
    auto integrand = [&](double r) {
        double rg = -profile.scale / omega * std::exp(drift_integral(spec, 0.0, r));
        double b = radial_component(spec, r);
        return rg * (tf.phi_prime(r) - b * tf.phi(r));
    };
    const double R = tf.support_radius;
    const double bp = spec.branch_point();
    double I = 0.0;
    if (bp > 0.0 && bp < R) {
        I += integrate(integrand, 0.0, bp, q);
        I += integrate(integrand, bp, R, q);
    } else {
        I = integrate(integrand, 0.0, R, q);
    }
    return omega * I - tf.phi_at_0;
}

double normalization_search(const DriftSpec& spec, int n, const QuadratureConfig& q) {
    RadialGreenProfile p;
    p.spec = spec;
    p.n = n;
    p.quad = q;
    p.flux_constant = -1.0 / unit_sphere_area(n);
    RadialTestFunction ref = bump(3, 0.6);
    double residual = identity_residual(p, ref, q);
    // R(lambda G) = lambda I - phi(0) with I the weak-form integral.
    double I = residual + ref.phi_at_0;
    return ref.phi_at_0 / I;
}

double w11_seminorm(const RadialGreenProfile& profile, const QuadratureConfig& q) {
    const double omega = unit_sphere_area(profile.n);
    auto f = [&](double r) {
        return std::exp(drift_integral(profile.spec, 0.0, r)) / omega;
    };
    const double bp = profile.spec.branch_point();
    double I = 0.0;
    if (bp > 0.0 && bp < 1.0) {
        I = integrate(f, 0.0, bp, q) + integrate(f, bp, 1.0, q);
    } else {
        I = integrate(f, 0.0, 1.0, q);
    }
    return profile.scale * I;
}

double w12_seminorm_outside(const RadialGreenProfile& profile, double s,
                            const QuadratureConfig& q) {
    if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("w12_seminorm_outside: s must lie in (0,1)");
    const int n = profile.n;
    auto f = [&](double r) {
        double gp = green_derivative(profile.spec, n, r);
        return gp * gp * std::pow(r, n - 1);
    };
    const double bp = profile.spec.branch_point();
    double I = 0.0;
    if (bp > s && bp < 1.0) {
        I = integrate(f, s, bp, q) + integrate(f, bp, 1.0, q);
    } else {
        I = integrate(f, s, 1.0, q);
    }
    return profile.scale * profile.scale * I;
}

VerificationReport verify_profile(const RadialGreenProfile& profile,
                                  const QuadratureConfig& q) {
    VerificationReport report;
    report.spec = profile.spec;
    report.n = profile.n;
    for (const auto& tf : certified_family()) {
        double r = identity_residual(profile, tf, q);
        report.residuals.emplace_back(tf.id, r);
        report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));
    }
    return report;
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json spec_j;
    to_json(spec_j, report.spec);
    nlohmann::json residuals = nlohmann::json::array();
    for (const auto& [id, r] : report.residuals)
        residuals.push_back({{"phi", id}, {"R", r}});
    return nlohmann::json{{"spec", spec_j},
                          {"n", report.n},
                          {"residuals", residuals},
                          {"max_abs_residual", report.max_abs_residual}};
}

}  // namespace greenlab
