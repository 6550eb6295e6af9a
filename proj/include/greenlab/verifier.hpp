#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenlab/radial_green.hpp"

namespace greenlab {

/// Smooth radial test function with compact support strictly inside the ball.
struct RadialTestFunction {
    std::string id;
    std::function<double(double)> phi;
    std::function<double(double)> phi_prime;
    double phi_at_0 = 0.0;
    double support_radius = 0.0;  // smallest R with phi == 0 on [R, 1]
};

/// Polynomial bump (1 - (r/R)^2)^k supported on [0, R].
RadialTestFunction bump(int k, double R);

/// Plateau: 1 on [0, 0.4], quintic smoothstep decay to 0 at 0.7.
RadialTestFunction plateau();

/// The fixed certified family: bumps k in {2,3,4} x R in {0.3, 0.6, 0.8},
/// plus the plateau.
std::vector<RadialTestFunction> certified_family();

/// Residual of the weak Green's identity against tf:
///   R = omega_{n-1} int_0^1 r^{n-1} G'(r) (phi'(r) - b(r) phi(r)) dr - phi(0).
/// Vanishes exactly for a correctly normalized profile; a profile scaled by
/// lambda returns (lambda - 1) phi(0).
double identity_residual(const RadialGreenProfile& profile,
                         const RadialTestFunction& tf, const QuadratureConfig& q);

/// Scalar lambda that would zero the residual for the reference test
/// function; equals 1 under the flux normalization.
double normalization_search(const DriftSpec& spec, int n, const QuadratureConfig& q);

/// Finite quadrature surrogates for the Sobolev membership claims:
/// int_0^1 |G'| r^{n-1} dr  and  int_s^1 |G'|^2 r^{n-1} dr.
double w11_seminorm(const RadialGreenProfile& profile, const QuadratureConfig& q);
double w12_seminorm_outside(const RadialGreenProfile& profile, double s,
                            const QuadratureConfig& q);

struct VerificationReport {
    DriftSpec spec;
    int n = 3;
    std::vector<std::pair<std::string, double>> residuals;  // (phi id, R)
    double max_abs_residual = 0.0;
};

VerificationReport verify_profile(const RadialGreenProfile& profile,
                                  const QuadratureConfig& q);

nlohmann::json to_json(const VerificationReport& report);

}  // namespace greenlab
