#pragma once

#include <string>
#include <vector>

#include "greenlab/drift.hpp"
#include "greenlab/quadrature.hpp"

namespace greenlab {

/// Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

/// G'(r) for the radial Green's function with pole at the origin,
/// normalized so that r^{n-1} G'(r) -> -1/omega_{n-1} as r -> 0.
/// Evaluated in log space: G'(r) = -exp(D(0,r) - (n-1) log r - log omega).
double green_derivative(const DriftSpec& spec, int n, double r);

/// G(r) = int_r^1 (-G'(s)) ds by adaptive quadrature, split at the drift
/// branch point.  G(1) = 0 exactly.
double green_value(const DriftSpec& spec, int n, double r, const QuadratureConfig& q);

/// Tabulated G, G' on a mesh graded toward both r = 0 and r = 1.
struct RadialGreenProfile {
    DriftSpec spec;
    int n = 3;
    std::vector<double> mesh;    // ascending radii in (0, 1]
    std::vector<double> G;       // Green's values on mesh
    std::vector<double> Gprime;  // derivative values on mesh
    double flux_constant = 0.0;  // r^{n-1} G'(r) e^{-D(0,r)}, = -1/omega_{n-1}
    double scale = 1.0;          // diagnostic rescaling knob (1 = physical)
    QuadratureConfig quad;

    RadialGreenProfile with_scale(double lambda) const;

    double value(double r) const;       // scale * green_value
    double derivative(double r) const;  // scale * green_derivative
};

RadialGreenProfile build_profile(const DriftSpec& spec, int n, int mesh_size,
                                 const QuadratureConfig& q);

/// CSV "r,G,Gprime", strictly decreasing r, 17 significant digits.
void write_profile_csv(const RadialGreenProfile& profile, const std::string& path);

}  // namespace greenlab
