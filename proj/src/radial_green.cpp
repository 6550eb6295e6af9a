#include "greenlab/radial_green.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace greenlab {

double unit_sphere_area(int n) {
    if (n < 2) throw std::domain_error("unit_sphere_area: n must be >= 2");
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double green_derivative(const DriftSpec& spec, int n, double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("green_derivative: r must lie in (0,1)");
    if (n < 3) throw std::domain_error("green_derivative: n must be >= 3");
    const double exponent = drift_integral(spec, 0.0, r) -
                            (n - 1) * std::log(r) -
                            std::log(unit_sphere_area(n));
    if (!(exponent < 700.0))
        throw std::logic_error("green_derivative: exponent overflow (log-space contract violated)");
    return -std::exp(exponent);
}

double green_value(const DriftSpec& spec, int n, double r, const QuadratureConfig& q) {
    if (!(r > 0.0 && r <= 1.0))
        throw std::domain_error("green_value: r must lie in (0,1]");
    if (r == 1.0) return 0.0;
    auto integrand = [&](double s) { return -green_derivative(spec, n, s); };
    const double bp = spec.branch_point();
    double total = 0.0;
    if (bp > r && bp < 1.0) {
        total += integrate(integrand, r, bp, q);
        total += integrate(integrand, bp, 1.0, q);
    } else {
        total = integrate(integrand, r, 1.0, q);
    }
    return total;
}

RadialGreenProfile RadialGreenProfile::with_scale(double lambda) const {
    RadialGreenProfile p = *this;
    p.scale *= lambda;
    for (auto& g : p.G) g *= lambda;
    for (auto& gp : p.Gprime) gp *= lambda;
    p.flux_constant *= lambda;
    return p;
}

double RadialGreenProfile::value(double r) const {
    return scale * green_value(spec, n, r, quad);
}

double RadialGreenProfile::derivative(double r) const {
    return scale * green_derivative(spec, n, r);
}

static std::vector<double> graded_mesh(const DriftSpec& spec, int mesh_size, double gamma) {
    std::vector<double> mesh;
    const int lower = mesh_size / 2;
    const int upper = mesh_size - lower;
    // log-spaced toward the pole
    const double r_min = 1e-3;
    for (int j = 0; j < lower; ++j) {
        double t = static_cast<double>(j) / (lower - 1);
        mesh.push_back(r_min * std::pow(0.5 / r_min, t));
    }
    // power-graded toward the boundary: 1 - r = 0.5 u^gamma
    for (int j = 1; j <= upper; ++j) {
        double u = static_cast<double>(j) / (upper + 1);
        mesh.push_back(1.0 - 0.5 * std::pow(u, gamma));
    }
    // boundary layer of the truncated family always carries >= 20 points
    if (spec.family == DriftFamily::TruncatedInverse) {
        const double bp = spec.branch_point();
        mesh.push_back(bp);
        for (int k = 1; k <= 24; ++k)
            mesh.push_back(1.0 - (1.0 - bp) * k / 25.0);
    }
    mesh.push_back(1.0);
    std::sort(mesh.begin(), mesh.end());
    mesh.erase(std::unique(mesh.begin(), mesh.end(),
                           [](double a, double b) { return b - a < 1e-15; }),
               mesh.end());
    return mesh;
}

RadialGreenProfile build_profile(const DriftSpec& spec, int n, int mesh_size,
                                 const QuadratureConfig& q) {
    if (mesh_size < 16)
        throw std::invalid_argument("build_profile: mesh_size must be >= 16");
    q.validate();
    RadialGreenProfile p;
    p.spec = spec;
    p.n = n;
    p.quad = q;
    p.mesh = graded_mesh(spec, mesh_size, q.boundary_grading);
    const size_t M = p.mesh.size();
    p.G.assign(M, 0.0);
    p.Gprime.assign(M, 0.0);
    for (size_t i = 0; i < M; ++i) {
        double r = p.mesh[i];
        if (r < 1.0) {
            p.Gprime[i] = green_derivative(spec, n, r);
        } else {
            try {
                p.Gprime[i] = -std::exp(drift_integral(spec, 0.0, 1.0)) /
                              unit_sphere_area(n);
            } catch (const std::domain_error&) {
                // families whose drift integral diverges at the boundary
                p.Gprime[i] = -std::numeric_limits<double>::infinity();
            }
        }
    }
    auto integrand = [&](double s) { return -green_derivative(spec, n, s); };
    for (size_t i = M - 1; i-- > 0;)
        p.G[i] = p.G[i + 1] + integrate(integrand, p.mesh[i], p.mesh[i + 1], q);
    p.flux_constant = -1.0 / unit_sphere_area(n);
    return p;
}

void write_profile_csv(const RadialGreenProfile& profile, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_profile_csv: cannot open " + path);
    std::fprintf(f, "r,G,Gprime\n");
    for (size_t i = profile.mesh.size(); i-- > 0;)
        std::fprintf(f, "%.17g,%.17g,%.17g\n", profile.mesh[i], profile.G[i],
                     profile.Gprime[i]);
    std::fclose(f);
}

}  // namespace greenlab
