#pragma once

#include <functional>
#include <stdexcept>

namespace greenlab {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 10000;
    double boundary_grading = 3.0;  // mesh points cluster as 1 - u^gamma near r = 1

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
        if (boundary_grading < 1.0)
            throw std::invalid_argument("QuadratureConfig: grading must be >= 1");
    }
};

/// Thrown when the adaptive scheme exhausts its subdivision budget.
struct QuadratureFailure : std::runtime_error {
    double achieved_error;
    QuadratureFailure(const std::string& what, double err)
        : std::runtime_error(what), achieved_error(err) {}
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a,b].  All nodes are interior, so
/// integrable endpoint singularities are tolerated.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& q);

}  // namespace greenlab
