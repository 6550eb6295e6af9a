#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace greenlab {

enum class DriftFamily {
    TruncatedInverse,  // -C/(1-r) frozen at -Cm past r = 1 - 1/m
    PowerRegularized,  // -C/(1-r)^{1-beta}
    SmallConstant,     // -eps/(1-r)
    Tabulated          // piecewise-linear b(r) on a mesh
};

std::string to_string(DriftFamily f);

/// Parametric radial drift B(x) = b(|x|) x_hat, with b <= 0 (inward) on [0,1).
struct DriftSpec {
    DriftFamily family = DriftFamily::TruncatedInverse;
    double C = 1.0;        // strength constant
    int m = 0;             // truncation level (TruncatedInverse)
    double beta = 0.0;     // regularization exponent (PowerRegularized)
    double epsilon = 0.0;  // small-drift constant (SmallConstant)
    std::vector<double> tab_r, tab_b;  // Tabulated nodes, ascending r in [0,1]

    static DriftSpec truncated_inverse(double C, int m);
    static DriftSpec power_regularized(double C, double beta);
    static DriftSpec small_constant(double epsilon);
    static DriftSpec tabulated(std::vector<double> r, std::vector<double> b);
    static DriftSpec zero();  // Tabulated with b identically 0

    /// Radius where the truncated family switches branch, 1 - 1/m;
    /// families without a branch point return 1.
    double branch_point() const;

    /// The constant the family nominally keeps (1-r)|b(r)| below.
    double nominal_bound() const;

    void validate() const;  // throws std::invalid_argument
};

void to_json(nlohmann::json& j, const DriftSpec& spec);
void from_json(const nlohmann::json& j, DriftSpec& spec);  // rejects unknown fields

/// Signed radial component b(r) = B . r_hat.  Requires 0 <= r < 1.
double radial_component(const DriftSpec& spec, double r);

/// D(a,r) = -int_a^r b(t) dt >= 0, in closed form per family and branch.
/// Requires 0 <= a <= r <= 1; r = 1 only where the integral is finite
/// (TruncatedInverse, PowerRegularized, Tabulated).
double drift_integral(const DriftSpec& spec, double a, double r);

struct LimitingBoundCheck {
    double sup = 0.0;  // sup over the grid of (1-r)|b(r)|
    bool holds = false;
};

LimitingBoundCheck limiting_bound_holds(const DriftSpec& spec,
                                        std::span<const double> grid);

}  // namespace greenlab
