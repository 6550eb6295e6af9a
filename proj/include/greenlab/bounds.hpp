#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "greenlab/radial_green.hpp"

namespace greenlab {

struct BoundReport {
    DriftSpec spec;
    int n = 3;
    double c0_empirical = 0.0;     // inf over probes of r^{n-2} G(r)
    double C2_empirical = 0.0;     // sup over probes of r^{n-2} G(r)
    double derivative_c0 = 0.0;    // inf over probes of a^{n-1} |G'(a)|
    std::vector<std::pair<double, double>> probes;  // (r, r^{n-2} G(r))
    bool positive = false;         // every probe gave a positive product
};

/// Probes r^{n-2} G(r) over radii in (0, 1/2]; the interior lower bound holds
/// with an m-uniform constant, reported empirically.
BoundReport interior_lower_bound(const RadialGreenProfile& profile,
                                 std::span<const double> radii);

/// min over inner radii (subset of (0, 1/4)) of a^{n-1} |G'(a)|.
double derivative_lower_bound(const RadialGreenProfile& profile,
                              std::span<const double> inner_radii);

enum class UpperBoundStatus { UniformUpper, NoUniformUpper };

struct UpperBoundResult {
    UpperBoundStatus status;
    double C2_empirical;                 // sup over the family of r^{n-2} G(r)
    std::vector<double> values;          // per-profile r^{n-2} G(r), family order
};

/// Across an m-sweep of profiles sharing (C, n): NoUniformUpper when
/// r^{n-2} G_m(r) at r = 1/2 more than doubles from first to last.
UpperBoundResult upper_bound_status(std::span<const RadialGreenProfile> family,
                                    double r = 0.5);

nlohmann::json to_json(const BoundReport& report);

}  // namespace greenlab
