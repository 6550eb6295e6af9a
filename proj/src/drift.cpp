#include "greenlab/drift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace greenlab {

std::string to_string(DriftFamily f) {
    switch (f) {
        case DriftFamily::TruncatedInverse: return "truncated_inverse";
        case DriftFamily::PowerRegularized: return "power_regularized";
        case DriftFamily::SmallConstant:    return "small_constant";
        case DriftFamily::Tabulated:        return "tabulated";
    }
    return "unknown";
}

static DriftFamily family_from_string(const std::string& s) {
    if (s == "truncated_inverse") return DriftFamily::TruncatedInverse;
    if (s == "power_regularized") return DriftFamily::PowerRegularized;
    if (s == "small_constant")    return DriftFamily::SmallConstant;
    if (s == "tabulated")         return DriftFamily::Tabulated;
    throw std::invalid_argument("unknown drift family: " + s);
}

DriftSpec DriftSpec::truncated_inverse(double C, int m) {
    DriftSpec s;
    s.family = DriftFamily::TruncatedInverse;
    s.C = C;
    s.m = m;
    s.validate();
    return s;
}

DriftSpec DriftSpec::power_regularized(double C, double beta) {
    DriftSpec s;
    s.family = DriftFamily::PowerRegularized;
    s.C = C;
    s.beta = beta;
    s.validate();
    return s;
}

DriftSpec DriftSpec::small_constant(double epsilon) {
    DriftSpec s;
    s.family = DriftFamily::SmallConstant;
    s.C = 0.0;
    s.epsilon = epsilon;
    s.validate();
    return s;
}

DriftSpec DriftSpec::tabulated(std::vector<double> r, std::vector<double> b) {
    DriftSpec s;
    s.family = DriftFamily::Tabulated;
    s.C = 0.0;
    s.tab_r = std::move(r);
    s.tab_b = std::move(b);
    s.validate();
    return s;
}

DriftSpec DriftSpec::zero() {
    return tabulated({0.0, 1.0}, {0.0, 0.0});
}

double DriftSpec::branch_point() const {
    if (family == DriftFamily::TruncatedInverse) return 1.0 - 1.0 / m;
    return 1.0;
}

double DriftSpec::nominal_bound() const {
    switch (family) {
        case DriftFamily::TruncatedInverse:
        case DriftFamily::PowerRegularized:
            return C;
        case DriftFamily::SmallConstant:
            return epsilon;
        case DriftFamily::Tabulated: {
            double sup = 0.0;
            for (size_t i = 0; i < tab_r.size(); ++i)
                sup = std::max(sup, (1.0 - tab_r[i]) * std::abs(tab_b[i]));
            return sup;
        }
    }
    return 0.0;
}

void DriftSpec::validate() const {
    switch (family) {
        case DriftFamily::TruncatedInverse:
            if (!(C > 0.0)) throw std::invalid_argument("DriftSpec: C must be > 0");
            if (m < 3) throw std::invalid_argument("DriftSpec: m must be >= 3");
            break;
        case DriftFamily::PowerRegularized:
            if (!(C > 0.0)) throw std::invalid_argument("DriftSpec: C must be > 0");
            if (!(beta > 0.0 && beta < 1.0))
                throw std::invalid_argument("DriftSpec: beta must lie in (0,1)");
            break;
        case DriftFamily::SmallConstant:
            if (!(epsilon > 0.0))
                throw std::invalid_argument("DriftSpec: epsilon must be > 0");
            break;
        case DriftFamily::Tabulated: {
            if (tab_r.size() < 2 || tab_r.size() != tab_b.size())
                throw std::invalid_argument("DriftSpec: tabulated mesh needs >= 2 matched nodes");
            if (tab_r.front() != 0.0 || tab_r.back() != 1.0)
                throw std::invalid_argument("DriftSpec: tabulated mesh must span [0,1]");
            for (size_t i = 1; i < tab_r.size(); ++i)
                if (!(tab_r[i] > tab_r[i - 1]))
                    throw std::invalid_argument("DriftSpec: tabulated radii must increase");
            for (double b : tab_b)
                if (b > 0.0)
                    throw std::invalid_argument("DriftSpec: drift must point inward (b <= 0)");
            break;
        }
    }
}

void to_json(nlohmann::json& j, const DriftSpec& spec) {
    j = nlohmann::json{{"family", to_string(spec.family)}};
    switch (spec.family) {
        case DriftFamily::TruncatedInverse:
            j["C"] = spec.C;
            j["m"] = spec.m;
            break;
        case DriftFamily::PowerRegularized:
            j["C"] = spec.C;
            j["beta"] = spec.beta;
            break;
        case DriftFamily::SmallConstant:
            j["epsilon"] = spec.epsilon;
            break;
        case DriftFamily::Tabulated:
            j["r"] = spec.tab_r;
            j["b"] = spec.tab_b;
            break;
    }
}

void from_json(const nlohmann::json& j, DriftSpec& spec) {
    static const std::vector<std::string> known = {"family", "C", "m", "beta",
                                                   "epsilon", "r", "b"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw std::invalid_argument("DriftSpec: unknown field '" + it.key() + "'");
    }
    spec = DriftSpec{};
    spec.family = family_from_string(j.at("family").get<std::string>());
    switch (spec.family) {
        case DriftFamily::TruncatedInverse:
            spec.C = j.at("C").get<double>();
            spec.m = j.at("m").get<int>();
            break;
        case DriftFamily::PowerRegularized:
            spec.C = j.at("C").get<double>();
            spec.beta = j.at("beta").get<double>();
            break;
        case DriftFamily::SmallConstant:
            spec.epsilon = j.at("epsilon").get<double>();
            break;
        case DriftFamily::Tabulated:
            spec.tab_r = j.at("r").get<std::vector<double>>();
            spec.tab_b = j.at("b").get<std::vector<double>>();
            break;
    }
    spec.validate();
}

double radial_component(const DriftSpec& spec, double r) {
    if (!(r >= 0.0 && r < 1.0))
        throw std::domain_error("radial_component: r must lie in [0,1)");
    switch (spec.family) {
        case DriftFamily::TruncatedInverse:
            if (r <= spec.branch_point()) return -spec.C / (1.0 - r);
            return -spec.C * spec.m;
        case DriftFamily::PowerRegularized:
            return -spec.C / std::pow(1.0 - r, 1.0 - spec.beta);
        case DriftFamily::SmallConstant:
            return -spec.epsilon / (1.0 - r);
        case DriftFamily::Tabulated: {
            auto it = std::upper_bound(spec.tab_r.begin(), spec.tab_r.end(), r);
            size_t hi = std::min<size_t>(it - spec.tab_r.begin(), spec.tab_r.size() - 1);
            size_t lo = hi - 1;
            double t = (r - spec.tab_r[lo]) / (spec.tab_r[hi] - spec.tab_r[lo]);
            return spec.tab_b[lo] + t * (spec.tab_b[hi] - spec.tab_b[lo]);
        }
    }
    return 0.0;
}

// Exact integral of -b over [a,r] for a single tabulated segment mesh:
// b is piecewise linear, so the trapezoid rule per (sub)segment is exact.
static double tabulated_integral(const DriftSpec& spec, double a, double r) {
    double sum = 0.0;
    const auto& xs = spec.tab_r;
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        double lo = std::max(a, xs[i]);
        double hi = std::min(r, xs[i + 1]);
        if (hi <= lo) continue;
        double t0 = (lo - xs[i]) / (xs[i + 1] - xs[i]);
        double t1 = (hi - xs[i]) / (xs[i + 1] - xs[i]);
        double b0 = spec.tab_b[i] + t0 * (spec.tab_b[i + 1] - spec.tab_b[i]);
        double b1 = spec.tab_b[i] + t1 * (spec.tab_b[i + 1] - spec.tab_b[i]);
        sum += -0.5 * (b0 + b1) * (hi - lo);
    }
    return sum;
}

double drift_integral(const DriftSpec& spec, double a, double r) {
    if (!(a >= 0.0) || !(r <= 1.0) || a > r)
        throw std::domain_error("drift_integral: need 0 <= a <= r <= 1");
    if (a == r) return 0.0;
    switch (spec.family) {
        case DriftFamily::TruncatedInverse: {
            const double s = spec.branch_point();
            if (r <= s) return spec.C * std::log((1.0 - a) / (1.0 - r));
            if (a >= s) return spec.C * spec.m * (r - a);
            // spanning the branch: C log(m(1-a)) + Cm(r - 1 + 1/m)
            return spec.C * std::log(spec.m * (1.0 - a)) + spec.C * spec.m * (r - s);
        }
        case DriftFamily::PowerRegularized:
            return (spec.C / spec.beta) *
                   (std::pow(1.0 - a, spec.beta) - std::pow(1.0 - r, spec.beta));
        case DriftFamily::SmallConstant:
            if (r >= 1.0)
                throw std::domain_error("drift_integral: divergent at r = 1 for small_constant");
            return spec.epsilon * std::log((1.0 - a) / (1.0 - r));
        case DriftFamily::Tabulated:
            return tabulated_integral(spec, a, r);
    }
    return 0.0;
}

LimitingBoundCheck limiting_bound_holds(const DriftSpec& spec,
                                        std::span<const double> grid) {
    LimitingBoundCheck out;
    for (double r : grid)
        out.sup = std::max(out.sup, (1.0 - r) * std::abs(radial_component(spec, r)));
    out.holds = out.sup <= spec.nominal_bound() * (1.0 + 1e-12) + 1e-300;
    return out;
}

}  // namespace greenlab
