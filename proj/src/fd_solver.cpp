#include "greenlab/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace greenlab {

BallGrid::BallGrid(int N_) {
    if (N_ < 5 || N_ % 2 == 0)
        throw std::invalid_argument("BallGrid: N must be odd and >= 5");
    N = N_;
    h = 2.0 / (N - 1);
    row_of.assign(static_cast<size_t>(N) * N * N, -1);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) {
                auto x = point(i, j, k);
                double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                if (r2 < 1.0) {
                    row_of[flat(i, j, k)] = static_cast<int>(node_of.size());
                    node_of.push_back(flat(i, j, k));
                    coords.push_back(x);
                }
            }
}

void CsrMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int idx = row_ptr[r]; idx < row_ptr[r + 1]; ++idx)
            s += val[idx] * x[col[idx]];
        y[r] = s;
    }
}

std::array<double, 3> drift_vector(const DriftSpec& spec, std::array<double, 3> x) {
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r == 0.0) return {0.0, 0.0, 0.0};
    double b = radial_component(spec, r);
    return {b * x[0] / r, b * x[1] / r, b * x[2] / r};
}

namespace {

bool bounded_drift(const DriftSpec& spec) {
    return spec.family == DriftFamily::TruncatedInverse ||
           spec.family == DriftFamily::Tabulated;
}

// Matrix for -Laplace u + w . grad u with w = -b(|x|) x_hat, the convection
// field matching the radial integrating-factor reduction.  First-order upwind
// per component: w_d > 0 takes the inward neighbor.
CsrMatrix assemble_matrix(const DriftSpec& spec, const BallGrid& grid) {
    const int N = grid.N;
    const double h = grid.h;
    const double inv_h2 = 1.0 / (h * h);
    CsrMatrix A;
    A.n = grid.rows();
    A.row_ptr.reserve(A.n + 1);
    A.row_ptr.push_back(0);
    for (int row = 0; row < A.n; ++row) {
        int node = grid.node_of[row];
        int k = node % N, j = (node / N) % N, i = node / (N * N);
        auto x = grid.coords[row];
        double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        std::array<double, 3> w = {0.0, 0.0, 0.0};
        if (r > 0.0) {
            double b = radial_component(spec, r);
            for (int d = 0; d < 3; ++d) w[d] = -b * x[d] / r;
        }
        const int di[3] = {N * N, N, 1};
        const int idx3[3] = {i, j, k};
        double diag = 6.0 * inv_h2;
        std::vector<std::pair<int, double>> entries;
        for (int d = 0; d < 3; ++d) {
            int minus = (idx3[d] > 0) ? grid.row_of[node - di[d]] : -1;
            int plus = (idx3[d] < N - 1) ? grid.row_of[node + di[d]] : -1;
            double cm = -inv_h2, cp = -inv_h2;
            if (w[d] > 0.0) {  // upwind on the inward side
                diag += w[d] / h;
                cm -= w[d] / h;
            } else if (w[d] < 0.0) {
                diag += -w[d] / h;
                cp += w[d] / h;
            }
            if (minus >= 0) entries.emplace_back(minus, cm);
            if (plus >= 0) entries.emplace_back(plus, cp);
        }
        entries.emplace_back(row, diag);
        std::sort(entries.begin(), entries.end());
        for (auto& [c, v] : entries) {
            A.col.push_back(c);
            A.val.push_back(v);
        }
        A.row_ptr.push_back(static_cast<int>(A.col.size()));
    }
    return A;
}

}  // namespace

FdSystem assemble(const DriftSpec& spec, const BallGrid& grid, double rho) {
    if (!bounded_drift(spec))
        throw std::invalid_argument("assemble: drift must be bounded on the closed ball");
    if (rho < 2.0 * grid.h)
        throw std::invalid_argument("assemble: mollifier radius must be >= 2h");
    FdSystem sys{grid, assemble_matrix(spec, grid), {}, rho, spec, false};
    if (spec.family == DriftFamily::TruncatedInverse &&
        spec.m > 0.5 / (spec.C * grid.h))
        sys.peclet_warning = true;
    const double vol = 4.0 / 3.0 * M_PI * rho * rho * rho;
    sys.rhs.assign(grid.rows(), 0.0);
    double mass = 0.0;
    const double h3 = grid.h * grid.h * grid.h;
    for (int row = 0; row < grid.rows(); ++row) {
        auto x = grid.coords[row];
        double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        if (r2 < rho * rho) {
            sys.rhs[row] = 1.0 / vol;
            mass += h3 / vol;
        }
    }
    if (mass <= 0.0) throw std::runtime_error("assemble: empty mollifier support");
    for (auto& f : sys.rhs) f /= mass;  // exact unit discrete mass
    return sys;
}

SolveResult solve(const FdSystem& system, double tol, int max_iter) {
    const CsrMatrix& A = system.matrix;
    const std::vector<double>& b = system.rhs;
    const int n = A.n;
    std::vector<double> diag(n, 1.0);
    for (int r = 0; r < n; ++r)
        for (int idx = A.row_ptr[r]; idx < A.row_ptr[r + 1]; ++idx)
            if (A.col[idx] == r) diag[r] = A.val[idx];

    auto dot = [n](const std::vector<double>& a, const std::vector<double>& c) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += a[i] * c[i];
        return s;
    };
    auto norm = [&](const std::vector<double>& a) { return std::sqrt(dot(a, a)); };

    std::vector<double> x(n, 0.0), r(b), r0(b), p(n, 0.0), v(n, 0.0);
    std::vector<double> s(n), t(n), phat(n), shat(n), tmp(n);
    const double bnorm = norm(b);
    if (bnorm == 0.0) return {x, 0, 0.0};
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    double rnorm = norm(r);
    int it = 0;
    while (rnorm / bnorm > tol) {
        if (++it > max_iter) {
            throw std::runtime_error("solve: BiCGSTAB failed to converge, residual " +
                                     std::to_string(rnorm / bnorm));
        }
        double rho_new = dot(r0, r);
        if (rho_new == 0.0)
            throw std::runtime_error("solve: BiCGSTAB breakdown (rho = 0)");
        if (it == 1) {
            p = r;
        } else {
            double beta = (rho_new / rho) * (alpha / omega);
            for (int i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        rho = rho_new;
        for (int i = 0; i < n; ++i) phat[i] = p[i] / diag[i];
        A.apply(phat, v);
        alpha = rho / dot(r0, v);
        for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (norm(s) / bnorm <= tol) {
            for (int i = 0; i < n; ++i) x[i] += alpha * phat[i];
            r = s;
            rnorm = norm(r);
            break;
        }
        for (int i = 0; i < n; ++i) shat[i] = s[i] / diag[i];
        A.apply(shat, t);
        double tt = dot(t, t);
        if (tt == 0.0)
            throw std::runtime_error("solve: BiCGSTAB breakdown (t = 0)");
        omega = dot(t, s) / tt;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * phat[i] + omega * shat[i];
            r[i] = s[i] - omega * t[i];
        }
        rnorm = norm(r);
    }
    return {std::move(x), it, rnorm / bnorm};
}

double radial_symmetry_deviation(const std::vector<double>& u, const BallGrid& grid,
                                 double rho) {
    const double h = grid.h;
    const int nbins = static_cast<int>(1.0 / h) + 2;
    std::vector<double> lo(nbins, 1e300), hi(nbins, -1e300), sum(nbins, 0.0);
    std::vector<int> cnt(nbins, 0);
    for (int row = 0; row < grid.rows(); ++row) {
        auto x = grid.coords[row];
        double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        if (r < std::max(2.0 * rho, 0.15)) continue;
        if (r > 1.0 - std::max(5.0 * h, 0.2)) continue;
        int b = static_cast<int>(r / h);
        lo[b] = std::min(lo[b], u[row]);
        hi[b] = std::max(hi[b], u[row]);
        sum[b] += u[row];
        ++cnt[b];
    }
    double dev = 0.0;
    for (int b = 0; b < nbins; ++b) {
        if (cnt[b] < 2) continue;
        double mean = sum[b] / cnt[b];
        if (mean <= 0.0) continue;
        dev = std::max(dev, (hi[b] - lo[b]) / mean);
    }
    return dev;
}

ShellProfile shell_average(const std::vector<double>& u, const BallGrid& grid) {
    const double h = grid.h;
    const int nbins = static_cast<int>(1.0 / h) + 2;
    std::vector<double> sum(nbins, 0.0);
    std::vector<int> cnt(nbins, 0);
    for (int row = 0; row < grid.rows(); ++row) {
        auto x = grid.coords[row];
        double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        int b = static_cast<int>(r / h);
        sum[b] += u[row];
        ++cnt[b];
    }
    ShellProfile prof;
    for (int b = 0; b < nbins; ++b) {
        if (cnt[b] == 0) continue;
        prof.r.push_back((b + 0.5) * h);
        prof.mean.push_back(sum[b] / cnt[b]);
    }
    return prof;
}

double radial_comparator(const DriftSpec& spec, double rho, double r,
                         const QuadratureConfig& q) {
    auto mass_inside = [&](double s) {
        double cap = std::min(s, rho);
        double I = integrate(
            [&](double t) {
                return t * t * std::exp(-drift_integral(spec, 0.0, t));
            },
            0.0, cap, q);
        return 3.0 / (rho * rho * rho) * I;
    };
    if (r >= rho) {
        // outside the source the solution is the Green's profile scaled by
        // the drift-weighted source mass
        return mass_inside(rho) * green_value(spec, 3, r, q);
    }
    auto outer = [&](double s) {
        return mass_inside(s) * std::exp(drift_integral(spec, 0.0, s)) / (s * s);
    };
    const double bp = spec.branch_point();
    double I = 0.0;
    if (bp > r && bp < 1.0) {
        I = integrate(outer, r, bp, q) + integrate(outer, bp, 1.0, q);
    } else {
        I = integrate(outer, r, 1.0, q);
    }
    return I / unit_sphere_area(3);
}

double discrete_flux_balance(const FdSystem& system, const std::vector<double>& u,
                             double shell_radius) {
    const BallGrid& grid = system.grid;
    const int N = grid.N;
    const double h = grid.h;
    auto radius = [&](int node) {
        int k = node % N, j = (node / N) % N, i = node / (N * N);
        auto x = grid.point(i, j, k);
        return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    };
    auto u_at = [&](int node) {
        int row = grid.row_of[node];
        return row >= 0 ? u[row] : 0.0;
    };
    const int di[3] = {N * N, N, 1};
    double diffusive = 0.0, convective = 0.0;
    for (int row = 0; row < grid.rows(); ++row) {
        int node = grid.node_of[row];
        double r = radius(node);
        if (r >= shell_radius) continue;
        int k = node % N, j = (node / N) % N, i = node / (N * N);
        const int idx3[3] = {i, j, k};
        auto x = grid.coords[row];
        // one-sided diffusive flux across faces leaving the shell
        for (int d = 0; d < 3; ++d) {
            for (int sgn : {-1, +1}) {
                if (idx3[d] + sgn < 0 || idx3[d] + sgn > N - 1) continue;
                int nb = node + sgn * di[d];
                if (radius(nb) < shell_radius) continue;
                diffusive += (u[row] - u_at(nb)) / h * h * h;
            }
        }
        // centered convective volume term w . grad u
        if (r > 0.0) {
            double b = radial_component(system.spec, r);
            for (int d = 0; d < 3; ++d) {
                double w = -b * x[d] / r;
                double up = (idx3[d] < N - 1) ? u_at(node + di[d]) : 0.0;
                double um = (idx3[d] > 0) ? u_at(node - di[d]) : 0.0;
                convective += w * (up - um) / (2.0 * h) * h * h * h;
            }
        }
    }
    return diffusive + convective;
}

std::vector<BlowupRow> poisson_blowup_experiment(double C, const std::vector<int>& m_list,
                                                 int N, double center, double f_radius,
                                                 double tol) {
    BallGrid grid(N);
    int origin_row = grid.row_of[grid.flat((N - 1) / 2, (N - 1) / 2, (N - 1) / 2)];
    std::vector<BlowupRow> rows;
    for (int m : m_list) {
        DriftSpec spec = DriftSpec::truncated_inverse(C, m);
        FdSystem sys{grid, {}, {}, 0.0, spec, false};
        sys.matrix = assemble(spec, grid, 2.0 * grid.h).matrix;
        sys.rhs.assign(grid.rows(), 0.0);
        for (int row = 0; row < grid.rows(); ++row) {
            auto x = grid.coords[row];
            double dx = x[0] - center;
            if (dx * dx + x[1] * x[1] + x[2] * x[2] < f_radius * f_radius)
                sys.rhs[row] = 1.0;
        }
        auto res = solve(sys, tol);
        rows.push_back({m, res.u[origin_row], res.iterations});
    }
    return rows;
}

double blowup_comparator(const DriftSpec& spec, double center, double f_radius,
                         const QuadratureConfig& q) {
    const double d = center, rc = f_radius;
    auto cap_area = [&](double s) {
        double cth = (s * s + d * d - rc * rc) / (2.0 * s * d);
        cth = std::clamp(cth, -1.0, 1.0);
        return 2.0 * M_PI * s * s * (1.0 - cth);
    };
    auto f = [&](double s) { return green_value(spec, 3, s, q) * cap_area(s); };
    return integrate(f, d - rc, d + rc, q);
}

void write_solution_csv(const std::vector<double>& u, const BallGrid& grid,
                        const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_solution_csv: cannot open " + path);
    std::fprintf(f, "x,y,z,u\n");
    for (int row = 0; row < grid.rows(); ++row) {
        auto x = grid.coords[row];
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", x[0], x[1], x[2], u[row]);
    }
    std::fclose(f);
}

nlohmann::json fd_summary(const FdSystem& system, const SolveResult& result,
                          double symmetry_deviation) {
    nlohmann::json spec_j;
    to_json(spec_j, system.spec);
    return nlohmann::json{{"N", system.grid.N},
                          {"h", system.grid.h},
                          {"rho", system.mollifier_radius},
                          {"spec", spec_j},
                          {"iters", result.iterations},
                          {"residual", result.residual},
                          {"symmetry_deviation", symmetry_deviation},
                          {"peclet_warning", system.peclet_warning}};
}

}  // namespace greenlab
