#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenlab/radial_green.hpp"

namespace greenlab {

/// Uniform Cartesian grid on [-1,1]^3 with the origin on a node (N odd).
struct BallGrid {
    int N = 0;      // points per axis
    double h = 0.0; // spacing, 2/(N-1)
    std::vector<int> row_of;     // node -> interior row index, or -1
    std::vector<int> node_of;    // row -> flat node index
    std::vector<std::array<double, 3>> coords;  // per row

    explicit BallGrid(int N);

    int flat(int i, int j, int k) const { return (i * N + j) * N + k; }
    std::array<double, 3> point(int i, int j, int k) const {
        return {-1.0 + h * i, -1.0 + h * j, -1.0 + h * k};
    }
    int rows() const { return static_cast<int>(node_of.size()); }
};

/// Compressed sparse row, non-symmetric.
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr, col;
    std::vector<double> val;

    void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

struct FdSystem {
    BallGrid grid;
    CsrMatrix matrix;
    std::vector<double> rhs;
    double mollifier_radius = 0.0;
    DriftSpec spec;
    bool peclet_warning = false;  // heuristic m > 0.5/(C h) guard tripped
};

/// Drift field B(x) = b(|x|) x_hat at a point (zero at the origin).
std::array<double, 3> drift_vector(const DriftSpec& spec, std::array<double, 3> x);

/// 7-point Laplacian plus first-order upwind convection, Dirichlet zero at
/// the first exterior node; rhs is the mollified delta 1_{B(0,rho)}/|B(0,rho)|,
/// renormalized to exact unit discrete mass.
FdSystem assemble(const DriftSpec& spec, const BallGrid& grid, double rho);

struct SolveResult {
    std::vector<double> u;
    int iterations = 0;
    double residual = 0.0;
};

/// Jacobi-preconditioned BiCGSTAB to relative residual <= tol.
SolveResult solve(const FdSystem& system, double tol = 1e-8, int max_iter = 5000);

/// Max over radial bins of (max-min)/mean, excluding the pole shells
/// (|x| < max(2 rho, 0.15)) and the boundary staircase
/// (|x| > 1 - max(5h, 0.2)).
double radial_symmetry_deviation(const std::vector<double>& u, const BallGrid& grid,
                                 double rho);

/// Shell-averaged u at bin centers (bin width h); bins with no nodes skipped.
struct ShellProfile {
    std::vector<double> r;
    std::vector<double> mean;
};
ShellProfile shell_average(const std::vector<double>& u, const BallGrid& grid);

/// Radial comparator: solution of the radial ODE with the same mollified
/// source, u(r) = (1/(4 pi)) int_r^1 M(s) s^{-2} e^{D(0,s)} ds,
/// M(s) = int_0^{min(s,rho)} t^2 e^{-D(0,t)} dt * 3/rho^3.
double radial_comparator(const DriftSpec& spec, double rho, double r,
                         const QuadratureConfig& q);

/// Discrete flux balance through a shell: diffusive flux plus the convective
/// volume term inside; approximates 1 (the unit source mass).
double discrete_flux_balance(const FdSystem& system, const std::vector<double>& u,
                             double shell_radius);

/// u(0) table for L u = f with f the indicator of a ball at (center,0,0).
struct BlowupRow {
    int m;
    double u0;
    int iterations;
};
std::vector<BlowupRow> poisson_blowup_experiment(double C, const std::vector<int>& m_list,
                                                 int N, double center = 0.5,
                                                 double f_radius = 0.1,
                                                 double tol = 1e-8);

/// Radial-quadrature cross-check for the blow-up experiment:
/// int G(|y|) f(y) dy via spherical caps of the off-center source ball.
double blowup_comparator(const DriftSpec& spec, double center, double f_radius,
                         const QuadratureConfig& q);

/// CSV "x,y,z,u" over interior nodes.
void write_solution_csv(const std::vector<double>& u, const BallGrid& grid,
                        const std::string& path);

nlohmann::json fd_summary(const FdSystem& system, const SolveResult& result,
                          double symmetry_deviation);

}  // namespace greenlab
