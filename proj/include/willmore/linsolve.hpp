#pragma once

#include <array>
#include <utility>
#include <vector>

namespace willmore {

struct SolveReport {
  long iterations = 0;
  double residual = 0.0;  // true residual of the returned vector, recomputed once
  double seconds = 0.0;
};

// Pentadiagonal system with periodic coupling of bandwidth 2:
// a_i x_{i-2} + b_i x_{i-1} + c_i x_i + d_i x_{i+1} + e_i x_{i+2} = f_i.
struct PentaSystem {
  std::vector<double> a, b, c, d, e;
  std::vector<std::vector<double>> rhs;  // one or more right-hand sides
  int n() const { return static_cast<int>(c.size()); }
};

struct PentaSolution {
  std::vector<double> x;
  SolveReport report;
};

// Gauss-Seidel sweeps in ascending index order, stopping when the max-norm
// difference of subsequent iterates drops below tol. Throws on the
// iteration cap, carrying the last residual in the message.
PentaSolution solve_penta_periodic(const PentaSystem& sys, int rhs_index,
                                   const std::vector<double>& x0, double tol,
                                   long max_iters);

// Direct solve of the periodic system through the dense oracle path.
std::vector<double> solve_penta_direct(const PentaSystem& sys, int rhs_index);

std::vector<double> penta_matvec(const PentaSystem& sys, const std::vector<double>& x);

// Dense LU with partial pivoting, row-major a of size n*n. Oracle path and
// fallback for small systems; throws "singular system" on pivot breakdown.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b);

// ---------------------------------------------------------------------------
// 21-point stencil systems on a rectangular node grid.

// Offsets (r,s) with |r|,|s| <= 2 and |r|+|s| < 4, in a fixed scan order.
inline constexpr std::array<std::pair<int, int>, 21> kStencilOffsets{{
    {-2, -1}, {-2, 0}, {-2, 1},
    {-1, -2}, {-1, -1}, {-1, 0}, {-1, 1}, {-1, 2},
    {0, -2},  {0, -1},  {0, 0},  {0, 1},  {0, 2},
    {1, -2},  {1, -1},  {1, 0},  {1, 1},  {1, 2},
    {2, -1},  {2, 0},   {2, 1},
}};

// Slot of (r,s) in kStencilOffsets, or -1 when outside the set.
int stencil_offset_index(int r, int s);

// Square system over all grid nodes; row coefficients keyed by stencil
// offset. Rows of boundary nodes encode the linear-extrapolation identity
// (a vanishing second difference along the inward grid line).
struct SparseSystem {
  int nx = 0, ny = 0;  // node counts per direction
  std::vector<std::array<double, 21>> rows;
  std::vector<double> rhs;

  int dimension() const { return nx * ny; }
  int node(int i, int j) const { return i + nx * j; }
};

enum class SparseBackend { gmres_ilut, lu };

struct GmresOptions {
  int restart = 50;
  long max_iters = 100000;
  // Dropping is threshold-driven; the per-triangle count cap exists as a
  // memory guard only (<= 0 means uncapped). Hard count truncation makes
  // the factor triangles unstable on the fourth-order operator.
  double ilut_drop_tol = 1e-5;
  int ilut_fill = 0;
};

struct SparseSolution {
  std::vector<double> x;
  SolveReport report;
};

// tol bounds the relative residual |Ax-b|/|b|. gmres_ilut is restarted
// GMRES with an incomplete-LU-with-threshold preconditioner; lu is a
// complete banded LU factorization.
SparseSolution solve_sparse(const SparseSystem& sys, SparseBackend backend,
                            double tol = 1e-9, const GmresOptions& opts = {});

std::vector<double> sparse_matvec(const SparseSystem& sys, const std::vector<double>& x);

}  // namespace willmore
