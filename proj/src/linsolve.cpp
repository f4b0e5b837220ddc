#include "willmore/linsolve.hpp"

#include <lapacke.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace willmore {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 5x5 lookup for (r+2, s+2) -> slot, -1 on the excluded corners
constexpr std::array<int, 25> make_offset_table() {
  std::array<int, 25> t{};
  for (auto& v : t) v = -1;
  for (int slot = 0; slot < 21; ++slot) {
    const auto [r, s] = kStencilOffsets[slot];
    t[(r + 2) * 5 + (s + 2)] = slot;
  }
  return t;
}
constexpr std::array<int, 25> kOffsetTable = make_offset_table();

// Compressed sparse row view of a SparseSystem, clipped to the grid.
struct Csr {
  int n = 0;
  std::vector<int> ptr, col;
  std::vector<double> val;
};

Csr to_csr(const SparseSystem& sys) {
  Csr m;
  m.n = sys.dimension();
  m.ptr.assign(m.n + 1, 0);
  m.col.reserve(m.n * 21);
  m.val.reserve(m.n * 21);
  for (int j = 0; j < sys.ny; ++j) {
    for (int i = 0; i < sys.nx; ++i) {
      const auto& row = sys.rows[sys.node(i, j)];
      // columns emitted in scan order of kStencilOffsets are already sorted
      for (int slot = 0; slot < 21; ++slot) {
        const double v = row[slot];
        if (v == 0.0) continue;
        const auto [r, s] = kStencilOffsets[slot];
        const int ii = i + r, jj = j + s;
        if (ii < 0 || ii >= sys.nx || jj < 0 || jj >= sys.ny)
          throw std::runtime_error("stencil entry outside grid");
        m.col.push_back(sys.node(ii, jj));
        m.val.push_back(v);
      }
      m.ptr[sys.node(i, j) + 1] = static_cast<int>(m.col.size());
    }
  }
  return m;
}

void csr_matvec(const Csr& m, const std::vector<double>& x, std::vector<double>& y) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (int k = m.ptr[i]; k < m.ptr[i + 1]; ++k) s += m.val[k] * x[m.col[k]];
    y[i] = s;
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Incomplete LU with threshold dropping and a per-triangle fill cap.
// L has unit diagonal; rows stored with ascending columns.
struct Ilut {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> lower, upper;  // upper includes diagonal

  void apply(const std::vector<double>& b, std::vector<double>& x) const {
    x = b;
    for (int i = 0; i < n; ++i)
      for (const auto& [j, v] : lower[i]) x[i] -= v * x[j];
    for (int i = n - 1; i >= 0; --i) {
      double diag = 1.0;
      double s = x[i];
      for (const auto& [j, v] : upper[i]) {
        if (j == i)
          diag = v;
        else
          s -= v * x[j];
      }
      x[i] = s / diag;
    }
  }
};

Ilut ilut_factor(const Csr& a, double drop_tol, int fill) {
  Ilut f;
  f.n = a.n;
  f.lower.resize(a.n);
  f.upper.resize(a.n);
  std::vector<double> w(a.n, 0.0);
  std::vector<int> nz;
  nz.reserve(256);
  for (int i = 0; i < a.n; ++i) {
    nz.clear();
    double row_norm = 0.0;
    int row_len = 0;
    for (int kk = a.ptr[i]; kk < a.ptr[i + 1]; ++kk) {
      w[a.col[kk]] = a.val[kk];
      nz.push_back(a.col[kk]);
      row_norm += a.val[kk] * a.val[kk];
      ++row_len;
    }
    std::sort(nz.begin(), nz.end());
    const double tol_i = drop_tol * std::sqrt(row_norm) / std::max(row_len, 1);

    for (size_t p = 0; p < nz.size() && nz[p] < i; ++p) {
      const int k = nz[p];
      double diag_k = 1.0;
      for (const auto& [j, v] : f.upper[k])
        if (j == k) {
          diag_k = v;
          break;
        }
      const double factor = w[k] / diag_k;
      // multipliers are dimensionless ratios: drop against the plain
      // tolerance, not the row-scaled one
      if (std::abs(factor) < drop_tol) {
        w[k] = 0.0;
        continue;
      }
      w[k] = factor;
      for (const auto& [j, v] : f.upper[k]) {
        if (j == k) continue;
        if (w[j] == 0.0 && std::find(nz.begin() + p + 1, nz.end(), j) == nz.end()) {
          nz.insert(std::upper_bound(nz.begin() + p + 1, nz.end(), j), j);
        }
        w[j] -= factor * v;
      }
    }

    std::vector<std::pair<int, double>> lo, up;
    for (int j : nz) {
      const double v = w[j];
      w[j] = 0.0;
      if (v == 0.0) continue;
      if (j == i) {
        up.emplace_back(j, v);
        continue;
      }
      if (std::abs(v) < tol_i) continue;
      (j < i ? lo : up).emplace_back(j, v);
    }
    // keep at most `fill` largest entries per triangle, diagonal always;
    // fill <= 0 leaves the triangles threshold-limited only
    auto keep_largest = [fill](std::vector<std::pair<int, double>>& entries, int keep_col) {
      if (fill <= 0) return;
      const size_t cap = static_cast<size_t>(fill);
      if (entries.size() <= cap) return;
      std::partial_sort(entries.begin(), entries.begin() + cap, entries.end(),
                        [keep_col](const auto& l, const auto& r) {
                          if (l.first == keep_col) return true;
                          if (r.first == keep_col) return false;
                          return std::abs(l.second) > std::abs(r.second);
                        });
      entries.resize(cap);
    };
    keep_largest(lo, -1);
    keep_largest(up, i);
    std::sort(lo.begin(), lo.end());
    std::sort(up.begin(), up.end());
    bool has_diag = false;
    for (auto& [j, v] : up)
      if (j == i) {
        has_diag = true;
        if (v == 0.0) v = tol_i > 0.0 ? tol_i : 1e-30;
      }
    if (!has_diag) {
      up.emplace_back(i, 1e-30);
      std::sort(up.begin(), up.end());
    }
    f.lower[i] = std::move(lo);
    f.upper[i] = std::move(up);
  }
  return f;
}

// Right-preconditioned restarted GMRES with Givens rotations.
SparseSolution gmres_ilut(const Csr& a, const std::vector<double>& b, double tol,
                          const GmresOptions& opts) {
  const auto t0 = Clock::now();
  const int n = a.n;
  const int m = opts.restart;
  const double bnorm = norm2(b);
  SparseSolution out;
  out.x.assign(n, 0.0);
  if (bnorm == 0.0) return out;

  const Ilut pre = ilut_factor(a, opts.ilut_drop_tol, opts.ilut_fill);

  std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
  std::vector<std::vector<double>> h(m + 1, std::vector<double>(m, 0.0));
  std::vector<double> cs(m), sn(m), g(m + 1), z(n), az(n), r(n);

  long total_iters = 0;
  double rel = 1.0;
  while (total_iters < opts.max_iters) {
    csr_matvec(a, out.x, az);
    for (int i = 0; i < n; ++i) r[i] = b[i] - az[i];
    double beta = norm2(r);
    rel = beta / bnorm;
    if (rel < tol) break;
    for (int i = 0; i < n; ++i) v[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    int k = 0;
    for (; k < m && total_iters < opts.max_iters; ++k, ++total_iters) {
      pre.apply(v[k], z);
      csr_matvec(a, z, az);
      for (int i = 0; i <= k; ++i) {
        double dot = 0.0;
        for (int jj = 0; jj < n; ++jj) dot += az[jj] * v[i][jj];
        h[i][k] = dot;
        for (int jj = 0; jj < n; ++jj) az[jj] -= dot * v[i][jj];
      }
      h[k + 1][k] = norm2(az);
      if (h[k + 1][k] > 0.0)
        for (int jj = 0; jj < n; ++jj) v[k + 1][jj] = az[jj] / h[k + 1][k];
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * h[i][k] + sn[i] * h[i + 1][k];
        h[i + 1][k] = -sn[i] * h[i][k] + cs[i] * h[i + 1][k];
        h[i][k] = t;
      }
      const double denom = std::hypot(h[k][k], h[k + 1][k]);
      if (denom == 0.0) {
        cs[k] = 1.0;
        sn[k] = 0.0;
      } else {
        cs[k] = h[k][k] / denom;
        sn[k] = h[k + 1][k] / denom;
      }
      h[k][k] = cs[k] * h[k][k] + sn[k] * h[k + 1][k];
      h[k + 1][k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (std::abs(g[k + 1]) / bnorm < tol) {
        ++k;
        ++total_iters;
        break;
      }
    }
    // back-substitute the k x k triangular system and update x
    std::vector<double> y(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int jj = i + 1; jj < k; ++jj) s -= h[i][jj] * y[jj];
      y[i] = s / h[i][i];
    }
    std::vector<double> dz(n, 0.0);
    for (int jj = 0; jj < k; ++jj)
      for (int i = 0; i < n; ++i) dz[i] += y[jj] * v[jj][i];
    pre.apply(dz, z);
    for (int i = 0; i < n; ++i) out.x[i] += z[i];
    if (k == 0) break;  // stagnation
  }

  csr_matvec(a, out.x, az);
  for (int i = 0; i < n; ++i) r[i] = b[i] - az[i];
  out.report.iterations = total_iters;
  out.report.residual = norm2(r) / bnorm;
  out.report.seconds = seconds_since(t0);
  if (!(out.report.residual < tol))
    throw std::runtime_error("gmres did not converge, residual " +
                             std::to_string(out.report.residual));
  return out;
}

SparseSolution banded_lu(const SparseSystem& sys, const Csr& a) {
  const auto t0 = Clock::now();
  const int n = a.n;
  const int band = 2 * sys.nx + 2;  // max |col - row| over the stencil
  const lapack_int kl = band, ku = band;
  const lapack_int ldab = 2 * kl + ku + 1;
  std::vector<double> ab(static_cast<size_t>(ldab) * n, 0.0);
  // LAPACK band storage, column-major: AB(kl+ku+row-col, col)
  for (int i = 0; i < n; ++i)
    for (int k = a.ptr[i]; k < a.ptr[i + 1]; ++k) {
      const int j = a.col[k];
      ab[static_cast<size_t>(j) * ldab + (kl + ku + i - j)] = a.val[k];
    }
  SparseSolution out;
  out.x = sys.rhs;
  std::vector<lapack_int> ipiv(n);
  const lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n, kl, ku, 1, ab.data(), ldab,
                                        ipiv.data(), out.x.data(), n);
  if (info != 0) throw std::runtime_error("singular system (banded lu)");
  std::vector<double> az(n);
  csr_matvec(a, out.x, az);
  double rnorm = 0.0, bnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = sys.rhs[i] - az[i];
    rnorm += d * d;
    bnorm += sys.rhs[i] * sys.rhs[i];
  }
  out.report.iterations = 1;
  out.report.residual = bnorm > 0.0 ? std::sqrt(rnorm / bnorm) : std::sqrt(rnorm);
  out.report.seconds = seconds_since(t0);
  return out;
}

}  // namespace

int stencil_offset_index(int r, int s) {
  if (r < -2 || r > 2 || s < -2 || s > 2) return -1;
  return kOffsetTable[(r + 2) * 5 + (s + 2)];
}

std::vector<double> penta_matvec(const PentaSystem& sys, const std::vector<double>& x) {
  const int n = sys.n();
  std::vector<double> y(n);
  auto at = [&](int i) { return x[(i % n + n) % n]; };
  for (int i = 0; i < n; ++i)
    y[i] = sys.a[i] * at(i - 2) + sys.b[i] * at(i - 1) + sys.c[i] * x[i] +
           sys.d[i] * at(i + 1) + sys.e[i] * at(i + 2);
  return y;
}

PentaSolution solve_penta_periodic(const PentaSystem& sys, int rhs_index,
                                   const std::vector<double>& x0, double tol,
                                   long max_iters) {
  const auto t0 = Clock::now();
  const int n = sys.n();
  if (n < 5) throw std::invalid_argument("pentadiagonal system needs dimension >= 5");
  const std::vector<double>& f = sys.rhs.at(rhs_index);
  for (int i = 0; i < n; ++i)
    if (sys.c[i] == 0.0) throw std::runtime_error("zero diagonal in pentadiagonal system");

  PentaSolution out;
  out.x = x0.empty() ? std::vector<double>(n, 0.0) : x0;
  auto& x = out.x;
  auto at = [&](int i) { return x[(i % n + n) % n]; };

  bool converged = false;
  long sweep = 0;
  for (; sweep < max_iters && !converged; ++sweep) {
    double diff = 0.0;
    bool finite = true;
    for (int i = 0; i < n; ++i) {
      const double xn = (f[i] - sys.a[i] * at(i - 2) - sys.b[i] * at(i - 1) -
                         sys.d[i] * at(i + 1) - sys.e[i] * at(i + 2)) /
                        sys.c[i];
      if (!std::isfinite(xn)) finite = false;
      diff = std::max(diff, std::abs(xn - x[i]));
      x[i] = xn;
    }
    if (!finite) break;
    if (diff < tol) converged = true;
  }

  const std::vector<double> ax = penta_matvec(sys, x);
  double res = 0.0;
  for (int i = 0; i < n; ++i) res = std::max(res, std::abs(f[i] - ax[i]));
  out.report.iterations = sweep;
  out.report.residual = res;
  out.report.seconds = seconds_since(t0);
  if (!converged)
    throw std::runtime_error("gauss-seidel did not converge, residual " + std::to_string(res));
  return out;
}

std::vector<double> solve_penta_direct(const PentaSystem& sys, int rhs_index) {
  const int n = sys.n();
  std::vector<double> dense(static_cast<size_t>(n) * n, 0.0);
  auto put = [&](int i, int j, double v) {
    dense[static_cast<size_t>(i) * n + ((j % n + n) % n)] += v;
  };
  for (int i = 0; i < n; ++i) {
    put(i, i - 2, sys.a[i]);
    put(i, i - 1, sys.b[i]);
    put(i, i, sys.c[i]);
    put(i, i + 1, sys.d[i]);
    put(i, i + 2, sys.e[i]);
  }
  return solve_dense(std::move(dense), sys.rhs.at(rhs_index));
}

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  std::vector<int> piv(n);
  for (int col = 0; col < n; ++col) {
    int p = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(a[static_cast<size_t>(i) * n + col]) >
          std::abs(a[static_cast<size_t>(p) * n + col]))
        p = i;
    if (a[static_cast<size_t>(p) * n + col] == 0.0)
      throw std::runtime_error("singular system");
    if (p != col) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<size_t>(p) * n + j], a[static_cast<size_t>(col) * n + j]);
      std::swap(b[p], b[col]);
    }
    const double pivot = a[static_cast<size_t>(col) * n + col];
    for (int i = col + 1; i < n; ++i) {
      const double m = a[static_cast<size_t>(i) * n + col] / pivot;
      if (m == 0.0) continue;
      a[static_cast<size_t>(i) * n + col] = 0.0;
      for (int j = col + 1; j < n; ++j)
        a[static_cast<size_t>(i) * n + j] -= m * a[static_cast<size_t>(col) * n + j];
      b[i] -= m * b[col];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[static_cast<size_t>(i) * n + j] * b[j];
    b[i] = s / a[static_cast<size_t>(i) * n + i];
  }
  return b;
}

std::vector<double> sparse_matvec(const SparseSystem& sys, const std::vector<double>& x) {
  std::vector<double> y(sys.dimension(), 0.0);
  const Csr a = to_csr(sys);
  csr_matvec(a, x, y);
  return y;
}

SparseSolution solve_sparse(const SparseSystem& sys, SparseBackend backend, double tol,
                            const GmresOptions& opts) {
  const Csr a = to_csr(sys);
  if (backend == SparseBackend::lu) return banded_lu(sys, a);
  return gmres_ilut(a, sys.rhs, tol, opts);
}

}  // namespace willmore
