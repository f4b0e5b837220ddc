#include "willmore/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

namespace willmore {

namespace {

// periodic helpers over a plain vector, logical 0-based
double at(const std::vector<double>& v, int i) {
  const int n = static_cast<int>(v.size());
  return v[(i % n + n) % n];
}

}  // namespace

std::vector<double> compute_tangential_velocity(const DiscreteCurve& prev,
                                                const LagrangianConfig& cfg) {
  const int n = prev.n();
  const double big_b = curve_average_kbeta(prev);
  const double mean_r = prev.total_length / n;
  std::vector<double> alpha(n);
  double run = 0.0;
  for (int i = 0; i < n; ++i) {
    run += prev.r[i] * (prev.k[i] * prev.beta[i] - big_b) + cfg.omega * (mean_r - prev.r[i]);
    alpha[i] = run;
  }
  return alpha;
}

LengthUpdate update_local_lengths(const DiscreteCurve& prev,
                                  const std::vector<double>& alpha,
                                  const LagrangianConfig& cfg) {
  const int n = prev.n();
  LengthUpdate out;
  out.eta.resize(n);
  out.r.resize(n);
  out.q.resize(n);
  for (int i = 0; i < n; ++i) {
    const double dalpha = alpha[i] - (i == 0 ? 0.0 : alpha[i - 1]);
    out.eta[i] = prev.eta[i] +
                 cfg.tau / prev.r[i] * (-prev.r[i] * prev.k[i] * prev.beta[i] + dalpha);
    out.r[i] = std::exp(out.eta[i]);
    if (!std::isfinite(out.r[i]) || out.r[i] <= 0.0)
      throw std::runtime_error("length blow-up");
    out.total_length += out.r[i];
  }
  for (int i = 0; i < n; ++i) out.q[i] = 0.5 * (out.r[i] + at(out.r, i + 1));
  return out;
}

PentaSystem assemble_curvature_system(const DiscreteCurve& prev,
                                      const LengthUpdate& len,
                                      const std::vector<double>& alpha,
                                      const LagrangianConfig& cfg) {
  const int n = prev.n();
  PentaSystem sys;
  sys.a.resize(n);
  sys.b.resize(n);
  sys.c.resize(n);
  sys.d.resize(n);
  sys.e.resize(n);
  sys.rhs.assign(1, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    const double r_m = at(len.r, i - 1), r_0 = len.r[i], r_p = at(len.r, i + 1);
    const double q_mm = at(len.q, i - 2), q_m = at(len.q, i - 1);
    const double q_0 = len.q[i], q_p = at(len.q, i + 1);
    if (r_m == 0.0 || r_0 == 0.0 || r_p == 0.0 || q_mm == 0.0 || q_m == 0.0 ||
        q_0 == 0.0 || q_p == 0.0)
      throw std::runtime_error("degenerate volume");
    const double alpha_prev = i == 0 ? 0.0 : alpha[i - 1];  // alpha_{i-1}, anchor is 0
    const double alpha_cur = alpha[i];                      // alpha_i

    sys.a[i] = 1.0 / (q_m * r_m * q_mm);
    sys.e[i] = 1.0 / (q_0 * r_p * q_p);
    sys.b[i] = -(1.0 / (r_0 * q_0 * q_m) + 1.0 / (r_0 * q_m * q_m) +
                 1.0 / (q_m * q_m * r_m) + 1.0 / (q_m * r_m * q_mm)) +
               0.5 * alpha_prev;
    sys.d[i] = -(1.0 / (q_0 * r_p * q_p) + 1.0 / (q_0 * q_0 * r_p) +
                 1.0 / (r_0 * q_0 * q_0) + 1.0 / (r_0 * q_0 * q_m)) -
               0.5 * alpha_cur;
    sys.c[i] = 1.0 / (q_0 * q_0 * r_p) + 1.0 / (r_0 * q_0 * q_0) +
               2.0 / (r_0 * q_0 * q_m) + 1.0 / (r_0 * q_m * q_m) +
               1.0 / (q_m * q_m * r_m) + r_0 / cfg.tau -
               prev.r[i] * prev.k[i] * prev.beta[i] + 0.5 * alpha_cur - 0.5 * alpha_prev;

    const double k3_m = at(prev.k, i - 1) * at(prev.k, i - 1) * at(prev.k, i - 1);
    const double k3_0 = prev.k[i] * prev.k[i] * prev.k[i];
    const double k3_p = at(prev.k, i + 1) * at(prev.k, i + 1) * at(prev.k, i + 1);
    sys.rhs[0][i] =
        r_0 / cfg.tau * prev.k[i] + (k3_0 - k3_m) / (2.0 * q_m) - (k3_p - k3_0) / (2.0 * q_0);
  }
  return sys;
}

PentaSystem assemble_position_system(const DiscreteCurve& prev,
                                     const LengthUpdate& len,
                                     const std::vector<double>& k_new,
                                     const std::vector<double>& alpha,
                                     const LagrangianConfig& cfg) {
  const int n = prev.n();
  PentaSystem sys;
  sys.a.resize(n);
  sys.b.resize(n);
  sys.c.resize(n);
  sys.d.resize(n);
  sys.e.resize(n);
  sys.rhs.assign(2, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    const double r_m = at(len.r, i - 1), r_0 = len.r[i];
    const double r_p = at(len.r, i + 1), r_pp = at(len.r, i + 2);
    const double q_m = at(len.q, i - 1), q_0 = len.q[i], q_p = at(len.q, i + 1);
    if (r_m == 0.0 || r_0 == 0.0 || r_p == 0.0 || r_pp == 0.0 || q_m == 0.0 ||
        q_0 == 0.0 || q_p == 0.0)
      throw std::runtime_error("degenerate volume");
    const double alpha_cur = alpha[i];  // alpha_i
    const double k_0 = k_new[i], k_p = at(k_new, i + 1);

    sys.a[i] = 1.0 / (r_0 * q_m * r_m);
    sys.e[i] = 1.0 / (r_p * q_p * r_pp);
    sys.b[i] = -(1.0 / (r_0 * q_m * r_m) + 1.0 / (r_0 * r_0 * q_m) +
                 1.0 / (r_0 * r_0 * q_0) + 1.0 / (r_0 * q_0 * r_p)) +
               1.5 * k_0 * k_0 / r_0 + 0.5 * alpha_cur;
    sys.d[i] = -(1.0 / (r_0 * q_0 * r_p) + 1.0 / (r_p * r_p * q_0) +
                 1.0 / (r_p * r_p * q_p) + 1.0 / (r_p * q_p * r_pp)) +
               1.5 * k_p * k_p / r_p - 0.5 * alpha_cur;
    sys.c[i] = q_0 / cfg.tau - (sys.a[i] + sys.b[i] + sys.d[i] + sys.e[i]);

    sys.rhs[0][i] = q_0 / cfg.tau * prev.nodes[i].x;
    sys.rhs[1][i] = q_0 / cfg.tau * prev.nodes[i].y;
  }
  return sys;
}

namespace {

std::vector<double> solve_penta(const PentaSystem& sys, int rhs_index,
                                const std::vector<double>& guess,
                                const LagrangianConfig& cfg, long& sweeps,
                                long& fallbacks) {
  try {
    PentaSolution sol = solve_penta_periodic(sys, rhs_index, guess, cfg.gs_tol, cfg.gs_max_iters);
    sweeps += sol.report.iterations;
    return std::move(sol.x);
  } catch (const std::runtime_error&) {
    ++fallbacks;
    return solve_penta_direct(sys, rhs_index);
  }
}

}  // namespace

DiscreteCurve step(const DiscreteCurve& prev, const LagrangianConfig& cfg,
                   LagrangianStats* stats) {
  LagrangianStats local;
  LagrangianStats& st = stats ? *stats : local;

  const std::vector<double> alpha = compute_tangential_velocity(prev, cfg);
  const LengthUpdate len = update_local_lengths(prev, alpha, cfg);

  const PentaSystem ksys = assemble_curvature_system(prev, len, alpha, cfg);
  const std::vector<double> k_new =
      solve_penta(ksys, 0, prev.k, cfg, st.curvature_sweeps, st.direct_fallbacks);

  const PentaSystem xsys = assemble_position_system(prev, len, k_new, alpha, cfg);
  std::vector<double> guess_x(prev.n()), guess_y(prev.n());
  for (int i = 0; i < prev.n(); ++i) {
    guess_x[i] = prev.nodes[i].x;
    guess_y[i] = prev.nodes[i].y;
  }
  const std::vector<double> x_new =
      solve_penta(xsys, 0, guess_x, cfg, st.position_sweeps, st.direct_fallbacks);
  const std::vector<double> y_new =
      solve_penta(xsys, 1, guess_y, cfg, st.position_sweeps, st.direct_fallbacks);

  DiscreteCurve next;
  next.nodes.resize(prev.n());
  for (int i = 0; i < prev.n(); ++i) next.nodes[i] = {x_new[i], y_new[i]};
  next.r = len.r;
  next.q = len.q;
  next.eta = len.eta;
  next.k = k_new;
  next.alpha = alpha;
  next.total_length = len.total_length;
  next.beta = normal_velocity(next);
  return next;
}

}  // namespace willmore
