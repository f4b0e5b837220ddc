#pragma once

#include <vector>

#include "willmore/curve.hpp"
#include "willmore/linsolve.hpp"

namespace willmore {

struct LagrangianConfig {
  double tau = 1e-3;       // time step
  double omega = 1.0;      // tangential redistribution strength, >= 0
  double gs_tol = 1e-10;   // Gauss-Seidel iterate-difference stop
  long gs_max_iters = 1000000;
};

// Per-step solver bookkeeping, accumulated over a run.
struct LagrangianStats {
  long curvature_sweeps = 0;
  long position_sweeps = 0;
  long direct_fallbacks = 0;
};

// alpha_i = alpha_{i-1} + r_i (k_i beta_i - B) + omega (L/n - r_i), all
// quantities from the given (previous) state, alpha_0 = 0. The increments
// telescope to zero around the closed curve.
std::vector<double> compute_tangential_velocity(const DiscreteCurve& prev,
                                                const LagrangianConfig& cfg);

struct LengthUpdate {
  std::vector<double> eta, r, q;
  double total_length = 0.0;
};

// eta_i += (tau / r_i)(-r_i k_i beta_i + alpha_i - alpha_{i-1}), then
// r = exp(eta). Throws "length blow-up" when exp overflows.
LengthUpdate update_local_lengths(const DiscreteCurve& prev,
                                  const std::vector<double>& alpha,
                                  const LagrangianConfig& cfg);

// Pentadiagonal system for the new curvatures: fourth-order terms use the
// new lengths, the k^3 and k*beta terms are lagged on the previous state.
PentaSystem assemble_curvature_system(const DiscreteCurve& prev,
                                      const LengthUpdate& len,
                                      const std::vector<double>& alpha,
                                      const LagrangianConfig& cfg);

// System for the new positions, same matrix for both coordinates
// (rhs[0] = x, rhs[1] = y).
PentaSystem assemble_position_system(const DiscreteCurve& prev,
                                     const LengthUpdate& len,
                                     const std::vector<double>& k_new,
                                     const std::vector<double>& alpha,
                                     const LagrangianConfig& cfg);

// One semi-implicit step: tangential velocity, local lengths, curvature
// solve, position solve. Returns the fully consistent next state (beta and
// total_length refreshed at the new level).
DiscreteCurve step(const DiscreteCurve& prev, const LagrangianConfig& cfg,
                   LagrangianStats* stats = nullptr);

}  // namespace willmore
