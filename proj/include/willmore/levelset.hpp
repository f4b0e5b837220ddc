#pragma once

#include <functional>
#include <limits>

#include "willmore/grid.hpp"
#include "willmore/linsolve.hpp"
#include "willmore/stencil.hpp"

namespace willmore {

enum class LevelSetScheme { semi_implicit, explicit_rkm };

struct LevelSetConfig {
  double tau = 1e-3;
  double epsilon = 1e-3;
  double redistance_period = std::numeric_limits<double>::infinity();
  LevelSetScheme scheme = LevelSetScheme::semi_implicit;
  SparseBackend solver = SparseBackend::gmres_ilut;
  double solver_tol = 1e-9;
  GmresOptions gmres;
  double delta = 0.0;    // phase-field width for the explicit scheme; 0 -> 10h
  double rkm_tol = 1e-6;
};

// Accumulates evolved time toward the next redistancing.
struct RedistanceClock {
  double period = std::numeric_limits<double>::infinity();
  double elapsed = 0.0;
  bool advance(double tau) {
    elapsed += tau;
    if (elapsed + 1e-12 < period) return false;
    elapsed = 0.0;
    return true;
  }
};

// 21-point semi-implicit system: rows on interior nodes (2..n-2 both ways)
// couple the new level through the lagged stencil quantities; boundary-band
// rows encode the linear-extrapolation identity along the inward grid line.
SparseSystem assemble_semi_implicit(const LevelSetField& prev, const StencilQuantities& st,
                                    double tau);
SparseSystem assemble_semi_implicit_serial(const LevelSetField& prev,
                                           const StencilQuantities& st, double tau);

// Overwrites the outer two-node bands by linear extrapolation from the two
// nearest interior nodes: columns first for the side bands, then rows
// (covering the corners).
void apply_boundary_extrapolation(LevelSetField& f);

LevelSetField step_semi_implicit(const LevelSetField& prev, const LevelSetConfig& cfg,
                                 RedistanceClock& clock, SolveReport* report = nullptr);

// Right-hand side of the evolution with every term on the given level;
// band nodes receive the extrapolated interior derivative.
void explicit_rhs(const LevelSetField& f, double epsilon, std::vector<double>& dudt);
void explicit_rhs_serial(const LevelSetField& f, double epsilon, std::vector<double>& dudt);

// u0 = delta sgn(d) (1 - exp(-|d/delta|)) sampled at the nodes.
LevelSetField phase_field_init(const std::function<double(Vec2)>& sdf, double lo, double hi,
                               int n, double delta);

// Fast-sweeping redistancing to a signed distance function; the zero set
// moves by at most h/2. Throws "empty interface" without a sign change.
LevelSetField redistance(const LevelSetField& f);

}  // namespace willmore
