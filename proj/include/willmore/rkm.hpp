#pragma once

#include <functional>
#include <vector>

namespace willmore {

struct RkmOptions {
  double tol = 1e-6;          // max-norm bound on the embedded error estimate
  double initial_step = 0.0;  // 0 -> span/100
  double min_step = 1e-14;    // below this the problem is declared stiff
  double max_step = 0.0;      // 0 -> unbounded
};

struct RkmResult {
  long accepted = 0;
  long rejected = 0;
  double last_step = 0.0;
};

using RkmRhs = std::function<void(double t, const std::vector<double>& y,
                                  std::vector<double>& dydt)>;
using RkmObserver = std::function<void(double t, const std::vector<double>& y)>;

// Five-stage Merson scheme with the classic controller: a step is accepted
// when the error estimate is at or below tol, halved otherwise, and doubled
// when the estimate drops below tol/32. Throws "stiff blow-up" when the
// step underflows min_step.
RkmResult rkm_integrate(const RkmRhs& rhs, std::vector<double>& y, double t0, double t1,
                        const RkmOptions& opts = {}, const RkmObserver& on_accept = {});

}  // namespace willmore
