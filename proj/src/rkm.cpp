#include "willmore/rkm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace willmore {

RkmResult rkm_integrate(const RkmRhs& rhs, std::vector<double>& y, double t0, double t1,
                        const RkmOptions& opts, const RkmObserver& on_accept) {
  const size_t n = y.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), stage(n), y_new(n);

  double t = t0;
  double step = opts.initial_step > 0.0 ? opts.initial_step : (t1 - t0) / 100.0;
  if (opts.max_step > 0.0) step = std::min(step, opts.max_step);
  RkmResult result;

  while (t < t1) {
    step = std::min(step, t1 - t);
    if (step < opts.min_step) throw std::runtime_error("stiff blow-up");

    rhs(t, y, k1);
    for (size_t i = 0; i < n; ++i) stage[i] = y[i] + step / 3.0 * k1[i];
    rhs(t + step / 3.0, stage, k2);
    for (size_t i = 0; i < n; ++i) stage[i] = y[i] + step / 6.0 * (k1[i] + k2[i]);
    rhs(t + step / 3.0, stage, k3);
    for (size_t i = 0; i < n; ++i) stage[i] = y[i] + step * (0.125 * k1[i] + 0.375 * k3[i]);
    rhs(t + 0.5 * step, stage, k4);
    for (size_t i = 0; i < n; ++i)
      stage[i] = y[i] + step * (0.5 * k1[i] - 1.5 * k3[i] + 2.0 * k4[i]);
    rhs(t + step, stage, k5);

    double err = 0.0;
    for (size_t i = 0; i < n; ++i) {
      y_new[i] = y[i] + step / 6.0 * (k1[i] + 4.0 * k4[i] + k5[i]);
      const double e =
          step / 30.0 * (2.0 * k1[i] - 9.0 * k3[i] + 8.0 * k4[i] - k5[i]);
      err = std::max(err, std::abs(e));
    }

    if (!std::isfinite(err) || err > opts.tol) {
      step *= 0.5;
      ++result.rejected;
      continue;
    }
    y.swap(y_new);
    t += step;
    ++result.accepted;
    result.last_step = step;
    if (on_accept) on_accept(t, y);
    if (err < opts.tol / 32.0) {
      step *= 2.0;
      if (opts.max_step > 0.0) step = std::min(step, opts.max_step);
    }
  }
  return result;
}

}  // namespace willmore
