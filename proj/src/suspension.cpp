#include "hsc/suspension.hpp"

#include <algorithm>
#include <cmath>

#include "hsc/error.hpp"

namespace hsc {

double birkhoff_sum(const CylinderFunction& f, const Sequence& x, std::int64_t n) {
  double s = 0.0;
  if (n >= 0) {
    for (std::int64_t j = 0; j < n; ++j) s += f.at(x, j);
    return s;
  }
  for (std::int64_t j = n; j < 0; ++j) s += f.at(x, j);
  return -s;
}

double birkhoff_sum(const CylinderFunction& f, const PeriodicPoint& p, std::int64_t n) {
  return birkhoff_sum(f, p.sequence(), n);
}

Rational birkhoff_sum_exact(const CylinderFunction& f, const Sequence& x, std::int64_t n) {
  Rational s(0);
  const std::int64_t lo = n >= 0 ? 0 : n;
  const std::int64_t hi = n >= 0 ? n : 0;
  for (std::int64_t j = lo; j < hi; ++j) {
    auto v = f.exact_at(x, j);
    if (!v) throw InvalidInput("birkhoff_sum_exact needs exact cylinder values");
    s += *v;
  }
  return n >= 0 ? s : -s;
}

namespace {

struct StepResult {
  std::int64_t shifts;
  double height;
};

StepResult step(const RoofFunction& roof, const FlowPoint& x, double tau) {
  if (!std::isfinite(tau)) throw InvalidInput("flow time must be finite");
  const double r0 = roof.at(x.base, 0);
  if (!(x.height >= 0.0 && x.height < r0)) throw InvalidInput("flow point height outside [0, r(x))");
  double s = x.height + tau;
  // Landing within round-off of a ceiling counts as reaching it.
  const double tol = 1e-12 * std::max(1.0, std::abs(x.height) + std::abs(tau));
  std::int64_t n = 0;
  // Find n with 0 <= s - r_n < r(sigma^n x); s is kept relative to the current base.
  while (s >= roof.at(x.base, n) - tol) {
    s -= roof.at(x.base, n);
    ++n;
  }
  while (s < -tol) {
    --n;
    s += roof.at(x.base, n);
  }
  return {n, std::max(s, 0.0)};
}

}  // namespace

FlowPoint flow_step(const RoofFunction& roof, const FlowPoint& x, double tau) {
  const StepResult r = step(roof, x, tau);
  return FlowPoint{x.base.shifted(r.shifts), r.height};
}

std::int64_t flow_shift_count(const RoofFunction& roof, const FlowPoint& x, double tau) {
  return step(roof, x, tau).shifts;
}

double orbit_period(const RoofFunction& roof, const Necklace& w) {
  return birkhoff_sum(roof, Sequence::periodic(w.canonical()), static_cast<std::int64_t>(w.period_length()));
}

double bowen_walters_distance(const RoofFunction& roof, const FlowPoint& a, const FlowPoint& b) {
  const double u = a.height / roof.at(a.base, 0);
  const double v = b.height / roof.at(b.base, 0);
  auto horizontal = [](double dx, double dsx, double level) { return (1.0 - level) * dx + level * dsx; };
  const Sequence sa = a.base.shifted(1);
  const Sequence sb = b.base.shifted(1);
  // Same sheet: move vertically to a common level, then across.
  const double level = std::min(u, v);
  const double same = std::abs(u - v) + horizontal(symbolic_distance(a.base, b.base), symbolic_distance(sa, sb), level);
  // a wraps through its ceiling onto sigma(a) at level 0, then meets b.
  const double wrap_a = (1.0 - u) + v + symbolic_distance(sa, b.base);
  const double wrap_b = (1.0 - v) + u + symbolic_distance(sb, a.base);
  return std::min({same, wrap_a, wrap_b});
}

}  // namespace hsc
