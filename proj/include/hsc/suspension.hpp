#pragma once

#include <cstdint>

#include "hsc/cylinder.hpp"
#include "hsc/sequence.hpp"

namespace hsc {

// r_n(x): sum_{j<n} r(sigma^j x) for n > 0, 0 for n = 0, -r_{|n|}(sigma^{-|n|} x) for n < 0.
double birkhoff_sum(const CylinderFunction& f, const Sequence& x, std::int64_t n);
double birkhoff_sum(const CylinderFunction& f, const PeriodicPoint& p, std::int64_t n);

// Same sum in exact arithmetic; throws InvalidInput when some visited value is not exact.
Rational birkhoff_sum_exact(const CylinderFunction& f, const Sequence& x, std::int64_t n);

// sigma_r^tau: moves height by tau, wrapping through the shift.
FlowPoint flow_step(const RoofFunction& roof, const FlowPoint& x, double tau);

// Number of shifts applied by flow_step(x, tau) (negative for backward wraps).
std::int64_t flow_shift_count(const RoofFunction& roof, const FlowPoint& x, double tau);

double orbit_period(const RoofFunction& roof, const Necklace& w);

// Chain approximation of the Bowen-Walters distance on the suspension. Vertical legs cost
// roof-normalised height; horizontal legs cost the symbolic distance interpolated between the
// base and its shift. Three chains are compared: same sheet, and wrapping through the top of
// either point. Symmetric, zero iff equal.
double bowen_walters_distance(const RoofFunction& roof, const FlowPoint& a, const FlowPoint& b);

}  // namespace hsc
