#pragma once

#include <cstddef>
#include <vector>

#include "hsc/horseshoe.hpp"

namespace hsc {

struct SpanningPoint {
  double epsilon = 0.0;
  double estimate = 0.0;    // least-squares slope of log S(T', eps) over T' in [T/2, T]
  double raw = 0.0;         // (1/T) log S(T, eps)
  double log_cover = 0.0;   // log S(T, eps)
  std::size_t grid_points = 0;
};

struct SpanningResult {
  std::vector<SpanningPoint> points;  // in the order of the requested epsilons
  double extrapolated = 0.0;          // linear fit in eps evaluated at eps = 0
};

// Upper estimate of the (T, eps)-spanning number of the model's basic set, built from greedy
// covers of a product grid (backward words x forward words) per itinerary class and time slot.
// Throws InvalidInput for T <= 0 or eps outside (0, 2 rho strip_gap); NumericalFailure when the
// grid needed for eps exceeds the size cap.
SpanningResult spanning_entropy(const AffineHorseshoeModel& model, double T, const std::vector<double>& epsilons,
                                std::size_t threads = 1);

}  // namespace hsc
