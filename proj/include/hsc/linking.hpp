#pragma once

#include <cstdint>
#include <vector>

#include "hsc/geometry.hpp"

namespace hsc {

struct Orbit3D;

// Curves are closed polylines; the last vertex joins back to the first.

// Gauss double integral, each segment pair evaluated in closed form (signed solid angle).
double gauss_linking_integral(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2);
int linking_by_gauss(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2);

// Signed crossings where c1 passes over c2, seen along a seeded random direction; the direction is
// perturbed until the projection is generic.
int linking_by_crossings(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2, std::uint64_t seed = 0);

double min_distance(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2);

// Both methods; throws NumericalFailure if the curves nearly touch or the methods disagree.
int linking_number(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2);
int linking_number(const Orbit3D& c1, const Orbit3D& c2);

}  // namespace hsc
