#pragma once

#include <functional>
#include <vector>

#include "hsc/cylinder.hpp"
#include "hsc/word.hpp"

namespace hsc {

struct OrbitClass {
  Necklace necklace;
  double period = 0.0;
};

struct ChordClass {
  Word interior;
  Necklace boundary_past;
  Necklace boundary_future;
  double length = 0.0;
};

// Every necklace over L symbols with orbit period <= T, ordered by (length, canonical word).
std::vector<OrbitClass> census_orbits(const RoofFunction& roof, std::size_t L, double T, std::size_t threads = 1);

// Sequence c with c_j = past tail for j <= 0, interior at 1..n-2, future tail from n-1 on.
Sequence chord_sequence(const Necklace& past, const Word& interior, const Necklace& future);

// Every interior word (possibly empty) whose chord length r_n(c), n = |interior| + 2, is <= T.
std::vector<ChordClass> census_chords(const RoofFunction& roof, std::size_t L, const Necklace& past,
                                      const Necklace& future, double T);

// Sorted lengths only; these feed growth_rate without storing the words.
std::vector<double> orbit_lengths(const RoofFunction& roof, std::size_t L, double T, std::size_t threads = 1);
std::vector<double> chord_lengths(const RoofFunction& roof, std::size_t L, const Necklace& past, const Necklace& future,
                                  double T);

struct GrowthEstimate {
  std::vector<std::pair<double, double>> samples;  // (T, log N(T)) for every grid point with N > 0
  double slope = 0.0;
  double intercept = 0.0;
  double window_min = 0.0, window_max = 0.0;
  double residual = 0.0;            // RMS of the fit residuals in the window
  double prefactor_exponent = 0.0;  // fit is on log(T^kappa N(T))
};

// Sorted census lengths up to T.
using CensusFn = std::function<std::vector<double>(const RoofFunction&, std::size_t L, double T)>;

// Least squares of log(T^kappa N(T)) against T over the top half of the grid. kappa = 1 removes
// the 1/T prefactor of prime-orbit counts; kappa = 0 is the plain fit.
GrowthEstimate growth_rate(const CensusFn& census, const RoofFunction& roof, std::size_t L,
                           const std::vector<double>& T_grid, double prefactor_exponent);

// N(T) on a grid from one sorted list of lengths.
std::vector<std::uint64_t> cumulative_counts(const std::vector<double>& sorted_lengths, const std::vector<double>& grid);

// Class index per word, grouping by canonical necklace.
std::vector<std::size_t> necklace_classes(const std::vector<Word>& words);

// Grouping by canonical necklace agrees with brute-force rotation equivalence.
bool verify_cyclic_injectivity(const std::vector<Word>& words);

}  // namespace hsc
