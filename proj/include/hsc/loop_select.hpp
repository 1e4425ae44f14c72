#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hsc/cylinder.hpp"
#include "hsc/graph.hpp"
#include "hsc/thermo.hpp"

namespace hsc {

struct LoopHarvest {
  Symbol base_vertex = 0;
  std::size_t length = 0;
  std::vector<Word> loops;
  double epsilon = 0.0;
  double entropy = 0.0;         // h of the measure
  double mean_potential = 0.0;  // integral of the potential
  double threshold = 0.0;       // exp(m (h - epsilon))
  bool certified = false;
};

// Exhaustive loops at each vertex passing |phi_m - m * int phi| <= m * epsilon; the vertex with the
// most survivors wins (lowest index on ties).
LoopHarvest harvest_loops(const TransitionGraph& g, const MarkovMeasure& m, const CylinderFunction& pot,
                          double epsilon, std::size_t length, std::size_t threads = 1);

struct ConcatenationCheck {
  bool passed = true;
  bool exhaustive = true;
  std::uint64_t tuples_checked = 0;
};

// Birkhoff window for every concatenation of up to max_depth harvested loops; exhaustive when
// k^l <= 10^6, otherwise 10^5 seeded uniform samples at that depth.
ConcatenationCheck verify_concatenations(const LoopHarvest& h, const CylinderFunction& pot, std::size_t max_depth,
                                         std::uint64_t seed = 0);

// Longest index subsequence whose interior values lie between its endpoint values.
std::vector<std::size_t> bounded_subsequence(const std::vector<std::uint64_t>& seq);

bool is_bounded_subsequence(const std::vector<std::uint64_t>& seq, const std::vector<std::size_t>& indices);

// Gamma slot t (0 <= t < q) of block (i, j) draws gammas[select(i, j, t)].
using GammaSelector = std::function<std::size_t(std::size_t i, std::size_t j, std::size_t t)>;

// alpha^s  prod_{i<n} prod_{j<d} (gamma ... gamma beta_j)  alpha^s, with d = |betas|.
// The result is primitive when alpha is primitive, some beta differs from alpha and 2s >= n d (q + 1) + 2.
Word weave_loops(const Word& alpha, const std::vector<Word>& betas, const std::vector<Word>& gammas,
                 const GammaSelector& select, std::size_t s, std::size_t n, std::size_t q);

struct OrderedSelection {
  std::size_t theta_mm = 0, theta_pp = 0, theta_m = 0, theta_p = 0;
  std::vector<std::size_t> omegas;
  bool keeps_orientation = true;
  bool certified = false;
};

// rank_s[k], rank_u[k]: position of item k in the two orders; keeps[k]: orientation flag of item k.
OrderedSelection select_ordered_symbols(const std::vector<std::size_t>& rank_s, const std::vector<std::size_t>& rank_u,
                                        const std::vector<bool>& keeps);

// Direct check of every bracket condition in both orders plus the shared orientation.
bool check_selection(const OrderedSelection& sel, const std::vector<std::size_t>& rank_s,
                     const std::vector<std::size_t>& rank_u, const std::vector<bool>& keeps);

}  // namespace hsc
