#include "hsc/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hsc/error.hpp"
#include "hsc/suspension.hpp"

namespace hsc {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kStationaryTolerance = 1e-10;

void check_distribution(const std::vector<double>& p, const std::string& what) {
  if (p.empty()) throw InvalidInput(what + " is empty");
  double s = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidInput(what + " has a negative or non-finite entry");
    s += x;
  }
  if (std::abs(s - 1.0) > kSumTolerance) throw InvalidInput(what + " does not sum to 1");
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

MarkovMeasure MarkovMeasure::bernoulli(std::vector<double> weights) {
  check_distribution(weights, "weights");
  MarkovMeasure m;
  m.bernoulli_ = true;
  m.pi_ = std::move(weights);
  return m;
}

MarkovMeasure MarkovMeasure::markov(std::vector<std::vector<double>> P, std::vector<double> pi) {
  const std::size_t n = pi.size();
  check_distribution(pi, "pi");
  if (P.size() != n) throw InvalidInput("P must be square with the size of pi");
  for (std::size_t i = 0; i < n; ++i) {
    if (P[i].size() != n) throw InvalidInput("P must be square with the size of pi");
    check_distribution(P[i], "P row " + std::to_string(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += pi[i] * P[i][j];
    if (std::abs(s - pi[j]) > kStationaryTolerance) throw InvalidInput("pi is not stationary for P");
  }
  MarkovMeasure m;
  m.bernoulli_ = false;
  m.pi_ = std::move(pi);
  m.P_ = std::move(P);
  return m;
}

double MarkovMeasure::transition(Symbol a, Symbol b) const {
  if (a >= alphabet_size() || b >= alphabet_size()) throw InvalidInput("symbol outside measure alphabet");
  return bernoulli_ ? pi_[b] : P_[a][b];
}

double MarkovMeasure::cylinder(const Word& w) const {
  if (w.empty()) return 1.0;
  if (w[0] >= alphabet_size()) throw InvalidInput("symbol outside measure alphabet");
  double p = pi_[w[0]];
  for (std::size_t i = 1; i < w.size(); ++i) p *= transition(w[i - 1], w[i]);
  return p;
}

bool MarkovMeasure::supported_on(const TransitionGraph& g) const {
  if (g.alphabet_size() != alphabet_size()) return false;
  for (Symbol a = 0; a < alphabet_size(); ++a) {
    if (pi_[a] == 0.0) continue;
    for (Symbol b = 0; b < alphabet_size(); ++b)
      if (transition(a, b) > 0.0 && pi_[b] > 0.0 && !g.has_edge(a, b)) return false;
  }
  return true;
}

double measure_entropy(const MarkovMeasure& m) {
  const auto& pi = m.marginals();
  double h = 0.0;
  if (m.is_bernoulli()) {
    for (double p : pi) h -= xlogx(p);
    return h;
  }
  for (Symbol i = 0; i < pi.size(); ++i)
    for (Symbol j = 0; j < pi.size(); ++j) h -= pi[i] * xlogx(m.transition(i, j));
  return h;
}

double integrate(const CylinderFunction& pot, const MarkovMeasure& m) {
  if (pot.alphabet_size() != m.alphabet_size()) {
    throw InvalidInput("potential alphabet " + std::to_string(pot.alphabet_size()) + " differs from measure alphabet " +
                       std::to_string(m.alphabet_size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < pot.table_size(); ++i) {
    const Word w = pot.word_at(i);
    const double mu = m.cylinder(w);
    if (mu == 0.0) continue;
    if (!pot.defined(w)) throw InvalidInput("potential undefined on positive-measure cylinder " + to_string(w));
    s += mu * pot.value(w);
  }
  return s;
}

double pressure(const MarkovMeasure& m, const CylinderFunction& pot) { return measure_entropy(m) + integrate(pot, m); }

double abramov_entropy(const MarkovMeasure& m, const RoofFunction& roof) {
  return measure_entropy(m) / integrate(roof, m);
}

WeightSolution solve_weight_equation(const std::vector<double>& r) {
  if (r.size() < 2) throw InvalidInput("weight equation needs at least two roof values");
  for (double x : r)
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("roof values must be positive and finite");
  auto excess = [&](double h) {
    double s = 0.0;
    for (double x : r) s += std::exp(-h * x);
    return s - 1.0;
  };
  double lo = 0.0;
  double hi = std::log(static_cast<double>(r.size())) / *std::min_element(r.begin(), r.end()) + 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  WeightSolution out;
  out.h = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;
  for (double x : r) out.weights.push_back(std::exp(-out.h * x));
  if (std::abs(excess(out.h)) > kSumTolerance) throw NumericalFailure("weight equation residual above 1e-12");
  return out;
}

double entropy_lower_bound(const std::vector<double>& r, double holder_slack) {
  if (!(holder_slack >= 0.0)) throw InvalidInput("holder slack must be nonnegative");
  const WeightSolution sol = solve_weight_equation(r);
  double h_nu = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    h_nu -= xlogx(sol.weights[i]);
    mean += sol.weights[i] * r[i];
  }
  const double p_max = *std::max_element(sol.weights.begin(), sol.weights.end());
  return h_nu / (mean + p_max * holder_slack);
}

double loop_pressure_sum(const std::vector<Word>& loops, const CylinderFunction& pot, std::size_t n) {
  if (loops.empty()) throw InvalidInput("loop_pressure_sum needs at least one loop");
  if (n == 0) throw InvalidInput("loop length must be positive");
  std::vector<double> sums;
  sums.reserve(loops.size());
  for (const Word& w : loops) {
    if (w.size() != n) throw InvalidInput("loop length differs from n");
    sums.push_back(birkhoff_sum(pot, Sequence::periodic(w), static_cast<std::int64_t>(n)));
  }
  const double top = *std::max_element(sums.begin(), sums.end());
  double acc = 0.0;
  for (double s : sums) acc += std::exp(s - top);
  return (top + std::log(acc)) / static_cast<double>(n);
}

}  // namespace hsc
