#pragma once

#include <vector>

#include "hsc/cylinder.hpp"
#include "hsc/graph.hpp"

namespace hsc {

// Bernoulli(p) or stationary Markov(P, pi) measure on the shift over L symbols.
class MarkovMeasure {
 public:
  static MarkovMeasure bernoulli(std::vector<double> weights);
  static MarkovMeasure markov(std::vector<std::vector<double>> P, std::vector<double> pi);

  bool is_bernoulli() const { return bernoulli_; }
  std::size_t alphabet_size() const { return pi_.size(); }
  // Single-symbol marginals (the weights for Bernoulli, pi for Markov).
  const std::vector<double>& marginals() const { return pi_; }
  double transition(Symbol a, Symbol b) const;

  double cylinder(const Word& w) const;

  // Every transition of positive probability is an edge of g.
  bool supported_on(const TransitionGraph& g) const;

 private:
  MarkovMeasure() = default;
  bool bernoulli_ = true;
  std::vector<double> pi_;
  std::vector<std::vector<double>> P_;
};

double measure_entropy(const MarkovMeasure& m);
double integrate(const CylinderFunction& pot, const MarkovMeasure& m);
double pressure(const MarkovMeasure& m, const CylinderFunction& pot);
double abramov_entropy(const MarkovMeasure& m, const RoofFunction& roof);

struct WeightSolution {
  double h = 0.0;               // root of sum_i exp(-h r_i) = 1
  std::vector<double> weights;  // p_i = exp(-h r_i)
};

WeightSolution solve_weight_equation(const std::vector<double>& roof_values);

// h_nu / (sum p_i r_i + p_max C) at the weights solving the equation above.
double entropy_lower_bound(const std::vector<double>& roof_values, double holder_slack);

// (1/n) log sum_i exp(phi_n(periodic extension of loop i)).
double loop_pressure_sum(const std::vector<Word>& loops, const CylinderFunction& pot, std::size_t n);

}  // namespace hsc
