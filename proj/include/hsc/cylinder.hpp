#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "hsc/graph.hpp"
#include "hsc/sequence.hpp"

namespace hsc {

using Rational = boost::rational<std::int64_t>;

// Function of the forward cylinder x_0..x_{k-1}; dense table over L^k words.
class CylinderFunction {
 public:
  CylinderFunction(std::size_t alphabet_size, std::size_t depth);

  static CylinderFunction constant(std::size_t alphabet_size, double value);
  static CylinderFunction constant(std::size_t alphabet_size, Rational value);
  static CylinderFunction per_symbol(const std::vector<double>& values);
  static CylinderFunction per_symbol(const std::vector<Rational>& values);

  std::size_t alphabet_size() const { return alphabet_; }
  std::size_t depth() const { return depth_; }
  std::size_t table_size() const { return values_.size(); }

  void set(const Word& w, double value);
  void set(const Word& w, Rational value);
  bool defined(const Word& w) const { return defined_[index(w)]; }
  double value(const Word& w) const;
  std::optional<Rational> exact_value(const Word& w) const;

  // Value on sigma^i x.
  double at(const Sequence& x, std::int64_t i) const;
  std::optional<Rational> exact_at(const Sequence& x, std::int64_t i) const;

  // True iff every defined entry carries an exact rational value.
  bool exact() const;

  CylinderFunction scaled(double c) const;

  std::size_t index(const Word& w) const;
  Word word_at(std::size_t index) const;

  double min_defined() const;
  double max_defined() const;

 private:
  std::size_t alphabet_;
  std::size_t depth_;
  std::vector<double> values_;
  std::vector<char> defined_;
  std::vector<std::optional<Rational>> exact_;
};

using Potential = CylinderFunction;

// Strictly positive, finite and defined on every admissible depth-k word.
class RoofFunction : public CylinderFunction {
 public:
  explicit RoofFunction(CylinderFunction f);
  RoofFunction(CylinderFunction f, const TransitionGraph& g);
};

}  // namespace hsc
