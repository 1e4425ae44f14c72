#include "hsc/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hsc/error.hpp"

namespace hsc {

namespace {

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace

CylinderFunction::CylinderFunction(std::size_t alphabet_size, std::size_t depth)
    : alphabet_(alphabet_size), depth_(depth) {
  if (alphabet_size == 0 || depth == 0) throw InvalidInput("cylinder function needs alphabet and depth >= 1");
  std::size_t size = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    if (size > (std::size_t{1} << 26) / alphabet_size) throw InvalidInput("cylinder table too large");
    size *= alphabet_size;
  }
  values_.assign(size, 0.0);
  defined_.assign(size, 0);
  exact_.assign(size, std::nullopt);
}

CylinderFunction CylinderFunction::constant(std::size_t alphabet_size, double value) {
  CylinderFunction f(alphabet_size, 1);
  for (Symbol a = 0; a < alphabet_size; ++a) f.set(Word{a}, value);
  return f;
}

CylinderFunction CylinderFunction::constant(std::size_t alphabet_size, Rational value) {
  CylinderFunction f(alphabet_size, 1);
  for (Symbol a = 0; a < alphabet_size; ++a) f.set(Word{a}, value);
  return f;
}

CylinderFunction CylinderFunction::per_symbol(const std::vector<double>& values) {
  CylinderFunction f(values.size(), 1);
  for (Symbol a = 0; a < values.size(); ++a) f.set(Word{a}, values[a]);
  return f;
}

CylinderFunction CylinderFunction::per_symbol(const std::vector<Rational>& values) {
  CylinderFunction f(values.size(), 1);
  for (Symbol a = 0; a < values.size(); ++a) f.set(Word{a}, values[a]);
  return f;
}

std::size_t CylinderFunction::index(const Word& w) const {
  if (w.size() != depth_) throw InvalidInput("cylinder word has length " + std::to_string(w.size()) +
                                             ", expected " + std::to_string(depth_));
  std::size_t idx = 0;
  for (Symbol a : w) {
    if (a >= alphabet_) throw InvalidInput("symbol " + std::to_string(a) + " outside alphabet");
    idx = idx * alphabet_ + a;
  }
  return idx;
}

Word CylinderFunction::word_at(std::size_t index) const {
  Word w(depth_);
  for (std::size_t i = depth_; i-- > 0;) {
    w[i] = static_cast<Symbol>(index % alphabet_);
    index /= alphabet_;
  }
  return w;
}

void CylinderFunction::set(const Word& w, double value) {
  if (!std::isfinite(value)) throw InvalidInput("cylinder value must be finite");
  const std::size_t i = index(w);
  values_[i] = value;
  defined_[i] = 1;
  exact_[i] = std::nullopt;
}

void CylinderFunction::set(const Word& w, Rational value) {
  const std::size_t i = index(w);
  values_[i] = to_double(value);
  defined_[i] = 1;
  exact_[i] = value;
}

double CylinderFunction::value(const Word& w) const {
  const std::size_t i = index(w);
  if (!defined_[i]) throw InvalidInput("cylinder function undefined on " + to_string(w));
  return values_[i];
}

std::optional<Rational> CylinderFunction::exact_value(const Word& w) const {
  const std::size_t i = index(w);
  if (!defined_[i]) throw InvalidInput("cylinder function undefined on " + to_string(w));
  return exact_[i];
}

double CylinderFunction::at(const Sequence& x, std::int64_t i) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < depth_; ++j) {
    const Symbol a = x.at(i + static_cast<std::int64_t>(j));
    if (a >= alphabet_) throw InvalidInput("sequence symbol outside alphabet");
    idx = idx * alphabet_ + a;
  }
  if (!defined_[idx]) throw InvalidInput("cylinder function undefined on " + to_string(word_at(idx)));
  return values_[idx];
}

std::optional<Rational> CylinderFunction::exact_at(const Sequence& x, std::int64_t i) const {
  return exact_value(x.window(i, depth_));
}

bool CylinderFunction::exact() const {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (defined_[i] && !exact_[i]) return false;
  return true;
}

CylinderFunction CylinderFunction::scaled(double c) const {
  CylinderFunction f(*this);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    f.values_[i] = c * values_[i];
    f.exact_[i] = std::nullopt;
  }
  return f;
}

double CylinderFunction::min_defined() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (defined_[i]) m = std::min(m, values_[i]);
  return m;
}

double CylinderFunction::max_defined() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (defined_[i]) m = std::max(m, values_[i]);
  return m;
}

namespace {

void check_roof(const CylinderFunction& f, const TransitionGraph* g) {
  for (std::size_t i = 0; i < f.table_size(); ++i) {
    const Word w = f.word_at(i);
    const bool needed = g == nullptr || g->admissible(w, false);
    if (!needed) continue;
    if (!f.defined(w)) throw InvalidInput("roof undefined on admissible word " + to_string(w));
    const double v = f.value(w);
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("roof value on " + to_string(w) + " must be positive");
  }
}

}  // namespace

RoofFunction::RoofFunction(CylinderFunction f) : CylinderFunction(std::move(f)) { check_roof(*this, nullptr); }

RoofFunction::RoofFunction(CylinderFunction f, const TransitionGraph& g) : CylinderFunction(std::move(f)) {
  if (g.alphabet_size() != alphabet_size()) throw InvalidInput("roof alphabet differs from graph alphabet");
  check_roof(*this, &g);
}

}  // namespace hsc
