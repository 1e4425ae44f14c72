#pragma once

#include <cstdint>

#include "hsc/word.hpp"

namespace hsc {

// Eventually periodic bi-infinite sequence:
//   x_i = middle[i - start]                      for start <= i < start + |middle|
//   x_i = future[(i - start - |middle|) mod |future|]   to the right
//   x_i = past[(i - start) mod |past|]           to the left (past.back() sits at start - 1)
class Sequence {
 public:
  Sequence(Word past, Word middle, Word future, std::int64_t start = 0);

  static Sequence periodic(const Word& block, std::int64_t phase = 0);

  Symbol at(std::int64_t i) const;
  Word window(std::int64_t from, std::size_t length) const;

  // sigma^k: (sigma^k x)_i = x_{i+k}.
  Sequence shifted(std::int64_t k) const;

  const Word& past() const { return past_; }
  const Word& middle() const { return middle_; }
  const Word& future() const { return future_; }
  std::int64_t start() const { return start_; }

  // Indices outside [left_edge, right_edge) lie in the periodic tails.
  std::int64_t left_edge() const { return start_; }
  std::int64_t right_edge() const { return start_ + static_cast<std::int64_t>(middle_.size()); }

 private:
  Word past_, middle_, future_;
  std::int64_t start_;
};

struct PeriodicPoint {
  Necklace block;
  std::size_t phase = 0;  // x_i = block[(i + phase) mod n]

  PeriodicPoint(Necklace b, std::size_t ph);
  Sequence sequence() const;
};

struct FlowPoint {
  Sequence base;
  double height = 0.0;
};

// exp(-min{|n| : x_n != y_n}); 0 when the sequences agree everywhere.
double symbolic_distance(const Sequence& x, const Sequence& y);

// Smallest |n| with x_n != y_n, or -1 if the sequences are equal.
std::int64_t first_difference(const Sequence& x, const Sequence& y);

}  // namespace hsc
