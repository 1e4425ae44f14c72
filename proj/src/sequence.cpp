#include "hsc/sequence.hpp"

#include <cmath>
#include <numeric>

#include "hsc/error.hpp"

namespace hsc {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Sequence::Sequence(Word past, Word middle, Word future, std::int64_t start)
    : past_(std::move(past)), middle_(std::move(middle)), future_(std::move(future)), start_(start) {
  if (past_.empty() || future_.empty()) throw InvalidInput("sequence tails must be nonempty");
}

Sequence Sequence::periodic(const Word& block, std::int64_t phase) {
  if (block.empty()) throw InvalidInput("periodic block must be nonempty");
  return Sequence(block, {}, block, -floor_mod(phase, static_cast<std::int64_t>(block.size())));
}

Symbol Sequence::at(std::int64_t i) const {
  const auto m = static_cast<std::int64_t>(middle_.size());
  if (i >= start_ && i < start_ + m) return middle_[static_cast<std::size_t>(i - start_)];
  if (i >= start_ + m) {
    return future_[static_cast<std::size_t>(floor_mod(i - start_ - m, static_cast<std::int64_t>(future_.size())))];
  }
  return past_[static_cast<std::size_t>(floor_mod(i - start_, static_cast<std::int64_t>(past_.size())))];
}

Word Sequence::window(std::int64_t from, std::size_t length) const {
  Word w(length);
  for (std::size_t j = 0; j < length; ++j) w[j] = at(from + static_cast<std::int64_t>(j));
  return w;
}

Sequence Sequence::shifted(std::int64_t k) const { return Sequence(past_, middle_, future_, start_ - k); }

PeriodicPoint::PeriodicPoint(Necklace b, std::size_t ph) : block(std::move(b)), phase(ph) {
  if (phase >= block.period_length()) throw InvalidInput("phase must be below the period length");
}

Sequence PeriodicPoint::sequence() const {
  return Sequence::periodic(block.canonical(), static_cast<std::int64_t>(phase));
}

namespace {

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  std::int64_t r;
  if (__builtin_mul_overflow(a / g, b, &r)) throw Overflow("tail period lcm overflow");
  return r;
}

}  // namespace

std::int64_t first_difference(const Sequence& x, const Sequence& y) {
  // Beyond the middles both sides are periodic with period lcm of the tails,
  // so a window of one lcm past the furthest edge decides equality.
  const std::int64_t right = std::max(x.right_edge(), y.right_edge());
  const std::int64_t left = std::min(x.left_edge(), y.left_edge());
  const std::int64_t lf = checked_lcm(static_cast<std::int64_t>(x.future().size()),
                                      static_cast<std::int64_t>(y.future().size()));
  const std::int64_t lp = checked_lcm(static_cast<std::int64_t>(x.past().size()),
                                      static_cast<std::int64_t>(y.past().size()));
  const std::int64_t hi = std::max<std::int64_t>(right, 0) + lf;
  const std::int64_t lo = std::min<std::int64_t>(left, 0) - lp;
  const std::int64_t reach = std::max(hi, -lo);
  for (std::int64_t k = 0; k <= reach; ++k) {
    if (k <= hi && x.at(k) != y.at(k)) return k;
    if (-k >= lo && x.at(-k) != y.at(-k)) return k;
  }
  return -1;
}

double symbolic_distance(const Sequence& x, const Sequence& y) {
  const std::int64_t k = first_difference(x, y);
  return k < 0 ? 0.0 : std::exp(-static_cast<double>(k));
}

}  // namespace hsc
