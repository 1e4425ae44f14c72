#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hsc/error.hpp"
#include "hsc/sequence.hpp"
#include "oracles.hpp"

using namespace hsc;

namespace {

// Scan oracle: smallest |n| in a window wide enough to cover both preperiods and a joint period.
double scan_distance(const Sequence& x, const Sequence& y, std::int64_t reach) {
  for (std::int64_t n = 0; n <= reach; ++n)
    if (x.at(n) != y.at(n) || x.at(-n) != y.at(-n)) return std::exp(-static_cast<double>(n));
  return 0.0;
}

}  // namespace

TEST(Sequence, Indexing) {
  const Sequence s(word_from_string("AB"), word_from_string("C"), word_from_string("D"), 2);
  EXPECT_EQ(s.at(2), 2u);
  EXPECT_EQ(s.at(3), 3u);
  EXPECT_EQ(s.at(10), 3u);
  EXPECT_EQ(s.at(1), 1u);
  EXPECT_EQ(s.at(0), 0u);
  EXPECT_EQ(s.at(-1), 1u);
  EXPECT_EQ(s.shifted(2).at(0), 2u);
  EXPECT_EQ(Sequence::periodic(word_from_string("ABC"), 1).at(0), 1u);
}

TEST(Metric, Examples) {
  const auto A = Sequence::periodic({0}), B = Sequence::periodic({1});
  EXPECT_EQ(symbolic_distance(A, A), 0.0);
  EXPECT_EQ(symbolic_distance(A, B), 1.0);
  // Periodic blocks differing first at |n| = 5.
  EXPECT_DOUBLE_EQ(symbolic_distance(Sequence::periodic(word_from_string("AAAAABAAAA")),
                                     Sequence::periodic(word_from_string("AAAAAAAAAA"))),
                   std::exp(-5.0));
}

TEST(Metric, PhaseShiftedPeriodic) {
  // AAAAAAAAAB at phase 0 has B at 9, -1; phase 4 puts B at 5, -5.
  const Word w = word_from_string("AAAAAAAAAB");
  const auto p0 = Sequence::periodic(w, 0), p4 = Sequence::periodic(w, 4);
  EXPECT_DOUBLE_EQ(symbolic_distance(p0, p4), std::exp(-1.0));
  // B at +-10 versus B at 5 and -15.
  const Word v = word_from_string("AAAAAAAAAABAAAAAAAAA");
  EXPECT_DOUBLE_EQ(symbolic_distance(Sequence::periodic(v, 0), Sequence::periodic(v, 5)), std::exp(-5.0));
}

TEST(Metric, RandomAgainstScanOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    auto rw = [&](std::size_t lo) { return oracle::random_word(rng, 2, lo + rng() % 4); };
    const Sequence x(rw(1), rw(0), rw(1), static_cast<std::int64_t>(rng() % 7) - 3);
    const Sequence y(rw(1), rw(0), rw(1), static_cast<std::int64_t>(rng() % 7) - 3);
    const double d = symbolic_distance(x, y);
    EXPECT_DOUBLE_EQ(d, scan_distance(x, y, 200));
    EXPECT_DOUBLE_EQ(d, symbolic_distance(y, x));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
  }
}

TEST(Metric, AgreementWindowBound) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 500; ++t) {
    const std::size_t N = 1 + rng() % 6;
    const Word core = oracle::random_word(rng, 2, 2 * N + 1);
    Word tail1 = oracle::random_word(rng, 2, 3), tail2 = oracle::random_word(rng, 2, 3);
    const Sequence x(tail1, core, tail2, -static_cast<std::int64_t>(N));
    const Sequence y(tail2, core, tail1, -static_cast<std::int64_t>(N));
    EXPECT_LE(symbolic_distance(x, y), std::exp(-static_cast<double>(N)) * (1 + 1e-12));
  }
}
