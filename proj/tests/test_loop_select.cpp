#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hsc/error.hpp"
#include "hsc/loop_select.hpp"
#include "hsc/suspension.hpp"
#include "oracles.hpp"

using namespace hsc;

namespace {

std::vector<std::size_t> random_ranks(std::mt19937_64& rng, std::size_t k) {
  std::vector<std::size_t> r(k);
  std::iota(r.begin(), r.end(), 0);
  std::shuffle(r.begin(), r.end(), rng);
  return r;
}

}  // namespace

TEST(Harvest, Examples) {
  const auto g = TransitionGraph::full_shift(2);
  const auto half = MarkovMeasure::bernoulli({0.5, 0.5});
  const auto phi = CylinderFunction::constant(2, -1.0);
  const auto h8 = harvest_loops(g, half, phi, 0.1, 8);
  EXPECT_EQ(h8.loops.size(), 128u);
  EXPECT_EQ(h8.base_vertex, 0u);
  EXPECT_TRUE(h8.certified);
  const auto h4 = harvest_loops(g, half, phi, 0.1, 4);
  EXPECT_EQ(h4.loops.size(), 8u);
  EXPECT_FALSE(h4.certified);
  const auto big = harvest_loops(g, half, phi, 2.0, 4);
  EXPECT_LT(big.threshold, 1.0);
  EXPECT_TRUE(big.certified);
  EXPECT_THROW(harvest_loops(g, half, phi, 0.0, 4), InvalidInput);
}

TEST(Harvest, ConstantPotentialCountMatchesTransferMatrix) {
  const TransitionGraph golden(2, {{0, 0}, {0, 1}, {1, 0}});
  const auto mu = MarkovMeasure::markov({{0.6, 0.4}, {1.0, 0.0}}, {1 / 1.4, 0.4 / 1.4});
  for (std::size_t m = 1; m <= 12; ++m) {
    const auto h = harvest_loops(golden, mu, CylinderFunction::constant(2, 1.0), 0.05, m, 2);
    // trace-free count of loops at A: (M^m)_{AA} for M = [[1,1],[1,0]] is Fibonacci F(m+1).
    std::uint64_t a = 1, b = 1;
    for (std::size_t i = 1; i < m; ++i) {
      const auto c = a + b;
      a = b;
      b = c;
    }
    EXPECT_EQ(h.loops.size(), b) << m;
  }
}

TEST(Harvest, LoopPressureExceedsPressureMinusTwoEps) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const double p = 0.2 + 0.6 * (rng() % 1000) / 1000.0;
    const auto mu = MarkovMeasure::bernoulli({p, 1 - p});
    const auto phi = CylinderFunction::per_symbol(std::vector<double>{-1.0, -1.5});
    const auto h = harvest_loops(TransitionGraph::full_shift(2), mu, phi, 0.3, 10);
    if (!h.certified) continue;
    EXPECT_GT(loop_pressure_sum(h.loops, phi, h.length), pressure(mu, phi) - 2 * h.epsilon);
  }
}

TEST(Concatenation, ConstantRoofPassesAtAnyDepth) {
  const auto h = harvest_loops(TransitionGraph::full_shift(2), MarkovMeasure::bernoulli({0.5, 0.5}),
                               CylinderFunction::constant(2, -1.0), 0.1, 4);
  const auto c = verify_concatenations(h, CylinderFunction::constant(2, -1.0), 3);
  EXPECT_TRUE(c.passed);
  EXPECT_TRUE(c.exhaustive);
  EXPECT_EQ(c.tuples_checked, 8u + 64u + 512u);
}

TEST(Concatenation, MatchesDirectPairLoop) {
  const auto r = CylinderFunction::per_symbol(std::vector<double>{1.0, 2.0});
  const auto mu = MarkovMeasure::bernoulli({0.5, 0.5});
  const auto h = harvest_loops(TransitionGraph::full_shift(2), mu, r, 0.08, 6);
  ASSERT_FALSE(h.loops.empty());
  bool direct = true;
  for (const Word& a : h.loops) {
    if (std::abs(birkhoff_sum(r, Sequence::periodic(a), 6) - 6 * h.mean_potential) > 6 * h.epsilon + 1e-9) direct = false;
    for (const Word& b : h.loops) {
      Word ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      if (std::abs(birkhoff_sum(r, Sequence::periodic(ab), 12) - 12 * h.mean_potential) > 12 * h.epsilon + 1e-9) direct = false;
    }
  }
  EXPECT_EQ(verify_concatenations(h, r, 2).passed, direct);
  // Depth-1 roofs make concatenated sums additive, so the window survives.
  EXPECT_TRUE(direct);
}

TEST(Concatenation, DepthTwoPotentialCanFail) {
  CylinderFunction f(2, 2);
  f.set(word_from_string("AA"), 0.0);
  f.set(word_from_string("AB"), 3.0);
  f.set(word_from_string("BA"), -3.0);
  f.set(word_from_string("BB"), 0.0);
  LoopHarvest h;
  h.loops = {word_from_string("AB"), word_from_string("AA")};
  h.length = 2;
  h.epsilon = 0.1;
  h.mean_potential = 0.0;
  // Cyclic words hold as many AB as BA seams, so every periodic sum vanishes.
  EXPECT_TRUE(verify_concatenations(h, f, 3).passed);
  h.loops = {word_from_string("AB")};
  h.mean_potential = 1.0;
  EXPECT_FALSE(verify_concatenations(h, f, 1).passed);
}

TEST(Concatenation, SampledModeIsReportedAndSeeded) {
  const auto h = harvest_loops(TransitionGraph::full_shift(2), MarkovMeasure::bernoulli({0.5, 0.5}),
                               CylinderFunction::constant(2, -1.0), 0.1, 8);
  const auto a = verify_concatenations(h, CylinderFunction::constant(2, -1.0), 3, 5);
  EXPECT_TRUE(a.passed);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.tuples_checked, 128u + 16384u + 100000u);
}

TEST(BoundedSubsequence, Examples) {
  EXPECT_EQ(bounded_subsequence({1, 2, 3, 4, 5}).size(), 5u);
  EXPECT_THROW(bounded_subsequence({}), InvalidInput);
  EXPECT_THROW(bounded_subsequence({1, 1}), InvalidInput);
  EXPECT_FALSE(is_bounded_subsequence({3, 1, 2}, {0, 1, 2}));
  EXPECT_TRUE(is_bounded_subsequence({3, 1, 2}, {1, 2}));
}

TEST(BoundedSubsequence, OptimalOnAllPermutationsUpToEight) {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<std::uint64_t> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
      const auto idx = bounded_subsequence(v);
      ASSERT_TRUE(is_bounded_subsequence(v, idx));
      ASSERT_GE(idx.size() * 5, n);
      if (n <= 7 || v[0] % 3 == 0) ASSERT_EQ(idx.size(), oracle::longest_bounded(v));
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST(BoundedSubsequence, RandomFortyFloor) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 2000; ++t) {
    std::vector<std::uint64_t> v(40);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    const auto idx = bounded_subsequence(v);
    ASSERT_TRUE(is_bounded_subsequence(v, idx));
    ASSERT_GE(idx.size(), 8u);
  }
}

TEST(Weave, ExampleAndLength) {
  const Word w = weave_loops(word_from_string("AB"), {word_from_string("BA")}, {word_from_string("AA")},
                             [](std::size_t, std::size_t, std::size_t) { return 0; }, 1, 1, 1);
  EXPECT_EQ(w, word_from_string("ABAABAAB"));
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + rng() % 4, s = 1 + rng() % 3, n = 1 + rng() % 3, q = rng() % 4, d = 1 + rng() % 3;
    std::vector<Word> betas, gammas;
    for (std::size_t j = 0; j < d; ++j) betas.push_back(oracle::random_word(rng, 2, m));
    for (std::size_t j = 0; j < 3; ++j) gammas.push_back(oracle::random_word(rng, 2, m));
    const Word out = weave_loops(oracle::random_word(rng, 2, m), betas, gammas,
                                 [&](std::size_t i, std::size_t j, std::size_t k) { return (i + j + k) % 3; }, s, n, q);
    EXPECT_EQ(out.size(), (2 * s + n * d * (q + 1)) * m);
  }
  EXPECT_THROW(weave_loops(word_from_string("AB"), {word_from_string("A")}, {}, {}, 1, 1, 0), InvalidInput);
}

TEST(Weave, PrimitiveWhenAlphaBlocksDominate) {
  // alpha primitive, some beta != alpha and 2s >= n d (q + 1) + 2.
  std::mt19937_64 rng(12);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 3, d = 1 + rng() % 3, q = rng() % 4;
    const std::size_t s = (n * d * (q + 1) + 3) / 2 + rng() % 2;
    Word alpha;
    do alpha = oracle::random_word(rng, 2, m);
    while (!oracle::primitive(alpha));
    std::vector<Word> betas, gammas;
    while (betas.size() < d) {
      Word b = oracle::random_word(rng, 2, m);
      if (b != alpha) betas.push_back(b);
    }
    for (int j = 0; j < 3; ++j) gammas.push_back(oracle::random_word(rng, 2, m));
    const Word out = weave_loops(alpha, betas, gammas, [&](std::size_t, std::size_t, std::size_t) { return rng() % 3; }, s,
                                 n, q);
    ASSERT_TRUE(oracle::primitive(out)) << to_string(out);
  }
}

TEST(Weave, ShortAlphaRunsCanBePeriodicOffBlock) {
  // s = 1, q = 0: BA|AB|AB|AA|BA = (BAABA)^2, a period that is not a multiple of the block length.
  const Word out = weave_loops(word_from_string("BA"), {word_from_string("AB"), word_from_string("AB"), word_from_string("AA")},
                               {}, {}, 1, 1, 0);
  EXPECT_EQ(out, word_from_string("BAABABAABA"));
  EXPECT_FALSE(is_primitive(out));
}

TEST(Weave, LongGammaRunsCanBePeriodic) {
  // q = 3 > 2s - 1: alpha = AB, beta = AA, gammas AA, AB, AB give (ABAAAB)^2.
  const Word out = weave_loops(word_from_string("AB"), {word_from_string("AA")},
                               {word_from_string("AA"), word_from_string("AB")},
                               [](std::size_t, std::size_t, std::size_t t) { return t == 0 ? 0 : 1; }, 1, 1, 3);
  EXPECT_EQ(out, word_from_string("ABAAABABAAAB"));
  EXPECT_FALSE(is_primitive(out));
}

TEST(Selection, IdentityAndReverse) {
  std::vector<std::size_t> id(200);
  std::iota(id.begin(), id.end(), 0);
  const std::vector<bool> keep(200, true);
  const auto a = select_ordered_symbols(id, id, keep);
  EXPECT_TRUE(check_selection(a, id, id, keep));
  EXPECT_GE(a.omegas.size(), 2u);
  EXPECT_TRUE(a.certified);

  std::vector<std::size_t> fwd(300), rev(300);
  std::iota(fwd.begin(), fwd.end(), 0);
  for (std::size_t i = 0; i < 300; ++i) rev[i] = 299 - i;
  const std::vector<bool> keep3(300, false);
  const auto b = select_ordered_symbols(fwd, rev, keep3);
  EXPECT_TRUE(check_selection(b, fwd, rev, keep3));
  EXPECT_FALSE(b.keeps_orientation);
  EXPECT_GE(b.omegas.size(), 3u);
}

TEST(Selection, SmallIsUncertified) {
  const std::vector<std::size_t> id{0, 1, 2, 3};
  const auto s = select_ordered_symbols(id, id, {true, true, true, true});
  EXPECT_FALSE(s.certified);
  EXPECT_TRUE(check_selection(s, id, id, {true, true, true, true}));
  EXPECT_THROW(select_ordered_symbols({0, 1, 2}, {0, 1, 2}, {true, true, true}), InvalidInput);
  EXPECT_THROW(select_ordered_symbols({0, 0, 2, 3}, {0, 1, 2, 3}, {true, true, true, true}), InvalidInput);
}

TEST(Selection, RandomOrdersMixedOrientation) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t K = 200 + rng() % 200;
    const auto rs = random_ranks(rng, K), ru = random_ranks(rng, K);
    std::vector<bool> keep(K);
    for (std::size_t i = 0; i < K; ++i) keep[i] = rng() % 3 != 0;
    const auto sel = select_ordered_symbols(rs, ru, keep);
    ASSERT_TRUE(check_selection(sel, rs, ru, keep));
    ASSERT_GE(sel.omegas.size(), K / 100);
  }
}

TEST(Selection, CheckerRejectsBrokenBrackets) {
  std::vector<std::size_t> id(10);
  std::iota(id.begin(), id.end(), 0);
  OrderedSelection s;
  s.theta_mm = 0;
  s.theta_m = 2;
  s.theta_p = 7;
  s.theta_pp = 9;
  s.omegas = {4, 5};
  const std::vector<bool> keep(10, true);
  EXPECT_TRUE(check_selection(s, id, id, keep));
  s.omegas = {8};
  EXPECT_FALSE(check_selection(s, id, id, keep));
  s.omegas = {2};
  EXPECT_FALSE(check_selection(s, id, id, keep));
}
