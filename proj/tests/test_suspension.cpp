#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hsc/cylinder.hpp"
#include "hsc/error.hpp"
#include "hsc/suspension.hpp"
#include "oracles.hpp"

using namespace hsc;

namespace {

RoofFunction roof12() { return RoofFunction(CylinderFunction::per_symbol(std::vector<Rational>{1, 2})); }

RoofFunction random_depth2(std::mt19937_64& rng) {
  CylinderFunction f(2, 2);
  for (std::size_t i = 0; i < 4; ++i) f.set(f.word_at(i), Rational(1 + static_cast<std::int64_t>(rng() % 7), 1 + static_cast<std::int64_t>(rng() % 3)));
  return RoofFunction(f);
}

}  // namespace

TEST(Roof, Validation) {
  EXPECT_THROW(RoofFunction(CylinderFunction::per_symbol(std::vector<double>{1.0, 0.0})), InvalidInput);
  CylinderFunction partial(2, 2);
  partial.set(word_from_string("AA"), Rational(1));
  partial.set(word_from_string("AB"), Rational(2));
  partial.set(word_from_string("BA"), Rational(3));
  EXPECT_THROW(RoofFunction{partial}, InvalidInput);
  const TransitionGraph golden(2, {{0, 0}, {0, 1}, {1, 0}});
  EXPECT_NO_THROW(RoofFunction(partial, golden));
}

TEST(Birkhoff, Examples) {
  const auto r = roof12();
  const PeriodicPoint p(Necklace(word_from_string("ABB")), 0);
  EXPECT_DOUBLE_EQ(birkhoff_sum(r, p, 3), 5.0);
  EXPECT_DOUBLE_EQ(birkhoff_sum(r, p, 0), 0.0);
  EXPECT_DOUBLE_EQ(birkhoff_sum(r, p, -3), -5.0);
  EXPECT_EQ(birkhoff_sum_exact(r, p.sequence(), -3), Rational(-5));
}

TEST(Birkhoff, CocycleExactOnRandomPoints) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    const auto r = random_depth2(rng);
    const Sequence x(oracle::random_word(rng, 2, 1 + rng() % 3), oracle::random_word(rng, 2, rng() % 4),
                     oracle::random_word(rng, 2, 1 + rng() % 3), static_cast<std::int64_t>(rng() % 5) - 2);
    const std::int64_t m = static_cast<std::int64_t>(rng() % 21) - 10, n = static_cast<std::int64_t>(rng() % 21) - 10;
    EXPECT_EQ(birkhoff_sum_exact(r, x, m + n), birkhoff_sum_exact(r, x, m) + birkhoff_sum_exact(r, x.shifted(m), n));
    EXPECT_NEAR(birkhoff_sum(r, x, m + n), boost::rational_cast<double>(birkhoff_sum_exact(r, x, m + n)), 1e-12);
  }
}

TEST(Flow, Examples) {
  const auto one = RoofFunction(CylinderFunction::constant(2, Rational(1)));
  const FlowPoint a{Sequence::periodic({0}), 0.4};
  const FlowPoint s = flow_step(one, a, 0.8);
  EXPECT_NEAR(s.height, 0.2, 1e-12);
  EXPECT_EQ(flow_shift_count(one, a, 0.8), 1);
  const FlowPoint z = flow_step(one, a, 0.0);
  EXPECT_EQ(z.height, 0.4);

  const auto r = roof12();
  const FlowPoint b{Sequence::periodic(word_from_string("AB"), 0), 0.5};
  const FlowPoint c = flow_step(r, b, 2.0);
  EXPECT_NEAR(c.height, 1.5, 1e-12);
  EXPECT_EQ(c.base.at(0), 1u);
  EXPECT_EQ(flow_shift_count(r, b, 2.0), 1);
}

TEST(Flow, GroupLawAndInverse) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> tau(-12.0, 12.0);
  for (int t = 0; t < 500; ++t) {
    const auto r = random_depth2(rng);
    const Sequence base(oracle::random_word(rng, 2, 1 + rng() % 3), oracle::random_word(rng, 2, rng() % 3),
                        oracle::random_word(rng, 2, 1 + rng() % 3));
    const double h = r.at(base, 0) * 0.37;
    const FlowPoint x{base, h};
    const double a = tau(rng), b = tau(rng);
    const FlowPoint ab = flow_step(r, flow_step(r, x, a), b);
    const FlowPoint direct = flow_step(r, x, a + b);
    EXPECT_NEAR(ab.height, direct.height, 1e-9);
    EXPECT_EQ(ab.base.window(-10, 21), direct.base.window(-10, 21));
    const FlowPoint back = flow_step(r, flow_step(r, x, a), -a);
    EXPECT_NEAR(back.height, x.height, 1e-9);
    EXPECT_EQ(back.base.window(-10, 21), x.base.window(-10, 21));
  }
}

TEST(Orbit, PeriodExamplesAndInvariants) {
  const auto one = RoofFunction(CylinderFunction::constant(2, Rational(1)));
  EXPECT_DOUBLE_EQ(orbit_period(one, Necklace(word_from_string("ABBAB"))), 5.0);
  EXPECT_DOUBLE_EQ(orbit_period(roof12(), Necklace(word_from_string("ABB"))), 5.0);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const auto r = random_depth2(rng);
    const Word w = oracle::random_word(rng, 2, 1 + rng() % 8);
    const Necklace nk(w);
    const double per = orbit_period(r, nk);
    for (std::size_t ph = 0; ph < nk.period_length(); ++ph)
      EXPECT_NEAR(birkhoff_sum(r, PeriodicPoint(nk, ph), static_cast<std::int64_t>(w.size())), per, 1e-12);
    Word ww = w;
    ww.insert(ww.end(), w.begin(), w.end());
    EXPECT_NEAR(orbit_period(r, Necklace(ww)), 2 * per, 1e-9);
    const FlowPoint x{PeriodicPoint(nk, 0).sequence(), 0.0};
    const FlowPoint y = flow_step(r, x, per);
    EXPECT_NEAR(y.height, 0.0, 1e-9);
    EXPECT_EQ(y.base.window(-5, 11), x.base.window(-5, 11));
  }
}

TEST(BowenWalters, MetricSanity) {
  const auto r = roof12();
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const FlowPoint a{Sequence::periodic(oracle::random_word(rng, 2, 1 + rng() % 4)), 0.3};
    const FlowPoint b{Sequence::periodic(oracle::random_word(rng, 2, 1 + rng() % 4)), 0.6};
    EXPECT_NEAR(bowen_walters_distance(r, a, b), bowen_walters_distance(r, b, a), 1e-12);
    EXPECT_EQ(bowen_walters_distance(r, a, a), 0.0);
    EXPECT_GE(bowen_walters_distance(r, a, b), 0.0);
  }
}
