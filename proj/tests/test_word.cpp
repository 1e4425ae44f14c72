#include <gtest/gtest.h>

#include <map>
#include <random>

#include "hsc/error.hpp"
#include "hsc/word.hpp"
#include "oracles.hpp"

using namespace hsc;

TEST(Word, LetterRoundTrip) {
  EXPECT_EQ(word_from_string("ABBA"), (Word{0, 1, 1, 0}));
  EXPECT_EQ(to_string(Word{0, 1, 1, 0}), "ABBA");
  EXPECT_THROW(word_from_string("Ab"), InvalidInput);
}

TEST(Necklace, CanonicalExamples) {
  EXPECT_EQ(canonical_necklace(word_from_string("BAAB")).canonical(), word_from_string("AABB"));
  EXPECT_EQ(canonical_necklace(word_from_string("AAA")).canonical(), word_from_string("AAA"));
}

TEST(Necklace, LeastRotationMatchesBruteForceRandom) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + rng() % 12;
    const Word w = oracle::random_word(rng, 1 + rng() % 3, n);
    EXPECT_EQ(rotate(w, least_rotation(w)), oracle::min_rotation(w)) << to_string(w);
  }
}

TEST(Necklace, RotationInvariantExhaustive) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (const Word& w : oracle::all_words(3, n)) {
      const Necklace base(w);
      ASSERT_EQ(base.canonical(), oracle::min_rotation(w));
      for (std::size_t k = 0; k < n; ++k) ASSERT_EQ(Necklace(rotate(w, k)), base);
    }
  }
}

TEST(Necklace, Primitivity) {
  EXPECT_TRUE(is_primitive(word_from_string("AAB")));
  EXPECT_FALSE(is_primitive(word_from_string("ABAB")));
  EXPECT_TRUE(is_primitive(word_from_string("A")));
  EXPECT_EQ(primitive_root(word_from_string("ABCABC")), word_from_string("ABC"));
  for (std::size_t n = 1; n <= 10; ++n)
    for (const Word& w : oracle::all_words(2, n)) ASSERT_EQ(is_primitive(w), oracle::primitive(w));
}

TEST(Necklace, CountExamples) {
  EXPECT_EQ(count_necklaces(2, 3), 4u);
  EXPECT_EQ(count_necklaces(2, 1), 2u);
  EXPECT_EQ(count_necklaces(3, 4), 24u);
  for (std::size_t L = 1; L <= 3; ++L)
    for (std::size_t n = 1; n <= 9; ++n) EXPECT_EQ(count_necklaces(L, n), oracle::necklace_count(L, n));
}

TEST(Necklace, CountOverflowSignalled) {
  EXPECT_THROW(count_necklaces(2, 200), Overflow);
  EXPECT_THROW(count_necklaces(0, 3), InvalidInput);
}

TEST(Necklace, OrbitSizesPartitionAllWords) {
  for (std::size_t L = 2; L <= 3; ++L) {
    for (std::size_t n = 1; n <= 8; ++n) {
      std::map<Word, std::size_t> orbit;
      for (const Word& w : oracle::all_words(L, n)) ++orbit[Necklace(w).canonical()];
      std::uint64_t total = 0;
      for (auto& [c, size] : orbit) {
        EXPECT_EQ(size, primitive_root(c).size());
        total += size;
      }
      std::uint64_t Ln = 1;
      for (std::size_t i = 0; i < n; ++i) Ln *= L;
      EXPECT_EQ(total, Ln);
    }
  }
}
