#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hsc {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

// Letters A, B, ... for symbols 0, 1, ...; alphabets beyond 26 use the numeric form.
Word word_from_string(std::string_view letters);
std::string to_string(const Word& w);

Word rotate(const Word& w, std::size_t k);

// Index of the lexicographically least rotation (Booth).
std::size_t least_rotation(const Word& w);

// True iff no nontrivial rotation fixes w.
bool is_primitive(const Word& w);

// Shortest u with w = u^k.
Word primitive_root(const Word& w);

// Cyclic word, stored as its least rotation.
class Necklace {
 public:
  Necklace() = default;
  explicit Necklace(const Word& w);

  const Word& canonical() const { return canonical_; }
  std::size_t period_length() const { return canonical_.size(); }
  bool primitive() const { return is_primitive(canonical_); }

  auto operator<=>(const Necklace&) const = default;

 private:
  Word canonical_;
};

Necklace canonical_necklace(const Word& w);

// Number of cyclic words of length n over L letters; throws Overflow past 64 bits.
std::uint64_t count_necklaces(std::uint64_t alphabet_size, std::uint64_t length);

}  // namespace hsc
