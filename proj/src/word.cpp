#include "hsc/word.hpp"

#include <algorithm>
#include <numeric>

#include "hsc/error.hpp"

namespace hsc {

Word word_from_string(std::string_view letters) {
  Word w;
  w.reserve(letters.size());
  for (char c : letters) {
    if (c < 'A' || c > 'Z') throw InvalidInput("word letters must be A-Z, got '" + std::string(1, c) + "'");
    w.push_back(static_cast<Symbol>(c - 'A'));
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string s;
  bool letters = std::all_of(w.begin(), w.end(), [](Symbol a) { return a < 26; });
  if (letters) {
    for (Symbol a : w) s.push_back(static_cast<char>('A' + a));
    return s;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s.push_back('.');
    s += std::to_string(w[i]);
  }
  return s;
}

Word rotate(const Word& w, std::size_t k) {
  if (w.empty()) return w;
  Word out(w.size());
  std::rotate_copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k % w.size()), w.end(), out.begin());
  return out;
}

std::size_t least_rotation(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  // Booth's failure-function scan over the doubled word.
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const Symbol sj = w[j % n];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != w[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < w[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != w[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < w[(k + static_cast<std::size_t>(i) + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

namespace {

// Smallest p dividing n with w periodic of period p (prefix-function based).
std::size_t smallest_period(const Word& w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = pi[i - 1];
    while (j > 0 && w[i] != w[j]) j = pi[j - 1];
    if (w[i] == w[j]) ++j;
    pi[i] = j;
  }
  const std::size_t p = n - (n ? pi[n - 1] : 0);
  return (p > 0 && n % p == 0) ? p : n;
}

}  // namespace

bool is_primitive(const Word& w) { return w.empty() || smallest_period(w) == w.size(); }

Word primitive_root(const Word& w) {
  if (w.empty()) return w;
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(smallest_period(w)));
}

Necklace::Necklace(const Word& w) : canonical_(rotate(w, least_rotation(w))) {
  if (w.empty()) throw InvalidInput("necklace of an empty word");
}

Necklace canonical_necklace(const Word& w) { return Necklace(w); }

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("necklace count exceeds 64 bits");
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

std::uint64_t count_necklaces(std::uint64_t alphabet_size, std::uint64_t length) {
  if (alphabet_size == 0 || length == 0) throw InvalidInput("count_necklaces needs L >= 1 and n >= 1");
  std::uint64_t sum = 0;
  for (std::uint64_t d = 1; d <= length; ++d) {
    if (length % d) continue;
    const std::uint64_t term = checked_mul(totient(d), checked_pow(alphabet_size, length / d));
    if (__builtin_add_overflow(sum, term, &sum)) throw Overflow("necklace count exceeds 64 bits");
  }
  return sum / length;
}

}  // namespace hsc
