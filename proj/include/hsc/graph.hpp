#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hsc/word.hpp"

namespace hsc {

// Finite directed graph over symbols 0..alphabet_size-1; every vertex has an in- and an out-edge.
class TransitionGraph {
 public:
  TransitionGraph(std::size_t alphabet_size, std::vector<std::pair<Symbol, Symbol>> edges);

  static TransitionGraph full_shift(std::size_t alphabet_size);

  std::size_t alphabet_size() const { return n_; }
  bool has_edge(Symbol a, Symbol b) const { return a < n_ && b < n_ && matrix_[a * n_ + b]; }
  const std::vector<Symbol>& successors(Symbol a) const { return out_[a]; }
  const std::vector<Symbol>& predecessors(Symbol a) const { return in_[a]; }
  std::vector<std::pair<Symbol, Symbol>> edges() const;

  // Consecutive symbols are edges; with `cyclic`, also last -> first.
  bool admissible(const Word& w, bool cyclic) const;

 private:
  std::size_t n_;
  std::vector<char> matrix_;
  std::vector<std::vector<Symbol>> out_;
  std::vector<std::vector<Symbol>> in_;
};

bool is_transitive(const TransitionGraph& g);

struct SpectralDecomposition {
  std::size_t period = 1;
  // classes[i] holds the symbols of X_i, each sorted; edges go X_i -> X_{i+1 mod p}.
  std::vector<std::vector<Symbol>> classes;
};

SpectralDecomposition spectral_decomposition(const TransitionGraph& g);

// All loops a_0..a_{n-1} with a_0 = base, a_i -> a_{i+1} and a_{n-1} -> base, in lexicographic order.
std::vector<Word> enumerate_loops(const TransitionGraph& g, Symbol base, std::size_t length);

}  // namespace hsc
