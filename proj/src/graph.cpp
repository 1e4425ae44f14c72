#include "hsc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "hsc/error.hpp"

namespace hsc {

TransitionGraph::TransitionGraph(std::size_t alphabet_size, std::vector<std::pair<Symbol, Symbol>> edges)
    : n_(alphabet_size), matrix_(alphabet_size * alphabet_size, 0), out_(alphabet_size), in_(alphabet_size) {
  if (n_ == 0) throw InvalidInput("alphabet_size must be positive");
  for (auto [a, b] : edges) {
    if (a >= n_ || b >= n_) {
      throw InvalidInput("edge [" + std::to_string(a) + "," + std::to_string(b) + "] outside alphabet");
    }
    if (matrix_[a * n_ + b]) continue;
    matrix_[a * n_ + b] = 1;
    out_[a].push_back(b);
    in_[b].push_back(a);
  }
  for (std::size_t v = 0; v < n_; ++v) {
    std::sort(out_[v].begin(), out_[v].end());
    std::sort(in_[v].begin(), in_[v].end());
    if (out_[v].empty() || in_[v].empty()) {
      throw InvalidInput("symbol " + std::to_string(v) + " lacks an incoming or outgoing edge");
    }
  }
}

TransitionGraph TransitionGraph::full_shift(std::size_t alphabet_size) {
  std::vector<std::pair<Symbol, Symbol>> e;
  for (Symbol a = 0; a < alphabet_size; ++a)
    for (Symbol b = 0; b < alphabet_size; ++b) e.emplace_back(a, b);
  return TransitionGraph(alphabet_size, std::move(e));
}

std::vector<std::pair<Symbol, Symbol>> TransitionGraph::edges() const {
  std::vector<std::pair<Symbol, Symbol>> e;
  for (Symbol a = 0; a < n_; ++a)
    for (Symbol b : out_[a]) e.emplace_back(a, b);
  return e;
}

bool TransitionGraph::admissible(const Word& w, bool cyclic) const {
  if (w.empty()) return false;
  for (Symbol a : w)
    if (a >= n_) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (!has_edge(w[i], w[i + 1])) return false;
  return !cyclic || has_edge(w.back(), w.front());
}

namespace {

std::vector<std::ptrdiff_t> bfs_levels(const TransitionGraph& g, Symbol root, bool reverse) {
  std::vector<std::ptrdiff_t> level(g.alphabet_size(), -1);
  std::queue<Symbol> q;
  level[root] = 0;
  q.push(root);
  while (!q.empty()) {
    Symbol v = q.front();
    q.pop();
    for (Symbol w : reverse ? g.predecessors(v) : g.successors(v)) {
      if (level[w] >= 0) continue;
      level[w] = level[v] + 1;
      q.push(w);
    }
  }
  return level;
}

}  // namespace

bool is_transitive(const TransitionGraph& g) {
  auto fwd = bfs_levels(g, 0, false);
  auto bwd = bfs_levels(g, 0, true);
  return std::none_of(fwd.begin(), fwd.end(), [](auto l) { return l < 0; }) &&
         std::none_of(bwd.begin(), bwd.end(), [](auto l) { return l < 0; });
}

SpectralDecomposition spectral_decomposition(const TransitionGraph& g) {
  if (!is_transitive(g)) throw NotTransitive();
  // In a strongly connected graph the gcd of level[u]+1-level[v] over edges is the cycle-length gcd.
  auto level = bfs_levels(g, 0, false);
  std::ptrdiff_t p = 0;
  for (auto [u, v] : g.edges()) p = std::gcd(p, std::abs(level[u] + 1 - level[v]));
  SpectralDecomposition out;
  out.period = static_cast<std::size_t>(p);
  out.classes.assign(out.period, {});
  for (Symbol v = 0; v < g.alphabet_size(); ++v) out.classes[static_cast<std::size_t>(level[v] % p)].push_back(v);
  return out;
}

namespace {

void extend_loops(const TransitionGraph& g, Symbol base, std::size_t length, Word& prefix, std::vector<Word>& out) {
  if (prefix.size() == length) {
    if (g.has_edge(prefix.back(), base)) out.push_back(prefix);
    return;
  }
  for (Symbol next : g.successors(prefix.back())) {
    prefix.push_back(next);
    extend_loops(g, base, length, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Word> enumerate_loops(const TransitionGraph& g, Symbol base, std::size_t length) {
  if (length == 0) throw InvalidInput("loop length must be at least 1");
  if (base >= g.alphabet_size()) throw InvalidInput("base symbol outside alphabet");
  std::vector<Word> out;
  Word prefix{base};
  extend_loops(g, base, length, prefix, out);
  return out;
}

}  // namespace hsc
