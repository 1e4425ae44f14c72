#include "hsc/loop_select.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "hsc/error.hpp"
#include "hsc/suspension.hpp"

namespace hsc {

namespace {

constexpr double kWindowSlack = 1e-9;

bool in_window(double birkhoff, double expected, double allowance) {
  return std::abs(birkhoff - expected) <= allowance + kWindowSlack * std::max(1.0, std::abs(expected));
}

}  // namespace

LoopHarvest harvest_loops(const TransitionGraph& g, const MarkovMeasure& m, const CylinderFunction& pot,
                          double epsilon, std::size_t length, std::size_t threads) {
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  if (length == 0) throw InvalidInput("loop length must be positive");
  if (m.alphabet_size() != g.alphabet_size()) throw InvalidInput("measure alphabet differs from graph alphabet");
  if (!is_transitive(g)) throw NotTransitive();

  const double h = measure_entropy(m);
  const double mean = integrate(pot, m);
  const double expected = static_cast<double>(length) * mean;
  const double allowance = static_cast<double>(length) * epsilon;

  std::vector<std::vector<Word>> kept(g.alphabet_size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t v = first; v < g.alphabet_size(); v += stride) {
      for (Word& w : enumerate_loops(g, static_cast<Symbol>(v), length)) {
        const double s = birkhoff_sum(pot, Sequence::periodic(w), static_cast<std::int64_t>(length));
        if (in_window(s, expected, allowance)) kept[v].push_back(std::move(w));
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, g.alphabet_size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work, t, workers);
  work(0, workers);
  for (auto& th : pool) th.join();

  LoopHarvest out;
  std::size_t best = 0;
  for (std::size_t v = 1; v < kept.size(); ++v)
    if (kept[v].size() > kept[best].size()) best = v;
  out.base_vertex = static_cast<Symbol>(best);
  out.length = length;
  out.loops = std::move(kept[best]);
  out.epsilon = epsilon;
  out.entropy = h;
  out.mean_potential = mean;
  out.threshold = std::exp(static_cast<double>(length) * (h - epsilon));
  out.certified = static_cast<double>(out.loops.size()) >= out.threshold && !out.loops.empty();
  return out;
}

ConcatenationCheck verify_concatenations(const LoopHarvest& h, const CylinderFunction& pot, std::size_t max_depth,
                                         std::uint64_t seed) {
  if (h.loops.empty()) throw InvalidInput("harvest has no loops");
  const std::size_t k = h.loops.size();
  ConcatenationCheck out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);

  auto check_tuple = [&](const std::vector<std::size_t>& tuple) {
    Word w;
    for (std::size_t i : tuple) w.insert(w.end(), h.loops[i].begin(), h.loops[i].end());
    const double len = static_cast<double>(w.size());
    const double s = birkhoff_sum(pot, Sequence::periodic(w), static_cast<std::int64_t>(w.size()));
    ++out.tuples_checked;
    return in_window(s, len * h.mean_potential, len * h.epsilon);
  };

  for (std::size_t l = 1; l <= max_depth && out.passed; ++l) {
    double total = std::pow(static_cast<double>(k), static_cast<double>(l));
    std::vector<std::size_t> tuple(l, 0);
    if (total <= 1e6) {
      // Odometer over all k^l tuples.
      while (true) {
        if (!check_tuple(tuple)) {
          out.passed = false;
          break;
        }
        std::size_t pos = l;
        while (pos > 0 && ++tuple[pos - 1] == k) tuple[--pos] = 0;
        if (pos == 0) break;
      }
    } else {
      out.exhaustive = false;
      for (int sample = 0; sample < 100000; ++sample) {
        for (auto& t : tuple) t = pick(rng);
        if (!check_tuple(tuple)) {
          out.passed = false;
          break;
        }
      }
    }
  }
  return out;
}

namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Count of positions < i.
  std::size_t prefix(std::size_t i) const {
    std::size_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::size_t> tree_;
};

}  // namespace

std::vector<std::size_t> bounded_subsequence(const std::vector<std::uint64_t>& seq) {
  const std::size_t n = seq.size();
  if (n == 0) throw InvalidInput("bounded_subsequence needs a nonempty sequence");
  std::vector<std::uint64_t> sorted(seq);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("bounded_subsequence needs distinct entries");
  }
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i)
    rank[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), seq[i]) - sorted.begin());

  std::size_t best_len = 1, best_i = 0, best_l = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Fenwick inside(n);
    for (std::size_t l = i + 1; l < n; ++l) {
      const std::size_t lo = std::min(rank[i], rank[l]);
      const std::size_t hi = std::max(rank[i], rank[l]);
      const std::size_t len = 2 + inside.prefix(hi) - inside.prefix(lo + 1);
      if (len > best_len) {
        best_len = len;
        best_i = i;
        best_l = l;
      }
      inside.add(rank[l]);
    }
  }
  std::vector<std::size_t> out{best_i};
  if (best_l == best_i) return out;
  const std::size_t lo = std::min(rank[best_i], rank[best_l]);
  const std::size_t hi = std::max(rank[best_i], rank[best_l]);
  for (std::size_t j = best_i + 1; j < best_l; ++j)
    if (rank[j] > lo && rank[j] < hi) out.push_back(j);
  out.push_back(best_l);
  return out;
}

bool is_bounded_subsequence(const std::vector<std::uint64_t>& seq, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return false;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (idx[t] >= seq.size()) return false;
    if (t > 0 && idx[t] <= idx[t - 1]) return false;
  }
  const std::uint64_t a = seq[idx.front()];
  const std::uint64_t b = seq[idx.back()];
  const std::uint64_t lo = std::min(a, b), hi = std::max(a, b);
  for (std::size_t i : idx)
    if (seq[i] < lo || seq[i] > hi) return false;
  return true;
}

Word weave_loops(const Word& alpha, const std::vector<Word>& betas, const std::vector<Word>& gammas,
                 const GammaSelector& select, std::size_t s, std::size_t n, std::size_t q) {
  if (alpha.empty()) throw InvalidInput("alpha must be nonempty");
  if (betas.empty()) throw InvalidInput("at least one beta is required");
  if (s == 0 || n == 0) throw InvalidInput("s and n must be positive");
  const std::size_t m = alpha.size();
  auto same_length = [m](const Word& w) { return w.size() == m; };
  if (!std::all_of(betas.begin(), betas.end(), same_length) || !std::all_of(gammas.begin(), gammas.end(), same_length)) {
    throw InvalidInput("all woven loops must share the length of alpha");
  }
  const std::size_t d = betas.size();
  Word out;
  out.reserve((2 * s + n * d * (q + 1)) * m);
  auto append = [&out](const Word& w) { out.insert(out.end(), w.begin(), w.end()); };
  for (std::size_t t = 0; t < s; ++t) append(alpha);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t t = 0; t < q; ++t) {
        const std::size_t g = select(i, j, t);
        if (g >= gammas.size()) throw InvalidInput("gamma index " + std::to_string(g) + " out of range");
        append(gammas[g]);
      }
      append(betas[j]);
    }
  }
  for (std::size_t t = 0; t < s; ++t) append(alpha);
  return out;
}

namespace {

void check_ranks(const std::vector<std::size_t>& r, std::size_t k, const char* name) {
  if (r.size() != k) throw InvalidInput(std::string(name) + " has the wrong length");
  std::vector<char> seen(k, 0);
  for (std::size_t x : r) {
    if (x >= k || seen[x]) throw InvalidInput(std::string(name) + " is not a permutation");
    seen[x] = 1;
  }
}

}  // namespace

OrderedSelection select_ordered_symbols(const std::vector<std::size_t>& rank_s, const std::vector<std::size_t>& rank_u,
                                        const std::vector<bool>& keeps) {
  const std::size_t k = rank_s.size();
  check_ranks(rank_s, k, "order_s");
  check_ranks(rank_u, k, "order_u");
  if (keeps.size() != k) throw InvalidInput("orientation flags have the wrong length");

  const std::size_t keeping = static_cast<std::size_t>(std::count(keeps.begin(), keeps.end(), true));
  const bool majority = 2 * keeping >= k;
  std::vector<std::size_t> items;
  for (std::size_t i = 0; i < k; ++i)
    if (keeps[i] == majority) items.push_back(i);
  std::sort(items.begin(), items.end(), [&](std::size_t a, std::size_t b) { return rank_s[a] < rank_s[b]; });

  auto u_ranks = [&](const std::vector<std::size_t>& its) {
    std::vector<std::uint64_t> v;
    for (std::size_t i : its) v.push_back(rank_u[i]);
    return v;
  };
  auto pick = [](const std::vector<std::size_t>& its, const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> out;
    for (std::size_t i : idx) out.push_back(its[i]);
    return out;
  };

  if (items.size() < 4) throw InvalidInput("selection needs at least four items of one orientation");
  const auto outer = pick(items, bounded_subsequence(u_ranks(items)));
  if (outer.size() < 4) throw InvalidInput("orders admit no bracketed chain of four items");
  const std::vector<std::size_t> middle(outer.begin() + 1, outer.end() - 1);
  const auto inner = pick(middle, bounded_subsequence(u_ranks(middle)));

  OrderedSelection sel;
  sel.theta_mm = outer.front();
  sel.theta_pp = outer.back();
  sel.theta_m = inner.front();
  sel.theta_p = inner.back();
  if (inner.size() > 2) sel.omegas.assign(inner.begin() + 1, inner.end() - 1);
  sel.keeps_orientation = majority;
  sel.certified = k >= 200 && sel.omegas.size() >= k / 100;
  return sel;
}

bool check_selection(const OrderedSelection& sel, const std::vector<std::size_t>& rank_s,
                     const std::vector<std::size_t>& rank_u, const std::vector<bool>& keeps) {
  std::vector<std::size_t> all{sel.theta_mm, sel.theta_pp, sel.theta_m, sel.theta_p};
  all.insert(all.end(), sel.omegas.begin(), sel.omegas.end());
  std::set<std::size_t> distinct(all.begin(), all.end());
  if (distinct.size() != all.size()) return false;
  for (std::size_t i : all) {
    if (i >= rank_s.size() || i >= rank_u.size() || i >= keeps.size()) return false;
    if (keeps[i] != sel.keeps_orientation) return false;
  }
  auto bracket = [&](std::size_t a, std::size_t b, std::size_t c) {
    for (const auto* r : {&rank_s, &rank_u}) {
      const auto& o = *r;
      if (!((o[a] < o[b] && o[b] < o[c]) || (o[c] < o[b] && o[b] < o[a]))) return false;
    }
    return true;
  };
  if (!bracket(sel.theta_mm, sel.theta_m, sel.theta_pp)) return false;
  if (!bracket(sel.theta_mm, sel.theta_p, sel.theta_pp)) return false;
  for (std::size_t w : sel.omegas)
    if (!bracket(sel.theta_m, w, sel.theta_p)) return false;
  return true;
}

}  // namespace hsc
