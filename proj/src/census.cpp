#include "hsc/census.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "hsc/error.hpp"
#include "hsc/suspension.hpp"

namespace hsc {

namespace {

double tolerance(double T) { return 1e-12 * std::max(1.0, std::abs(T)); }

// Depth-first over words w with w[0] = first; visit every canonical word with cyclic cost <= T.
// Windows lying inside the prefix give a lower bound on every extension's cost.
template <class Visit>
void necklaces_from(const RoofFunction& roof, std::size_t L, double T, Symbol first, Visit&& visit) {
  const std::size_t k = roof.depth();
  const double limit = T + tolerance(T);
  const auto max_len = static_cast<std::size_t>(std::floor(limit / roof.min_defined()));
  Word w{first};
  std::vector<double> partial{0.0};  // partial[l]: sum of windows inside w[0..l)
  auto window_cost = [&](std::size_t start, bool cyclic) {
    Word win(k);
    for (std::size_t j = 0; j < k; ++j) win[j] = cyclic ? w[(start + j) % w.size()] : w[start + j];
    return roof.value(win);
  };
  auto cyclic_cost = [&] {
    // Windows fully inside w are already in partial; add the wrapping ones.
    double s = partial.back();
    const std::size_t n = w.size();
    const std::size_t inside = n >= k ? n - k + 1 : 0;
    for (std::size_t j = inside; j < n; ++j) s += window_cost(j, true);
    return s;
  };
  std::function<void()> rec = [&] {
    const std::size_t n = w.size();
    if (n >= k) partial.push_back(partial.back() + window_cost(n - k, false));
    else partial.push_back(partial.back());
    if (partial.back() <= limit) {
      if (rotate(w, least_rotation(w)) == w) {
        const double cost = cyclic_cost();
        if (cost <= limit) visit(w, cost);
      }
      if (n < max_len) {
        for (Symbol a = 0; a < L; ++a) {
          w.push_back(a);
          rec();
          w.pop_back();
        }
      }
    }
    partial.pop_back();
  };
  rec();
}

template <class Visit>
void for_each_necklace(const RoofFunction& roof, std::size_t L, double T, std::size_t threads, Visit&& make_visit) {
  if (roof.alphabet_size() != L) throw InvalidInput("roof alphabet differs from L");
  if (!(T > 0.0)) throw InvalidInput("T must be positive");
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, L);
  std::vector<std::thread> pool;
  auto work = [&](std::size_t t) {
    for (std::size_t a = t; a < L; a += workers) necklaces_from(roof, L, T, static_cast<Symbol>(a), make_visit(a));
  };
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<OrbitClass> census_orbits(const RoofFunction& roof, std::size_t L, double T, std::size_t threads) {
  std::vector<std::vector<OrbitClass>> per_first(L);
  for_each_necklace(roof, L, T, threads, [&](std::size_t a) {
    return [&per_first, a](const Word& w, double cost) { per_first[a].push_back({Necklace(w), cost}); };
  });
  std::vector<OrbitClass> out;
  for (auto& v : per_first) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](const OrbitClass& a, const OrbitClass& b) {
    if (a.necklace.period_length() != b.necklace.period_length())
      return a.necklace.period_length() < b.necklace.period_length();
    return a.necklace.canonical() < b.necklace.canonical();
  });
  return out;
}

std::vector<double> orbit_lengths(const RoofFunction& roof, std::size_t L, double T, std::size_t threads) {
  std::vector<std::vector<double>> per_first(L);
  for_each_necklace(roof, L, T, threads, [&](std::size_t a) {
    return [&per_first, a](const Word&, double cost) { per_first[a].push_back(cost); };
  });
  std::vector<double> out;
  for (auto& v : per_first) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

Sequence chord_sequence(const Necklace& past, const Word& interior, const Necklace& future) {
  return Sequence(past.canonical(), interior, future.canonical(), 1);
}

namespace {

template <class Visit>
void for_each_chord(const RoofFunction& roof, std::size_t L, const Necklace& past, const Necklace& future, double T,
                    Visit&& visit) {
  if (roof.alphabet_size() != L) throw InvalidInput("roof alphabet differs from L");
  if (!(T > 0.0)) throw InvalidInput("T must be positive");
  for (const Necklace* tail : {&past, &future})
    for (Symbol a : tail->canonical())
      if (a >= L) throw InvalidInput("boundary tail symbol outside alphabet");
  const std::size_t k = roof.depth();
  const double limit = T + tolerance(T);
  Word interior;
  std::function<void()> rec = [&] {
    const Sequence c = chord_sequence(past, interior, future);
    const std::size_t n = interior.size() + 2;
    // Windows j <= |interior| - k + 1 only read c_j for j <= |interior|, fixed under extension.
    double fixed = 0.0, total = 0.0;
    const auto fixed_end = static_cast<std::int64_t>(interior.size()) - static_cast<std::int64_t>(k) + 1;
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
      const double v = roof.at(c, j);
      total += v;
      if (j <= fixed_end) fixed += v;
    }
    if (total <= limit) visit(interior, total);
    if (fixed > limit) return;
    if (static_cast<double>(n + 1) * roof.min_defined() > limit) return;
    for (Symbol a = 0; a < L; ++a) {
      interior.push_back(a);
      rec();
      interior.pop_back();
    }
  };
  rec();
}

}  // namespace

std::vector<ChordClass> census_chords(const RoofFunction& roof, std::size_t L, const Necklace& past,
                                      const Necklace& future, double T) {
  std::vector<ChordClass> out;
  for_each_chord(roof, L, past, future, T,
                 [&](const Word& w, double len) { out.push_back({w, past, future, len}); });
  std::sort(out.begin(), out.end(), [](const ChordClass& a, const ChordClass& b) {
    if (a.interior.size() != b.interior.size()) return a.interior.size() < b.interior.size();
    return a.interior < b.interior;
  });
  return out;
}

std::vector<double> chord_lengths(const RoofFunction& roof, std::size_t L, const Necklace& past, const Necklace& future,
                                  double T) {
  std::vector<double> out;
  for_each_chord(roof, L, past, future, T, [&](const Word&, double len) { out.push_back(len); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> cumulative_counts(const std::vector<double>& sorted, const std::vector<double>& grid) {
  std::vector<std::uint64_t> out;
  out.reserve(grid.size());
  for (double T : grid) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), T + tolerance(T));
    out.push_back(static_cast<std::uint64_t>(it - sorted.begin()));
  }
  return out;
}

GrowthEstimate growth_rate(const CensusFn& census, const RoofFunction& roof, std::size_t L,
                           const std::vector<double>& grid, double kappa) {
  if (grid.size() < 4) throw InvalidInput("growth_rate needs at least four grid points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidInput("T grid must be strictly increasing");
  const auto counts = cumulative_counts(census(roof, L, grid.back()), grid);

  GrowthEstimate out;
  out.prefactor_exponent = kappa;
  std::vector<std::pair<double, double>> fit;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (counts[i] == 0) continue;
    const double logN = std::log(static_cast<double>(counts[i]));
    out.samples.emplace_back(grid[i], logN);
    if (i >= grid.size() / 2) fit.emplace_back(grid[i], logN + kappa * std::log(grid[i]));
  }
  if (fit.size() < 2) throw InvalidInput("fewer than two nonzero counts in the top half of the grid");
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : fit) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(fit.size());
  my /= static_cast<double>(fit.size());
  double sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : fit) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  double ss = 0.0;
  for (auto [x, y] : fit) {
    const double e = y - (out.intercept + out.slope * x);
    ss += e * e;
  }
  out.residual = std::sqrt(ss / static_cast<double>(fit.size()));
  out.window_min = fit.front().first;
  out.window_max = fit.back().first;
  return out;
}

std::vector<std::size_t> necklace_classes(const std::vector<Word>& words) {
  std::map<Word, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(words.size());
  for (const Word& w : words) {
    const Word key = Necklace(w).canonical();
    auto [it, inserted] = ids.emplace(key, ids.size());
    out.push_back(it->second);
  }
  return out;
}

bool verify_cyclic_injectivity(const std::vector<Word>& words) {
  const auto cls = necklace_classes(words);
  std::map<std::size_t, std::size_t> representative;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto [it, inserted] = representative.emplace(cls[i], i);
    if (inserted) continue;
    const Word& rep = words[it->second];
    if (rep.size() != words[i].size()) return false;
    bool rotation = false;
    for (std::size_t r = 0; r < rep.size() && !rotation; ++r) rotation = rotate(rep, r) == words[i];
    if (!rotation) return false;
  }
  return true;
}

}  // namespace hsc
