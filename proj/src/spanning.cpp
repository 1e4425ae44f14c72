#include "hsc/spanning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <thread>

#include "hsc/error.hpp"

namespace hsc {

namespace {

constexpr std::size_t kGridCap = 1u << 14;
constexpr std::size_t kSamples = 21;

// Section coordinates reachable with words of a fixed length; remainder contributions dropped.
std::vector<double> cantor_points(const std::vector<double>& offsets, double lambda, std::size_t depth) {
  std::vector<double> pts{0.0};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<double> next;
    next.reserve(pts.size() * offsets.size());
    for (double p : pts)
      for (double o : offsets) next.push_back(o + lambda * p);
    pts = std::move(next);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Greedy cover size of the grid under d(u, v) = rho * max_c |(alpha_c dx, beta_c dy)| <= radius.
std::size_t greedy_cover(const std::vector<double>& xs, const std::vector<double>& ys,
                         const std::vector<std::pair<double, double>>& checkpoints, double rho, double radius) {
  const std::size_t nx = xs.size(), ny = ys.size(), G = nx * ny;
  const double r2 = (radius / rho) * (radius / rho);
  auto close = [&](std::size_t a, std::size_t b) {
    const double dx = xs[a / ny] - xs[b / ny], dy = ys[a % ny] - ys[b % ny];
    for (auto [al, be] : checkpoints)
      if (al * al * dx * dx + be * be * dy * dy > r2) return false;
    return true;
  };
  std::vector<std::vector<std::uint32_t>> nbr(G);
  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = 0; b < G; ++b)
      if (close(a, b)) nbr[a].push_back(static_cast<std::uint32_t>(b));
  std::vector<char> covered(G, 0);
  std::vector<std::size_t> gain(G);
  for (std::size_t a = 0; a < G; ++a) gain[a] = nbr[a].size();
  std::size_t left = G, centres = 0;
  while (left > 0) {
    // Lowest index among maximal gains keeps the cover deterministic.
    const std::size_t best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    ++centres;
    for (std::uint32_t b : nbr[best]) {
      if (covered[b]) continue;
      covered[b] = 1;
      --left;
      for (std::uint32_t c : nbr[b]) --gain[c];
    }
  }
  return centres;
}

// Count vectors of symbols with total roof time <= horizon, each with its multinomial weight.
struct CountClass {
  std::size_t length;
  double time;
  double multiplicity;
};

void enumerate_counts(const std::vector<double>& roofs, double horizon, std::size_t idx, std::size_t length,
                      double time, double log_multi, std::vector<std::size_t>& counts, std::vector<CountClass>& out) {
  if (idx == roofs.size()) {
    out.push_back({length, time, std::exp(log_multi)});
    return;
  }
  for (std::size_t c = 0;; ++c) {
    const double t = time + static_cast<double>(c) * roofs[idx];
    if (t > horizon + 1e-12) break;
    counts[idx] = c;
    // multinomial(length + c; ..., c) built incrementally as C(length + c, c).
    const double lm = log_multi + std::lgamma(static_cast<double>(length + c) + 1) -
                      std::lgamma(static_cast<double>(length) + 1) - std::lgamma(static_cast<double>(c) + 1);
    enumerate_counts(roofs, horizon, idx + 1, length + c, t, lm, counts, out);
  }
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

SpanningResult spanning_entropy(const AffineHorseshoeModel& model, double T, const std::vector<double>& epsilons,
                                std::size_t threads) {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("T must be positive");
  if (epsilons.empty()) throw InvalidInput("at least one epsilon required");
  const double lambda = model.lambda(), rho = model.embedding().tube_scale;
  const double gap = model.strip_gap();
  const auto& roofs = model.roofs();
  const std::size_t L = model.branches();
  const double vmax = model.speed_bound();

  std::vector<CountClass> classes;
  std::vector<std::size_t> scratch(L);
  enumerate_counts(roofs, T, 0, 0, 0.0, 0.0, scratch, classes);
  std::vector<double> horizons(kSamples);
  for (std::size_t k = 0; k < kSamples; ++k)
    horizons[k] = T / 2 + T / 2 * static_cast<double>(k) / static_cast<double>(kSamples - 1);

  SpanningResult result;
  for (double eps : epsilons) {
    if (!(eps > 0.0) || !(eps / 2 < rho * gap)) {
      throw InvalidInput("epsilon must lie in (0, 2 * tube_scale * strip_gap)");
    }
    // Time slots of half-width delta shift orbits by at most eps/2; cover slot centres at eps/2.
    const double radius = eps / 2;
    const double delta = radius / vmax;
    // Truncation of section coordinates stays below a tenth of the cover radius.
    std::size_t depth = 1;
    while (rho * std::pow(lambda, static_cast<double>(depth)) > radius / 10) ++depth;
    const double grid = std::pow(static_cast<double>(L), 2.0 * static_cast<double>(depth));
    if (grid > static_cast<double>(kGridCap)) {
      throw NumericalFailure("grid too coarse for epsilon " + std::to_string(eps) + ": needs " +
                             std::to_string(static_cast<long long>(grid)) + " points");
    }
    const auto xs = cantor_points(model.x_offsets(), lambda, depth);
    const auto ys = cantor_points(model.y_offsets(), lambda, depth);

    // Upper bound on d_T inside one itinerary class with n section crossings (offsets relative to
    // the initial base point; dy is the offset beyond the fixed itinerary).
    std::map<std::size_t, double> cover_cache;
    auto cover = [&](std::size_t n) {
      auto it = cover_cache.find(n);
      if (it != cover_cache.end()) return it->second;
      std::vector<std::pair<double, double>> cps;
      const double ln = std::pow(lambda, static_cast<double>(n));
      cps.push_back({1.0, ln});
      for (std::size_t m = 1; m <= n; ++m)
        cps.push_back({std::pow(lambda, static_cast<double>(m)), std::pow(lambda, static_cast<double>(n + 1 - m))});
      cps.push_back({ln, 1.0});
      const double c = static_cast<double>(greedy_cover(xs, ys, cps, rho, radius));
      cover_cache.emplace(n, c);
      return c;
    };
    std::size_t max_n = 1;
    for (const CountClass& c : classes) max_n = std::max(max_n, c.length + 2);
    for (std::size_t n = 0; n <= max_n; ++n) cover(n);

    struct Slot {
      std::size_t branch;
      double offset;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < L; ++i) {
      const auto count = static_cast<std::size_t>(std::ceil(roofs[i] / (2 * delta)));
      const double w = roofs[i] / static_cast<double>(count);
      for (std::size_t k = 0; k < count; ++k) slots.push_back({i, (static_cast<double>(k) + 0.5) * w});
    }

    // Per slot and horizon: sum over itinerary classes of multiplicity x cover size.
    std::vector<std::vector<double>> per_slot(slots.size(), std::vector<double>(kSamples, 0.0));
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t s = begin; s < end; ++s) {
        const double t1 = roofs[slots[s].branch] - slots[s].offset;
        for (std::size_t h = 0; h < kSamples; ++h) {
          const double H = horizons[h];
          if (t1 > H) {
            per_slot[s][h] = cover_cache.at(0);
            continue;
          }
          double total = 0.0;
          for (const CountClass& c : classes) {
            const double e = t1 + c.time;
            if (e > H) continue;
            for (std::size_t j = 0; j < L; ++j)
              if (e + roofs[j] > H) total += c.multiplicity * cover_cache.at(c.length + 1);
          }
          per_slot[s][h] = total;
        }
      }
    };
    const std::size_t nt = std::max<std::size_t>(1, std::min(threads, slots.size()));
    std::vector<std::thread> pool;
    const std::size_t chunk = (slots.size() + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
      const std::size_t b = t * chunk, e = std::min(slots.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();

    std::vector<double> logs(kSamples);
    for (std::size_t h = 0; h < kSamples; ++h) {
      double sum = 0.0;
      for (const auto& row : per_slot) sum += row[h];
      logs[h] = std::log(sum);
    }
    SpanningPoint pt;
    pt.epsilon = eps;
    pt.estimate = least_squares_slope(horizons, logs);
    pt.log_cover = logs.back();
    pt.raw = logs.back() / T;
    pt.grid_points = xs.size() * ys.size();
    result.points.push_back(pt);
  }

  if (result.points.size() == 1) {
    result.extrapolated = result.points[0].estimate;
  } else {
    std::vector<double> e, v;
    for (const auto& p : result.points) {
      e.push_back(p.epsilon);
      v.push_back(p.estimate);
    }
    const double slope = least_squares_slope(e, v);
    double me = 0, mv = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      me += e[i];
      mv += v[i];
    }
    me /= static_cast<double>(e.size());
    mv /= static_cast<double>(e.size());
    result.extrapolated = mv - slope * me;
  }
  return result;
}

}  // namespace hsc
