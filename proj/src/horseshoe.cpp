#include "hsc/horseshoe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "hsc/error.hpp"
#include "hsc/linking.hpp"

namespace hsc {

namespace {

constexpr double kSideTol = 1e-12;

}  // namespace

Box ParamRect::box() const {
  const Vec2 c[4] = {origin, origin + du, origin + dv, origin + du + dv};
  Box b{c[0].x, c[0].x, c[0].y, c[0].y};
  for (const Vec2& p : c) {
    b.x0 = std::min(b.x0, p.x);
    b.x1 = std::max(b.x1, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.y1 = std::max(b.y1, p.y);
  }
  return b;
}

bool crosses(const ParamRect& d1, const ParamRect& d2) {
  const Box b1 = d1.box(), b2 = d2.box();
  if (clip(d1.v_minus(), b2) || clip(d1.v_plus(), b2)) return false;
  if (clip(d2.h_minus(), b1) || clip(d2.h_plus(), b1)) return false;
  auto spans = [](const std::optional<Segment2>& s, const Segment2& lo, const Segment2& hi) {
    if (!s) return false;
    return (on_segment(s->a, lo, kSideTol) && on_segment(s->b, hi, kSideTol)) ||
           (on_segment(s->a, hi, kSideTol) && on_segment(s->b, lo, kSideTol));
  };
  for (const Segment2& side : {d1.h_minus(), d1.h_plus()})
    if (!spans(clip(side, b2), d2.v_minus(), d2.v_plus())) return false;
  for (const Segment2& side : {d2.v_minus(), d2.v_plus()})
    if (!spans(clip(side, b1), d1.h_minus(), d1.h_plus())) return false;
  return true;
}

AffineHorseshoeModel::AffineHorseshoeModel(double lambda, std::vector<double> roofs, std::vector<double> x_offsets,
                                           std::vector<double> y_offsets, EmbeddingParams embedding)
    : lambda_(lambda), roofs_(std::move(roofs)), a_(std::move(x_offsets)), b_(std::move(y_offsets)),
      embedding_(embedding) {
  if (roofs_.empty()) throw InvalidInput("model needs at least one branch");
  if (a_.size() != roofs_.size() || b_.size() != roofs_.size()) throw InvalidInput("one offset per branch required");
  if (!(lambda_ > 0.0 && lambda_ < 1.0)) throw InvalidInput("lambda must lie in (0,1)");
  for (double r : roofs_)
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("roofs must be positive and finite");
  if (!(embedding_.tube_scale > 0.0) || !(embedding_.major_radius > embedding_.tube_scale)) {
    throw InvalidInput("embedding needs major_radius > tube_scale > 0");
  }
}

AffineHorseshoeModel build_model(std::size_t L, double lambda, const std::vector<double>& roofs,
                                 EmbeddingParams embedding) {
  if (L == 0) throw InvalidInput("L must be at least 1");
  if (roofs.size() != L) throw InvalidInput("expected " + std::to_string(L) + " roofs");
  if (!(lambda > 0.0 && lambda < 1.0 / (2.0 * static_cast<double>(L)))) {
    throw InvalidInput("lambda must lie in (0, 1/(2L))");
  }
  std::vector<double> offsets(L);
  for (std::size_t i = 0; i < L; ++i) offsets[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(L) - lambda / 2;
  return AffineHorseshoeModel(lambda, roofs, offsets, offsets, embedding);
}

RectangleSection AffineHorseshoeModel::section() const {
  RectangleSection s{Box{0.0, 1.0, 0.0, 1.0}, {}};
  for (std::size_t i = 0; i < branches(); ++i) s.subrectangles.push_back(domain(i));
  return s;
}

ParamRect AffineHorseshoeModel::domain(std::size_t i) const {
  return ParamRect{{0.0, b_.at(i)}, {0.0, lambda_}, {1.0, 0.0}};
}

ParamRect AffineHorseshoeModel::image(std::size_t i) const {
  return ParamRect{{a_.at(i), 0.0}, {0.0, 1.0}, {lambda_, 0.0}};
}

Vec2 AffineHorseshoeModel::apply(std::size_t i, Vec2 p) const {
  return {a_.at(i) + lambda_ * p.x, (p.y - b_.at(i)) / lambda_};
}

Vec2 AffineHorseshoeModel::fixed_point(const Word& w) const {
  if (w.empty()) throw InvalidInput("itinerary must be nonempty");
  long double x = 0.0L, y = 0.0L, pw = 1.0L;
  const long double lam = lambda_;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] >= branches()) throw InvalidInput("itinerary symbol outside the model's branches");
    x = lam * x + a_[w[k]];
    y += pw * b_[w[k]];
    pw *= lam;
  }
  return {static_cast<double>(x / (1.0L - pw)), static_cast<double>(y / (1.0L - pw))};
}

double AffineHorseshoeModel::local_scale_x(double s) const {
  return s < 1.0 / 3.0 ? std::pow(lambda_, 3.0 * s) : lambda_;
}

double AffineHorseshoeModel::local_scale_y(double s) const {
  return s <= 2.0 / 3.0 ? 1.0 : std::pow(lambda_, -(3.0 * s - 2.0));
}

Vec2 AffineHorseshoeModel::meridian(std::size_t i, double s, Vec2 p) const {
  // Shrink in x, turn the lambda-squares a quarter turn about the disc centre, stretch in y.
  const double b = b_.at(i), a = a_.at(i);
  const Vec2 q{p.x - 0.5, p.y - (b + lambda_ / 2)};
  const Vec2 local{local_scale_x(s) * q.x, local_scale_y(s) * q.y};
  Vec2 centre;
  if (s < 1.0 / 3.0) {
    centre = {0.5, b + lambda_ / 2};
  } else if (s <= 2.0 / 3.0) {
    const double theta = (3.0 * s - 1.0) * std::numbers::pi / 2;
    const double e = b + lambda_ / 2 - 0.5;
    centre = {0.5 + e * std::sin(theta), 0.5 + e * std::cos(theta)};
  } else {
    centre = {b + lambda_ / 2 + (3.0 * s - 2.0) * (a - b), 0.5};
  }
  return centre + local;
}

Vec3 AffineHorseshoeModel::embed(std::size_t i, double s, Vec2 p) const {
  const Vec2 m = meridian(i, s, p);
  const double phi = 2.0 * std::numbers::pi * s;
  const double rho = embedding_.tube_scale;
  const double R = embedding_.major_radius + rho * (m.x - 0.5);
  return {R * std::cos(phi), R * std::sin(phi), rho * (m.y - 0.5)};
}

double AffineHorseshoeModel::arc_speed_bound() const {
  double drift = 0.0;
  for (std::size_t i = 0; i < branches(); ++i) drift = std::max(drift, std::abs(a_[i] - b_[i]));
  const double rho = embedding_.tube_scale;
  const double meridian_speed = std::max(1.5 * std::abs(std::log(lambda_)), 3.0 * std::numbers::pi / 4) + 3.0 * drift;
  const double reach = 0.5 + lambda_ + drift;
  return 2.0 * std::numbers::pi * (embedding_.major_radius + rho * reach) + rho * meridian_speed;
}

double AffineHorseshoeModel::speed_bound() const {
  return arc_speed_bound() / *std::min_element(roofs_.begin(), roofs_.end());
}

double AffineHorseshoeModel::strip_gap() const {
  std::vector<double> b(b_);
  std::sort(b.begin(), b.end());
  double gap = 1.0;
  for (std::size_t i = 1; i < b.size(); ++i) gap = std::min(gap, b[i] - b[i - 1] - lambda_);
  return gap;
}

bool verify_markov_type(const AffineHorseshoeModel& model) {
  const Box D{0.0, 1.0, 0.0, 1.0};
  for (std::size_t i = 0; i < model.branches(); ++i) {
    const Box di = model.domain(i).box();
    if (!D.contains({di.x0, di.y0}) || !D.contains({di.x1, di.y1})) return false;
  }
  for (std::size_t i = 0; i < model.branches(); ++i)
    for (std::size_t j = 0; j < model.branches(); ++j)
      if (!crosses(model.image(i), model.domain(j))) return false;
  return true;
}

Orbit3D periodic_orbit(const AffineHorseshoeModel& model, const Necklace& w, double resolution) {
  if (!(resolution > 0.0)) throw InvalidInput("resolution must be positive");
  const Word& word = w.canonical();
  const std::size_t n = word.size();
  for (Symbol a : word)
    if (a >= model.branches()) throw InvalidInput("necklace symbol outside the model's branches");
  // Same s-grid for every orbit, so polylines of distinct orbits sample matching meridian discs.
  const auto per_phase =
      static_cast<std::size_t>(std::max(1.0, std::ceil(model.arc_speed_bound() / (3.0 * resolution))));

  Orbit3D orbit;
  orbit.label = w;
  double t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Symbol branch = word[k];
    const Vec2 p = model.fixed_point(rotate(word, k));
    const double r = model.roofs()[branch];
    for (std::size_t j = 0; j < 3 * per_phase; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(3 * per_phase);
      orbit.vertices.push_back(model.embed(branch, s, p));
      orbit.times.push_back(t + s * r);
    }
    t += r;
  }
  orbit.period = t;

  // One-step residual around the cycle; iterating the whole word would amplify round-off by lambda^-n.
  double err = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 img = model.apply(word[k], model.fixed_point(rotate(word, k)));
    const Vec2 next = model.fixed_point(rotate(word, (k + 1) % n));
    err = std::max(err, std::hypot(img.x - next.x, img.y - next.y));
  }
  orbit.closure_error = err;
  return orbit;
}

IntersectionPattern intersection_pattern(const AffineHorseshoeModel& model, const Orbit3D& orbit) {
  if (!orbit.closed) throw InvalidInput("intersection_pattern needs a closed orbit");
  const auto& v = orbit.vertices;
  const std::size_t N = v.size();
  if (N < 3) throw InvalidInput("orbit polyline too short");
  const double R0 = model.embedding().major_radius, rho = model.embedding().tube_scale;
  IntersectionPattern out;
  // Start with the closing segment so a crossing at vertex 0 comes first.
  for (std::size_t step = 0; step < N; ++step) {
    const Vec3& p = v[(step + N - 1) % N];
    const Vec3& q = v[step];
    if (p.y == 0.0 && q.y == 0.0 && (p.x > 0.0 || q.x > 0.0)) {
      throw NumericalFailure("orbit runs tangentially inside the section plane");
    }
    if (!(p.y < 0.0 && q.y >= 0.0)) continue;
    const double t = -p.y / (q.y - p.y);
    const Vec3 c = p + t * (q - p);
    if (c.x <= 0.0) continue;
    const Vec2 uv{(std::hypot(c.x, c.y) - R0) / rho + 0.5, c.z / rho + 0.5};
    if (!Box{0.0, 1.0, 0.0, 1.0}.contains(uv, 1e-9)) continue;
    ++out.count_D0;
    for (std::size_t j = 0; j < model.branches(); ++j) {
      if (model.domain(j).box().contains(uv, 1e-9)) {
        out.sequence.push_back(static_cast<Symbol>(j));
        break;
      }
    }
  }
  return out;
}

ItemOrders model_orders(const AffineHorseshoeModel& model, const std::vector<Word>& items) {
  const std::size_t K = items.size();
  std::vector<Vec2> base;
  for (const Word& w : items) base.push_back(model.fixed_point(w));
  auto ranks = [&](auto key) {
    std::vector<std::size_t> order(K);
    for (std::size_t i = 0; i < K; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(base[a]) < key(base[b]); });
    for (std::size_t i = 1; i < K; ++i)
      if (key(base[order[i]]) == key(base[order[i - 1]])) throw InvalidInput("items share a base coordinate");
    std::vector<std::size_t> rank(K);
    for (std::size_t i = 0; i < K; ++i) rank[order[i]] = i;
    return rank;
  };
  ItemOrders out;
  out.rank_s = ranks([](Vec2 p) { return p.y; });
  out.rank_u = ranks([](Vec2 p) { return p.x; });
  out.keeps.assign(K, true);
  return out;
}

FriedLink fried_link(const AffineHorseshoeModel& model, const OrderedSelection& sel, const std::vector<Word>& items,
                     double resolution) {
  std::vector<std::size_t> used{sel.theta_mm, sel.theta_pp, sel.theta_m, sel.theta_p};
  used.insert(used.end(), sel.omegas.begin(), sel.omegas.end());
  for (std::size_t i : used)
    if (i >= items.size()) throw InvalidInput("selection index outside the item list");
  if (std::set<std::size_t>(used.begin(), used.end()).size() != used.size()) {
    throw InvalidInput("label collision: selection reuses an item");
  }
  std::set<Word> distinct;
  for (std::size_t i : used) distinct.insert(Necklace(items[i]).canonical());
  if (distinct.size() != used.size()) throw InvalidInput("label collision: two selected items are the same necklace");
  auto cat = [](std::initializer_list<const Word*> parts) {
    Word w;
    for (const Word* p : parts) w.insert(w.end(), p->begin(), p->end());
    return w;
  };
  const Word& tmm = items[sel.theta_mm];
  const Word& tpp = items[sel.theta_pp];
  const Word& tm = items[sel.theta_m];
  const Word& tp = items[sel.theta_p];
  std::vector<std::array<Word, 3>> labels{{tmm, tpp, cat({&tmm, &tpp})}};
  for (std::size_t o : sel.omegas) {
    const Word& om = items[o];
    labels.push_back({cat({&om, &tm}), cat({&om, &tp}), cat({&om, &tm, &om, &tp})});
  }
  std::set<Word> seen;
  for (const auto& triple : labels) {
    for (const Word& w : triple) {
      const Necklace nk(w);
      if (!nk.primitive()) throw InvalidInput("label collision: label " + to_string(w) + " is a proper power");
      if (!seen.insert(nk.canonical()).second) throw InvalidInput("label collision: " + to_string(w) + " repeats");
    }
  }
  FriedLink out;
  std::vector<const Orbit3D*> all;
  for (const auto& triple : labels) {
    out.triples.push_back({periodic_orbit(model, Necklace(triple[0]), resolution),
                           periodic_orbit(model, Necklace(triple[1]), resolution),
                           periodic_orbit(model, Necklace(triple[2]), resolution)});
  }
  for (const auto& tr : out.triples)
    for (const auto& o : tr) all.push_back(&o);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (min_distance(all[i]->vertices, all[j]->vertices) <= 1e-9) {
        throw NumericalFailure("link components are not disjoint at the sampling resolution");
      }
  return out;
}

}  // namespace hsc
