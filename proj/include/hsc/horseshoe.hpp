#pragma once

#include <array>
#include <vector>

#include "hsc/geometry.hpp"
#include "hsc/loop_select.hpp"
#include "hsc/word.hpp"

namespace hsc {

struct EmbeddingParams {
  double major_radius = 2.0;  // solid torus core radius
  double tube_scale = 1.0;    // meridian disc [0,1]^2 scaled by this
};

// Rectangle with sides v_- = {u=0}, v_+ = {u=1}, h_- = {v=0}, h_+ = {v=1} of its parameterisation.
struct ParamRect {
  Vec2 origin;  // image of (0,0)
  Vec2 du;      // image of (1,0) minus origin
  Vec2 dv;      // image of (0,1) minus origin
  Segment2 v_minus() const { return {origin, origin + dv}; }
  Segment2 v_plus() const { return {origin + du, origin + du + dv}; }
  Segment2 h_minus() const { return {origin, origin + du}; }
  Segment2 h_plus() const { return {origin + dv, origin + du + dv}; }
  Box box() const;
};

// D1 crosses D2: v1 sides miss D2, h2 sides miss D1, h1 sides run across D2 from v2_- to v2_+,
// v2 sides run across D1 from h1_- to h1_+.
bool crosses(const ParamRect& d1, const ParamRect& d2);

struct RectangleSection {
  Box D;
  std::vector<ParamRect> subrectangles;
};

// Branch i maps the horizontal strip D_i = [0,1] x [b_i, b_i + lambda] onto the vertical strip
// [a_i, a_i + lambda] x [0,1] by (x, y) -> (a_i + lambda x, (y - b_i) / lambda).
class AffineHorseshoeModel {
 public:
  AffineHorseshoeModel(double lambda, std::vector<double> roofs, std::vector<double> x_offsets,
                       std::vector<double> y_offsets, EmbeddingParams embedding = {});

  std::size_t branches() const { return roofs_.size(); }
  double lambda() const { return lambda_; }
  const std::vector<double>& roofs() const { return roofs_; }
  const std::vector<double>& x_offsets() const { return a_; }
  const std::vector<double>& y_offsets() const { return b_; }
  const EmbeddingParams& embedding() const { return embedding_; }

  RectangleSection section() const;
  ParamRect domain(std::size_t i) const;
  ParamRect image(std::size_t i) const;

  Vec2 apply(std::size_t i, Vec2 p) const;

  // Base point in D_{w_0} of the periodic orbit with itinerary w (exact affine fixed point).
  Vec2 fixed_point(const Word& w) const;

  // Meridian-disc position of the point p in D_i after fraction s of the branch roof.
  Vec2 meridian(std::size_t i, double s, Vec2 p) const;
  Vec3 embed(std::size_t i, double s, Vec2 p) const;

  // Scale applied to local x and y offsets at fraction s of any branch.
  double local_scale_x(double s) const;
  double local_scale_y(double s) const;

  // Upper bound on |d embed / ds| and on the flow speed |d embed / dt|.
  double arc_speed_bound() const;
  double speed_bound() const;

  // Smallest vertical gap between distinct strips D_i (in section units).
  double strip_gap() const;

 private:
  double lambda_;
  std::vector<double> roofs_, a_, b_;
  EmbeddingParams embedding_;
};

AffineHorseshoeModel build_model(std::size_t L, double lambda, const std::vector<double>& roofs,
                                 EmbeddingParams embedding = {});

bool verify_markov_type(const AffineHorseshoeModel& model);

struct Orbit3D {
  std::vector<Vec3> vertices;  // closed polyline; the segment back to vertices[0] is implicit
  std::vector<double> times;   // strictly increasing, times[0] = 0
  double period = 0.0;
  bool closed = true;
  Necklace label;
  double closure_error = 0.0;  // max_k |f(p_k) - p_(k+1)| over the section points
};

// Default vertex spacing in 3-space.
inline constexpr double kDefaultResolution = 0.1;

Orbit3D periodic_orbit(const AffineHorseshoeModel& model, const Necklace& w, double resolution = kDefaultResolution);

struct IntersectionPattern {
  std::size_t count_D0 = 0;
  Word sequence;
};

IntersectionPattern intersection_pattern(const AffineHorseshoeModel& model, const Orbit3D& orbit);

// Rank of each item's base point along the stable (y) and unstable (x) directions of the section;
// every affine branch keeps orientation.
struct ItemOrders {
  std::vector<std::size_t> rank_s, rank_u;
  std::vector<bool> keeps;
};

ItemOrders model_orders(const AffineHorseshoeModel& model, const std::vector<Word>& items);

struct FriedLink {
  // triples[0] from theta_mm, theta_pp; triples[i] from omega_i for i >= 1.
  std::vector<std::array<Orbit3D, 3>> triples;
};

FriedLink fried_link(const AffineHorseshoeModel& model, const OrderedSelection& selection,
                     const std::vector<Word>& items, double resolution = kDefaultResolution);

}  // namespace hsc
