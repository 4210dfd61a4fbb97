#include "fractbem/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fractbem {

double Ifs::rho_min() const {
  double r = 1.0;
  for (const auto& s : maps) r = std::min(r, s.rho);
  return r;
}

double Ifs::rho_max() const {
  double r = 0.0;
  for (const auto& s : maps) r = std::max(r, s.rho);
  return r;
}

bool Ifs::homogeneous(double tol) const {
  return rho_max() - rho_min() <= tol;
}

double Ifs::ratio_power_sum(double p) const {
  double s = 0.0;
  for (const auto& m : maps) s += std::pow(m.rho, p);
  return s;
}

void validate_ifs(const Ifs& ifs) {
  if (ifs.dim != 1 && ifs.dim != 2)
    throw std::invalid_argument("ambient_dim: must be 1 or 2, got " + std::to_string(ifs.dim));
  if (ifs.map_count() < 2)
    throw std::invalid_argument("maps: need at least 2 similarities, got " +
                                std::to_string(ifs.map_count()));
  for (int m = 0; m < ifs.map_count(); ++m)
    validate_similarity(ifs.maps[m], "maps[" + std::to_string(m) + "]");
  if (ifs.declared_measure && !(*ifs.declared_measure > 0.0))
    throw std::invalid_argument("declared_measure: must be positive");
  if (ifs.dim == 1) {
    for (int m = 0; m < ifs.map_count(); ++m) {
      const Mat2& R = ifs.maps[m].R;
      if (std::abs(std::abs(R[0]) - 1.0) > 1e-12 || std::abs(R[1]) > 1e-12 ||
          std::abs(R[2]) > 1e-12)
        throw std::invalid_argument("maps[" + std::to_string(m) +
                                    "].orthogonal: 1-D orthogonal part must be +1 or -1");
      if (std::abs(ifs.maps[m].t[1]) > 0.0)
        throw std::invalid_argument("maps[" + std::to_string(m) +
                                    "].translation: 1-D translation must have one component");
    }
  }
}

double similarity_dimension(const Ifs& ifs) {
  validate_ifs(ifs);
  auto g = [&](double d) { return ifs.ratio_power_sum(d) - 1.0; };  // strictly decreasing
  double lo = 1e-9, hi = 1.0;
  while (g(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) throw std::runtime_error("similarity_dimension: failed to bracket root");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  // Newton polish: g'(d) = sum rho^d ln rho
  double d = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    double f = 0.0, fp = 0.0;
    for (const auto& m : ifs.maps) {
      const double p = std::pow(m.rho, d);
      f += p;
      fp += p * std::log(m.rho);
    }
    d -= (f - 1.0) / fp;
  }
  return d;
}

void for_each_deep_cell(const Ifs& ifs, double base_diam, double max_diam,
                        const std::function<void(const Similarity&)>& fn) {
  std::function<void(const Similarity&)> descend = [&](const Similarity& comp) {
    if (comp.rho * base_diam <= max_diam) {
      fn(comp);
      return;
    }
    for (const auto& s : ifs.maps) descend(comp.compose(s));
  };
  descend(identity_map());
}

// --- built-in library ------------------------------------------------------

namespace {

Similarity scale_shift(double rho, Vec2 t) { return Similarity{rho, kIdentity2, t}; }

Ifs make_square() {
  Ifs f;
  f.dim = 2;
  f.name = "square";
  f.declared_measure = 1.0;
  f.maps = {scale_shift(0.5, {0.0, 0.0}), scale_shift(0.5, {0.5, 0.0}),
            scale_shift(0.5, {0.0, 0.5}), scale_shift(0.5, {0.5, 0.5})};
  return f;
}

Ifs make_interval() {
  Ifs f;
  f.dim = 1;
  f.name = "interval";
  f.declared_measure = 1.0;
  f.maps = {scale_shift(0.5, {0.0, 0.0}), scale_shift(0.5, {0.5, 0.0})};
  return f;
}

// Two unit squares [0,1]^2 and [1,2]^2 meeting at the point (1,1). Each square is
// covered by a diagonal pair and a reflected anti-diagonal pair of half-scale copies.
Ifs make_touching_squares() {
  const Mat2 reflect_x{-1.0, 0.0, 0.0, 1.0};
  Ifs f;
  f.dim = 2;
  f.name = "touching-squares";
  f.declared_measure = 2.0;
  f.maps = {Similarity{0.5, kIdentity2, {0.0, 0.0}}, Similarity{0.5, reflect_x, {1.0, 0.0}},
            Similarity{0.5, kIdentity2, {1.0, 1.0}}, Similarity{0.5, reflect_x, {2.0, 1.0}}};
  return f;
}

// Two unit squares [0,1]^2 and [2,3]x[0,1]. Each is diced into a 4x4 grid whose
// cells pair up two columns apart, reproducing the gap-to-side ratio of the pair.
Ifs make_separated_squares() {
  Ifs f;
  f.dim = 2;
  f.name = "separated-squares";
  f.declared_measure = 2.0;
  for (double x0 : {0.0, 2.0})
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j)
        f.maps.push_back(scale_shift(0.25, {x0 + 0.25 * i, 0.25 * j}));
  return f;
}

// Product of the 1-D attractor {0} U union [2^{-2m-1}, 2^{-2m}] with [0,1]:
// eight maps of ratio 1/4 and two of ratio 1/2.
Ifs make_strip_stack() {
  Ifs f;
  f.dim = 2;
  f.name = "strip-stack";
  f.declared_measure = 2.0 / 3.0;
  for (int m = 0; m < 4; ++m) f.maps.push_back(scale_shift(0.25, {0.0, 0.25 * m}));
  for (int m = 0; m < 4; ++m) f.maps.push_back(scale_shift(0.25, {0.5, 0.25 * m}));
  f.maps.push_back(scale_shift(0.5, {0.5, 0.0}));
  f.maps.push_back(scale_shift(0.5, {0.5, 0.5}));
  return f;
}

Ifs make_alpha_intervals(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha-intervals: alpha must lie in (0,1)");
  Ifs f;
  f.dim = 1;
  f.name = "alpha-intervals";
  f.declared_measure = 1.0 / (1.0 + alpha);
  f.maps = {scale_shift(alpha * alpha, {0.0, 0.0}), scale_shift(1.0 - alpha, {alpha, 0.0}),
            scale_shift(alpha * (1.0 - alpha), {alpha, 0.0})};
  return f;
}

// Koch snowflake with its six extreme points on the unit circle (diameter 2).
// One copy scaled by 1/sqrt(3) and rotated 30 degrees sits in the middle; six
// copies scaled by 1/3 sit at the spikes. Area is (6 sqrt(3)/5) R^2 with R = 1.
Ifs make_koch_snowflake() {
  Ifs f;
  f.dim = 2;
  f.name = "koch-snowflake";
  f.declared_measure = 6.0 * std::sqrt(3.0) / 5.0;
  f.maps.push_back(Similarity{1.0 / std::sqrt(3.0), rotation(std::numbers::pi / 6.0), {0.0, 0.0}});
  for (int j = 0; j < 6; ++j) {
    const double th = j * std::numbers::pi / 3.0;
    f.maps.push_back(scale_shift(1.0 / 3.0, {(2.0 / 3.0) * std::cos(th), (2.0 / 3.0) * std::sin(th)}));
  }
  return f;
}

}  // namespace

Ifs builtin_ifs(const std::string& name, double alpha) {
  if (name == "square") return make_square();
  if (name == "interval") return make_interval();
  if (name == "touching-squares") return make_touching_squares();
  if (name == "separated-squares") return make_separated_squares();
  if (name == "strip-stack") return make_strip_stack();
  if (name == "alpha-intervals") return make_alpha_intervals(alpha);
  if (name == "koch-snowflake") return make_koch_snowflake();
  throw std::invalid_argument("unknown built-in attractor: " + name);
}

std::vector<std::string> builtin_ifs_names() {
  return {"square",      "touching-squares", "separated-squares", "strip-stack",
          "alpha-intervals", "koch-snowflake",   "interval"};
}

}  // namespace fractbem
