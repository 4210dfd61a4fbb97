#include "fractbem/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace fractbem {

Vec2 attractor_barycenter(const Ifs& ifs) {
  // x = sum_m w_m (rho_m R_m x + t_m), w_m = rho_m^n normalized. The weighted
  // map sum has spectral radius <= sum w_m rho_m < 1, so I - W is invertible.
  const int n = ifs.dim;
  double wsum = 0.0;
  Mat2 W{0.0, 0.0, 0.0, 0.0};
  Vec2 b{0.0, 0.0};
  for (const auto& s : ifs.maps) {
    const double w = std::pow(s.rho, n);
    wsum += w;
    for (int k = 0; k < 4; ++k) W[k] += w * s.rho * s.R[k];
    b = b + w * s.t;
  }
  for (int k = 0; k < 4; ++k) W[k] /= wsum;
  b = (1.0 / wsum) * b;
  // solve (I - W) x = b directly (2x2)
  const double a00 = 1.0 - W[0], a01 = -W[1], a10 = -W[2], a11 = 1.0 - W[3];
  const double det = a00 * a11 - a01 * a10;
  if (std::abs(det) < 1e-14)
    throw std::runtime_error("attractor_barycenter: singular barycenter system (conditioning anomaly)");
  Vec2 x{(a11 * b[0] - a01 * b[1]) / det, (-a10 * b[0] + a00 * b[1]) / det};
  if (ifs.dim == 1) x[1] = 0.0;
  return x;
}

void invariant_bounding_ball(const Ifs& ifs, Vec2& center, double& radius) {
  center = attractor_barycenter(ifs);
  double R = 0.0;
  for (int it = 0; it < 10000; ++it) {
    double next = 0.0;
    for (const auto& s : ifs.maps) next = std::max(next, s.rho * R + dist(s(center), center));
    if (next <= R * (1.0 + 1e-15) + 1e-300) {
      R = next;
      break;
    }
    R = next;
  }
  // nudge so s_m(B) is inside B despite rounding
  radius = R * (1.0 + 1e-12);
}

namespace {

struct DiamNode {
  Similarity a, b;
  double upper;  // upper bound on max distance between points of the two cells
  bool operator<(const DiamNode& o) const { return upper < o.upper; }
};

}  // namespace

void attractor_diameter(const Ifs& ifs, Vec2 ball_center, double ball_radius,
                        double rel_tol, int depth_cap, double& h0, double& gap) {
  const double tol = rel_tol * std::max(ball_radius, 1e-30);
  auto cell_point = [&](const Similarity& s) { return s(ball_center); };
  auto pair_upper = [&](const Similarity& a, const Similarity& b) {
    return dist(cell_point(a), cell_point(b)) + (a.rho + b.rho) * ball_radius;
  };

  std::priority_queue<DiamNode> queue;
  const Similarity root = identity_map();
  queue.push({root, root, pair_upper(root, root)});
  double best_lower = 0.0;

  // Split the larger cell of the pair with the largest upper bound. Pairs whose
  // bound cannot beat the best barycenter-pair distance are dropped: best_lower
  // only grows, so they never influence the final certified upper bound.
  const double rho_floor = std::pow(ifs.rho_min(), depth_cap);
  double best_upper = queue.top().upper;
  long guard = 0;
  while (!queue.empty() && ++guard < 4000000) {
    DiamNode top = queue.top();
    best_upper = top.upper;
    if (top.upper <= best_lower + tol) break;
    const Similarity& split = top.a.rho >= top.b.rho ? top.a : top.b;
    if (split.rho < rho_floor) break;  // depth cap: report the achieved gap
    const Similarity fixed = top.a.rho >= top.b.rho ? top.b : top.a;
    const Similarity splitc = split;
    queue.pop();
    for (const auto& s : ifs.maps) {
      const Similarity child = splitc.compose(s);
      best_lower = std::max(best_lower, dist(cell_point(child), cell_point(fixed)));
      const double ub = pair_upper(child, fixed);
      if (ub > best_lower) queue.push({child, fixed, ub});
    }
  }
  best_upper = std::max(best_upper, best_lower);
  gap = best_upper - best_lower;
  h0 = 0.5 * (best_lower + best_upper);
}

MeasureEstimate raster_measure(const Ifs& ifs, Vec2 ball_center, double ball_radius,
                               double h0, double rel_tol, std::size_t pixel_cap) {
  const int n = ifs.dim;
  MeasureEstimate est;
  // grid resolution from the requested relative bar: gap scales like g * boundary size
  double g = std::max(rel_tol * h0 * 0.25, h0 * 1e-6);
  for (int attempt = 0; attempt < 24; ++attempt) {
    const double lo0 = ball_center[0] - ball_radius - 2.0 * g;
    const double lo1 = (n == 2) ? ball_center[1] - ball_radius - 2.0 * g : 0.0;
    const std::size_t nx = static_cast<std::size_t>(std::ceil(2.0 * (ball_radius + 2.0 * g) / g)) + 1;
    const std::size_t ny = (n == 2) ? nx : 1;
    if (nx * ny > pixel_cap) {
      est.flagged_coarse = true;
      break;
    }
    std::vector<std::uint8_t> cover(nx * ny, 0);
    // cover pixels touched by the bounding ball of any deep cell
    const double cell_diam_target = 0.5 * g;
    double slack = 0.0;  // max cell ball radius actually used
    for_each_deep_cell(ifs, 2.0 * ball_radius, cell_diam_target, [&](const Similarity& comp) {
      const Vec2 c = comp(ball_center);
      const double r = comp.rho * ball_radius;
      slack = std::max(slack, r);
      const long i0 = std::max(0L, static_cast<long>(std::floor((c[0] - r - lo0) / g)));
      const long i1 = std::min<long>(nx - 1, static_cast<long>(std::floor((c[0] + r - lo0) / g)));
      const long j0 = (n == 2) ? std::max(0L, static_cast<long>(std::floor((c[1] - r - lo1) / g))) : 0;
      const long j1 = (n == 2) ? std::min<long>(ny - 1, static_cast<long>(std::floor((c[1] + r - lo1) / g))) : 0;
      for (long j = j0; j <= j1; ++j)
        for (long i = i0; i <= i1; ++i) cover[j * nx + i] = 1;
    });
    std::size_t n_cover = 0;
    for (auto v : cover) n_cover += v;
    // inner pixels: those whose inflation by the cover slack stays in the cover
    const long infl = static_cast<long>(std::ceil(slack / g)) + 1;
    std::size_t n_inner = 0;
    for (long j = 0; j < static_cast<long>(ny); ++j)
      for (long i = 0; i < static_cast<long>(nx); ++i) {
        if (!cover[j * nx + i]) continue;
        bool inner = true;
        for (long dj = (n == 2 ? -infl : 0); inner && dj <= (n == 2 ? infl : 0); ++dj)
          for (long di = -infl; di <= infl; ++di) {
            const long ii = i + di, jj = j + dj;
            if (ii < 0 || jj < 0 || ii >= static_cast<long>(nx) || jj >= static_cast<long>(ny) ||
                !cover[jj * nx + ii]) {
              inner = false;
              break;
            }
          }
        n_inner += inner;
      }
    const double pix = (n == 2) ? g * g : g;
    const double upper = static_cast<double>(n_cover) * pix;
    const double lower = static_cast<double>(n_inner) * pix;
    est.value = 0.5 * (lower + upper);
    est.half_gap = 0.5 * (upper - lower);
    est.flagged_coarse = false;
    if (est.half_gap <= rel_tol * est.value || est.value == 0.0) return est;
    g *= 0.5;  // refine and retry
  }
  est.flagged_coarse = true;
  return est;
}

AttractorModel build_attractor(const Ifs& ifs, const AttractorBuildOptions& opts) {
  validate_ifs(ifs);
  AttractorModel model;
  model.ifs = ifs;
  model.barycenter = attractor_barycenter(ifs);
  invariant_bounding_ball(ifs, model.ball_center, model.ball_radius);
  attractor_diameter(ifs, model.ball_center, model.ball_radius, opts.diameter_rel_tol,
                     opts.diameter_depth_cap, model.h0, model.h0_gap);
  if (ifs.declared_measure) {
    model.measure = *ifs.declared_measure;
    model.measure_err = 0.0;
    model.measure_declared = true;
  } else {
    const MeasureEstimate est = raster_measure(ifs, model.ball_center, model.ball_radius,
                                               model.h0, opts.measure_rel_tol, opts.measure_pixel_cap);
    if (est.value <= 0.0)
      throw std::runtime_error("build_attractor: measure estimate degenerate");
    model.measure = est.value;
    model.measure_err = est.half_gap;
    model.measure_declared = false;
  }
  return model;
}

}  // namespace fractbem
