#pragma once

#include <optional>

#include "fractbem/ifs.hpp"

namespace fractbem {

// Attractor-level constants used by meshing, quadrature and the BEM:
// an invariant bounding ball, the diameter h0 with a certified gap, the
// n-dimensional Lebesgue measure (with error bar), and the barycenter of the
// normalized self-similar measure.
struct AttractorModel {
  Ifs ifs;
  Vec2 ball_center{0.0, 0.0};
  double ball_radius = 0.0;
  double h0 = 0.0;        // diameter estimate (midpoint of certified interval)
  double h0_gap = 0.0;    // full width of the certified interval
  double measure = 0.0;
  double measure_err = 0.0;  // half-width; 0 when the measure was declared
  bool measure_declared = false;
  Vec2 barycenter{0.0, 0.0};
};

struct AttractorBuildOptions {
  double diameter_rel_tol = 1e-9;   // target h0 gap relative to the ball radius
  int diameter_depth_cap = 60;
  double measure_rel_tol = 1e-3;    // raster fallback target for |Gamma|
  std::size_t measure_pixel_cap = 1u << 26;
};

// Fixed point of x = sum_m w_m s_m(x) with weights w_m = rho_m^n (normalized).
Vec2 attractor_barycenter(const Ifs& ifs);

// Ball B(c,R) with s_m(B) subset of B for every m, seeded at the barycenter.
void invariant_bounding_ball(const Ifs& ifs, Vec2& center, double& radius);

// Certified diameter: branch-and-bound over cell pairs. Returns the midpoint
// estimate and the achieved gap (may exceed the request at the depth cap).
void attractor_diameter(const Ifs& ifs, Vec2 ball_center, double ball_radius,
                        double rel_tol, int depth_cap, double& h0, double& gap);

// Raster sandwich estimate of |Gamma|: pixel counts of an outer cover and an
// eroded inner region. flagged_coarse is set when the requested relative bar
// was not reached at the pixel cap.
struct MeasureEstimate {
  double value = 0.0;
  double half_gap = 0.0;
  bool flagged_coarse = false;
};
MeasureEstimate raster_measure(const Ifs& ifs, Vec2 ball_center, double ball_radius,
                               double h0, double rel_tol, std::size_t pixel_cap);

AttractorModel build_attractor(const Ifs& ifs, const AttractorBuildOptions& opts = {});

}  // namespace fractbem
