#include <cmath>

#include "doctest.h"
#include "fractbem/attractor.hpp"
#include "fractbem/sampling.hpp"

using namespace fractbem;

TEST_CASE("barycenters: symmetry and fixed-point residual") {
  const AttractorModel sq = build_attractor(builtin_ifs("square"));
  CHECK(sq.barycenter[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sq.barycenter[1] == doctest::Approx(0.5).epsilon(1e-12));

  // x_b = sum_m w_m s_m(x_b) with w_m = rho_m^n
  for (const auto& name : builtin_ifs_names()) {
    const AttractorModel m = build_attractor(builtin_ifs(name));
    Vec2 img{0.0, 0.0};
    double wsum = 0.0;
    for (const auto& s : m.ifs.maps) {
      const double w = std::pow(s.rho, m.ifs.dim);
      img = img + w * s(m.barycenter);
      wsum += w;
    }
    CAPTURE(name);
    CHECK(dist((1.0 / wsum) * img, m.barycenter) < 1e-12);
  }

  // the child-cell barycenter is the image of the attractor barycenter
  const AttractorModel koch = build_attractor(builtin_ifs("koch-snowflake"));
  CHECK(dist(koch.barycenter, Vec2{0.0, 0.0}) < 1e-12);
}

TEST_CASE("alpha-intervals barycenter: geometric series value 3/5") {
  // sum of interval midpoints weighted by lengths: 2/5 over measure 2/3
  const AttractorModel m = build_attractor(builtin_ifs("alpha-intervals"));
  CHECK(m.barycenter[0] == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("barycenter agrees with chaos-game mean (strip-stack)") {
  const AttractorModel m = build_attractor(builtin_ifs("strip-stack"));
  CHECK(m.barycenter[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(m.barycenter[1] == doctest::Approx(0.5).epsilon(1e-12));
  const ChaosSampler sampler(m, 12345);
  const long n = 200000;
  double sx = 0.0, sxx = 0.0;
  for (long i = 0; i < n; ++i) {
    const Vec2 p = sampler.sample(i);
    sx += p[0];
    sxx += p[0] * p[0];
  }
  const double mean = sx / n;
  const double sd = std::sqrt((sxx / n - mean * mean) / n);
  CHECK(std::abs(mean - m.barycenter[0]) < 3.0 * sd + 1e-5);
}

TEST_CASE("invariant bounding ball contains the maps' images") {
  for (const auto& name : builtin_ifs_names()) {
    const AttractorModel m = build_attractor(builtin_ifs(name));
    CAPTURE(name);
    for (const auto& s : m.ifs.maps)
      CHECK(s.rho * m.ball_radius + dist(s(m.ball_center), m.ball_center) <=
            m.ball_radius * (1.0 + 1e-10));
  }
}

TEST_CASE("bounding ball: duplicated contraction to the origin gives R = 0") {
  Ifs f;
  f.dim = 2;
  f.name = "point";
  f.maps = {Similarity{0.5, kIdentity2, {0.0, 0.0}}, Similarity{0.5, kIdentity2, {0.0, 0.0}}};
  Vec2 c;
  double R;
  invariant_bounding_ball(f, c, R);
  CHECK(dist(c, Vec2{0.0, 0.0}) < 1e-14);
  CHECK(R < 1e-14);
}

TEST_CASE("koch ball encloses deep sample points") {
  const AttractorModel m = build_attractor(builtin_ifs("koch-snowflake"));
  const ChaosSampler sampler(m, 99, 0, 1e-4);
  double worst = 0.0;
  for (long i = 0; i < 100000; ++i)
    worst = std::max(worst, dist(sampler.sample(i), m.ball_center));
  CHECK(worst <= m.ball_radius * (1.0 + 1e-9));
}

TEST_CASE("certified diameters of the shipped attractors") {
  auto check_h0 = [](const char* name, double expect) {
    const AttractorModel m = build_attractor(builtin_ifs(name));
    CAPTURE(name);
    CHECK(m.h0_gap < 1e-8 * m.ball_radius * 10);
    CHECK(m.h0 == doctest::Approx(expect).epsilon(1e-8));
  };
  check_h0("square", std::sqrt(2.0));
  check_h0("interval", 1.0);
  check_h0("alpha-intervals", 1.0);
  check_h0("touching-squares", 2.0 * std::sqrt(2.0));
  check_h0("separated-squares", std::sqrt(10.0));
  check_h0("strip-stack", std::sqrt(2.0));
  check_h0("koch-snowflake", 2.0);
}

TEST_CASE("koch diameter matches a brute-force point cloud") {
  const AttractorModel m = build_attractor(builtin_ifs("koch-snowflake"));
  const ChaosSampler sampler(m, 7, 0, 1e-3);
  std::vector<Vec2> pts(4000);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = sampler.sample(i);
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, dist(pts[i], pts[j]));
  CHECK(best <= m.h0 + m.h0_gap + 1e-9);
  CHECK(best >= m.h0 - 0.03);  // cloud misses extreme points by at most the sample quantization
}

TEST_CASE("declared measures pass through exactly") {
  const AttractorModel sq = build_attractor(builtin_ifs("square"));
  CHECK(sq.measure == 1.0);
  CHECK(sq.measure_err == 0.0);
  CHECK(sq.measure_declared);
}

TEST_CASE("raster measure estimator brackets the analytic values") {
  // separated squares: area 2 (sum of the two unit squares)
  Ifs f = builtin_ifs("separated-squares");
  f.declared_measure.reset();
  AttractorBuildOptions opts;
  opts.measure_rel_tol = 5e-3;
  const AttractorModel m = build_attractor(f, opts);
  CHECK_FALSE(m.measure_declared);
  CHECK(std::abs(m.measure - 2.0) <= m.measure_err + 0.01);

  Ifs koch = builtin_ifs("koch-snowflake");
  const double analytic = *koch.declared_measure;
  koch.declared_measure.reset();
  const AttractorModel k = build_attractor(koch, opts);
  CHECK(std::abs(k.measure - analytic) <= k.measure_err + 0.02);
}
