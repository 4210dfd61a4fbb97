#include <cmath>

#include "doctest.h"
#include "fractbem/mc_oracle.hpp"
#include "fractbem/quadrature.hpp"

using namespace fractbem;

namespace {

AttractorModel square_model() { return build_attractor(builtin_ifs("square")); }

Cell root_of(const AttractorModel& m) { return make_cell(m, MultiIndex{}); }

}  // namespace

TEST_CASE("cell rule: weights are positive and sum to the cell measure") {
  const AttractorModel m = build_attractor(builtin_ifs("koch-snowflake"));
  const FractalMesh mesh = generate_diameter_mesh(m, m.h0 / 5.0);
  for (std::size_t i = 0; i < mesh.size(); i += 11) {
    const CellRule rule = cell_rule(m, mesh.cells[i], mesh.cells[i].diameter / 8.0);
    for (double w : rule.weights) CHECK(w > 0.0);
    CHECK(rule.weight_sum() == doctest::Approx(mesh.cells[i].measure).epsilon(1e-12));
  }
}

TEST_CASE("integrate_on_cell: constants exactly, affine exactly on the square") {
  const AttractorModel m = square_model();
  const Cell root = root_of(m);
  CHECK(integrate_on_cell(m, root, std::function<double(Vec2)>([](Vec2) { return 1.0; }), 0.1) ==
        doctest::Approx(m.measure).epsilon(1e-13));
  for (double hq : {1.0, 0.25, 0.05}) {
    const double v =
        integrate_on_cell(m, root, std::function<double(Vec2)>([](Vec2 x) { return x[0]; }), hq);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("integrate_on_cell: oscillatory integrand on the snowflake vs chaos game") {
  const AttractorModel m = build_attractor(builtin_ifs("koch-snowflake"));
  const Cell root = root_of(m);
  const double k = 5.0;
  auto f = [k](Vec2 x) { return std::polar(1.0, k * (0.6 * x[0] + 0.8 * x[1])); };
  const cplx rule = integrate_on_cell(m, root, std::function<cplx(Vec2)>(f), m.h0 / 256.0);
  const McResult mc = mc_cell_integral(m, root, std::function<cplx(Vec2)>(f), 400000, 424242);
  CHECK(std::abs(rule - mc.value) < 3.0 * mc.stderr_est + 2e-4);
}

TEST_CASE("pair classification") {
  const AttractorModel m = square_model();
  const FractalMesh mesh = generate_level_mesh(m, 2);
  const Cell& c0 = mesh.cells[0];
  CHECK(classify_pair(c0, c0, 1.0) == PairClass::Coincident);
  int sep = 0, touch = 0;
  for (const auto& c : mesh.cells) {
    if (c.index == c0.index) continue;
    const PairClass pc = classify_pair(c0, c, 1.0);
    (pc == PairClass::Separated ? sep : touch)++;
    const double gap = dist(c0.ball_center, c.ball_center) - c0.ball_radius - c.ball_radius;
    if (pc == PairClass::Separated) CHECK(gap >= std::max(c0.diameter, c.diameter));
  }
  CHECK(sep > 0);
  CHECK(touch > 0);
}

TEST_CASE("self-similar scaling: child self-integral is rho^{2n-t} times the parent") {
  const AttractorModel m = square_model();
  QuadParams q;
  q.h_q = m.h0 / 32.0;
  const SingularKernel ker = PowerKernel{1.0, 1.0};
  const Cell root = root_of(m);
  const Cell child = make_cell(m, MultiIndex{{2}});
  const PairResult ir = singular_pair_integral(m, root, root, ker, q);
  QuadParams qc = q;
  qc.h_q = q.h_q / 2.0;
  const PairResult ic = singular_pair_integral(m, child, child, ker, qc);
  // rho^{2n-t} = (1/2)^3 = 1/8; both sides computed by the same closure
  CHECK(ic.value.real() / ir.value.real() == doctest::Approx(0.125).epsilon(2e-3));
}

TEST_CASE("log-kernel additive scaling on the interval") {
  const AttractorModel m = build_attractor(builtin_ifs("interval"));
  QuadParams q;
  q.h_q = m.h0 / 64.0;
  const SingularKernel ker = LogKernel{1.0};
  const Cell root = root_of(m);
  const Cell child = make_cell(m, MultiIndex{{1}});
  const double ir = singular_pair_integral(m, root, root, ker, q).value.real();
  QuadParams qc = q;
  qc.h_q = q.h_q / 2.0;
  const double ic = singular_pair_integral(m, child, child, ker, qc).value.real();
  // int_{child^2} ln = rho^{2n} (int_{root^2} ln + ln(rho) |root|^2), rho = 1/2, n = 1
  const double expect = 0.25 * (ir + std::log(0.5) * m.measure * m.measure);
  CHECK(ic == doctest::Approx(expect).epsilon(2e-3));
}

TEST_CASE("homogeneous closure matches depth-8 forced recursion within 0.5%") {
  const AttractorModel m = square_model();
  QuadParams q;
  q.h_q = m.h0 / 64.0;
  q.kappa = 0.15;
  const SingularKernel ker = PowerKernel{1.0, 1.0};
  const Cell root = root_of(m);
  const double closure = singular_pair_integral(m, root, root, ker, q).value.real();
  QuadParams qr = q;
  qr.force_recursive_coincident = true;
  qr.depth_cap = 8;
  const PairResult rec = singular_pair_integral(m, root, root, ker, qr);
  CHECK(std::abs(rec.value.real() - closure) / closure < 5e-3);
  CHECK(rec.error_estimate > 0.0);  // truncation bound recorded
}

TEST_CASE("square x square 1/r integral: rule vs importance-sampled Monte-Carlo") {
  const AttractorModel m = square_model();
  QuadParams q;
  q.h_q = m.h0 / 64.0;
  q.kappa = 0.15;
  const SingularKernel ker = PowerKernel{1.0, 1.0};
  const Cell root = root_of(m);
  const double rule = singular_pair_integral(m, root, root, ker, q).value.real();
  const McResult mc = mc_pair_singular(m, root, root, ker, 1000000, 777);
  CAPTURE(rule);
  CAPTURE(mc.value.real());
  CAPTURE(mc.stderr_est);
  CHECK(rule > 0.0);
  CHECK(std::abs(rule - mc.value.real()) < 3.0 * mc.stderr_est + 5e-3 * rule);
}

TEST_CASE("double integral symmetry is exact after canonicalization") {
  const AttractorModel m = build_attractor(builtin_ifs("koch-snowflake"));
  const FractalMesh mesh = generate_diameter_mesh(m, m.h0 / 3.0);
  REQUIRE(mesh.size() >= 7);
  QuadParams q;
  q.h_q = m.h0 / 24.0;
  const SingularKernel ker = PowerKernel{1.0, 1.0};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) {
      const PairResult ab = singular_pair_integral(m, mesh.cells[i], mesh.cells[j], ker, q);
      const PairResult ba = singular_pair_integral(m, mesh.cells[j], mesh.cells[i], ker, q);
      CHECK(ab.value.real() == ba.value.real());
      CHECK(ab.value.real() > 0.0);
    }
}

TEST_CASE("refinement convergence on a smooth pair kernel") {
  const AttractorModel m = square_model();
  const Cell a = make_cell(m, MultiIndex{{1}});
  const Cell b = make_cell(m, MultiIndex{{4}});
  auto kernel = [](double r) { return cplx(std::cos(r), std::sin(r)); };
  QuadParams q;
  double prev_err = 1e9;
  cplx finest;
  {
    QuadParams qf;
    qf.h_q = m.h0 / 256.0;
    finest = smooth_pair_integral(m, a, b, kernel, qf).value;
  }
  for (double hq : {m.h0 / 4.0, m.h0 / 8.0, m.h0 / 16.0, m.h0 / 32.0}) {
    q.h_q = hq;
    const cplx v = smooth_pair_integral(m, a, b, kernel, q).value;
    const double err = std::abs(v - finest);
    CHECK(err < prev_err + 1e-12);
    prev_err = err;
  }
}

TEST_CASE("montecarlo oracle basics") {
  const AttractorModel m = square_model();
  const Cell root = root_of(m);
  // f == 1: estimate equals the measure with zero spread
  const McResult one =
      mc_cell_integral(m, root, std::function<double(Vec2)>([](Vec2) { return 1.0; }), 5000, 1);
  CHECK(one.value.real() == doctest::Approx(m.measure).epsilon(1e-12));
  CHECK(one.stderr_est < 1e-12);
  // f = x1: mean 1/2 within 3 sigma
  const McResult mx =
      mc_cell_integral(m, root, std::function<double(Vec2)>([](Vec2 x) { return x[0]; }), 200000, 2);
  CHECK(std::abs(mx.value.real() - 0.5) < 3.0 * mx.stderr_est + 1e-4);
}

TEST_CASE("montecarlo vs composite rule on the snowflake second moment") {
  const AttractorModel m = build_attractor(builtin_ifs("koch-snowflake"));
  const Cell root = root_of(m);
  auto f = [&m](Vec2 x) {
    const double dx = x[0] - m.barycenter[0], dy = x[1] - m.barycenter[1];
    return dx * dx + dy * dy;
  };
  const double rule =
      integrate_on_cell(m, root, std::function<double(Vec2)>(f), m.h0 / 128.0);
  const McResult mc = mc_cell_integral(m, root, std::function<double(Vec2)>(f), 300000, 3);
  CHECK(std::abs(rule - mc.value.real()) < 3.0 * mc.stderr_est + 1e-3);
}

TEST_CASE("non-integrable exponents are rejected") {
  const AttractorModel m = square_model();
  const Cell root = root_of(m);
  QuadParams q;
  CHECK_THROWS_AS(singular_pair_integral(m, root, root, PowerKernel{2.0, 1.0}, q),
                  std::invalid_argument);
  CHECK_THROWS_AS(singular_pair_integral(m, root, root, PowerKernel{2.5, 1.0}, q),
                  std::invalid_argument);
}

TEST_CASE("helmholtz pair integral: split consistency on a separated pair") {
  // on separated pairs the direct rule and the split must agree closely
  const AttractorModel m = square_model();
  const Cell a = make_cell(m, MultiIndex{{1, 1}});
  const Cell b = make_cell(m, MultiIndex{{4, 4}});
  const double k = 2.0;
  QuadParams q;
  q.h_q = m.h0 / 64.0;
  const PairResult direct = helmholtz_pair_integral(m, a, b, k, q);
  const PairResult sing = singular_pair_integral(
      m, a, b, PowerKernel{1.0, 1.0 / (4.0 * std::numbers::pi)}, q);
  const PairResult rem = smooth_pair_integral(
      m, a, b, [k](double r) { return kernel_remainder(2, k, r); }, q, 0.5 / k);
  CHECK(std::abs(direct.value - (sing.value + rem.value)) < 2e-3 * std::abs(direct.value));
}
