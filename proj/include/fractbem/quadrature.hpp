#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "fractbem/kernels.hpp"
#include "fractbem/mesh.hpp"

namespace fractbem {

// Composite barycenter rule on a cell: nodes are the barycenters of the cell's
// diameter sub-mesh at size h_q, weights the sub-cell measures.
struct CellRule {
  std::vector<Vec2> nodes;
  std::vector<double> weights;
  double h_q = 0.0;

  double weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

CellRule cell_rule(const AttractorModel& model, const Cell& cell, double h_q);

// first-order composite rule; exact for constants, exact for affine f by symmetry
double integrate_on_cell(const AttractorModel& model, const Cell& cell,
                         const std::function<double(Vec2)>& f, double h_q);
cplx integrate_on_cell(const AttractorModel& model, const Cell& cell,
                       const std::function<cplx(Vec2)>& f, double h_q);

// --- singular pair integration ----------------------------------------------

// coeff * r^{-exponent} with 0 <= exponent < n on an n-set (integrability)
struct PowerKernel {
  double exponent = 1.0;
  double coeff = 1.0;
};

// coeff * ln(r)
struct LogKernel {
  double coeff = 1.0;
};

using SingularKernel = std::variant<PowerKernel, LogKernel>;

enum class PairClass { Coincident, Separated, Touching };

struct QuadParams {
  double h_q = 0.0;        // absolute sub-rule size for tensor rules (0: one node per cell)
  double eta = 1.0;        // admissibility: separated iff ball gap >= eta * max diameter
  int depth_cap = 30;      // touching-pair recursion guard
  double kappa = 0.1;      // distance-proportional refinement: rule size <= kappa * gap
  bool force_recursive_coincident = false;  // bypass the self-similar closure (testing)
};

PairClass classify_pair(const Cell& a, const Cell& b, double eta);

struct PairResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;  // recorded truncation/rule bound, same units as value
  long kernel_evals = 0;
  int max_depth = 0;
};

// Integral of a radial singular kernel over cell_a x cell_b against the product
// of the attractor surface measures. Separated pairs use tensor barycenter
// rules, touching pairs recurse geometrically, coincident pairs use the exact
// self-similar closure (homogeneous IFS) or capped recursion (inhomogeneous).
PairResult singular_pair_integral(const AttractorModel& model, const Cell& a, const Cell& b,
                                  const SingularKernel& kernel, const QuadParams& params);

// Tensor barycenter rule for a kernel smooth on the closed product (a value at
// r = 0 must be supplied through the functor when the pair touches).
PairResult smooth_pair_integral(const AttractorModel& model, const Cell& a, const Cell& b,
                                const std::function<cplx(double)>& kernel_of_r,
                                const QuadParams& params, double oscillation_scale = 0.0);

// Full Helmholtz weakly singular double integral over a cell pair:
// separated pairs integrate Phi directly, touching and coincident pairs use the
// kernel split (singular machinery + smooth remainder rule).
PairResult helmholtz_pair_integral(const AttractorModel& model, const Cell& a, const Cell& b,
                                   double k, const QuadParams& params);

}  // namespace fractbem
