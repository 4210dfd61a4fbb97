#pragma once

#include <functional>

#include "fractbem/quadrature.hpp"
#include "fractbem/sampling.hpp"

namespace fractbem {

struct McResult {
  cplx value{0.0, 0.0};
  double stderr_est = 0.0;
  long samples = 0;
};

// Chaos-game estimate of integral_cell f dmu (i.i.d. random-composition draws of
// the self-similar measure, quantized at quant_rel * h0).
McResult mc_cell_integral(const AttractorModel& model, const Cell& cell,
                          const std::function<double(Vec2)>& f, long samples,
                          std::uint64_t seed, double quant_rel = 1e-6);
McResult mc_cell_integral(const AttractorModel& model, const Cell& cell,
                          const std::function<cplx(Vec2)>& f, long samples,
                          std::uint64_t seed, double quant_rel = 1e-6);

// Double integral of a bounded kernel over cell_a x cell_b (independent draws).
McResult mc_pair_smooth(const AttractorModel& model, const Cell& a, const Cell& b,
                        const std::function<cplx(double)>& kernel_of_r, long samples,
                        std::uint64_t seed, double quant_rel = 1e-6);

// Double integral of a weakly singular radial kernel: hierarchical importance
// sampling on the pair tree. Child pairs are drawn with probability
// proportional to |a_m||b_m'| Ktilde(d), so the likelihood ratio stays O(1)
// next to the singularity and the estimator has finite variance.
McResult mc_pair_singular(const AttractorModel& model, const Cell& a, const Cell& b,
                          const SingularKernel& kernel, long samples, std::uint64_t seed,
                          double quant_rel = 1e-6);

// Full Helmholtz kernel: singular part via the tree sampler, remainder via
// independent draws; stderr combines both parts in quadrature.
McResult mc_pair_helmholtz(const AttractorModel& model, const Cell& a, const Cell& b,
                           double k, long samples, std::uint64_t seed, double quant_rel = 1e-6);

}  // namespace fractbem
