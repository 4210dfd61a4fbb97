#pragma once

#include <cstdint>
#include <vector>

#include "fractbem/mesh.hpp"
#include "fractbem/rng.hpp"

namespace fractbem {

// Random-composition sampler of the normalized self-similar measure: children
// are selected with probability rho_m^n and composed until the image diameter
// drops below quant_rel * h0. Each call is an independent draw.
class ChaosSampler {
 public:
  ChaosSampler(const AttractorModel& model, std::uint64_t seed, std::uint64_t stream = 0,
               double quant_rel = 1e-6);

  // i.i.d. sample of the attractor measure (counter selects the draw)
  Vec2 sample(std::uint64_t counter) const;

  // sample restricted to a cell: push the attractor draw through the cell map
  Vec2 sample_in_cell(const Cell& cell, std::uint64_t counter) const {
    return cell.map(sample(counter));
  }

 private:
  const AttractorModel* model_;
  CounterRng rng_;
  double quant_rel_;
  std::vector<double> cdf_;  // child-selection cumulative weights
};

}  // namespace fractbem
