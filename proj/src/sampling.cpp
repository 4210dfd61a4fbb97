#include "fractbem/sampling.hpp"

#include <cmath>

namespace fractbem {

ChaosSampler::ChaosSampler(const AttractorModel& model, std::uint64_t seed, std::uint64_t stream,
                           double quant_rel)
    : model_(&model), rng_{seed, stream}, quant_rel_(quant_rel) {
  double acc = 0.0;
  for (const auto& s : model.ifs.maps) acc += std::pow(s.rho, model.ifs.dim);
  double run = 0.0;
  for (const auto& s : model.ifs.maps) {
    run += std::pow(s.rho, model.ifs.dim) / acc;
    cdf_.push_back(run);
  }
  cdf_.back() = 1.0;
}

Vec2 ChaosSampler::sample(std::uint64_t counter) const {
  Similarity comp = identity_map();
  // sub-draws hashed from (counter, step) keep samples independent
  for (std::uint64_t step = 0; comp.rho > quant_rel_; ++step) {
    const double u = rng_.uniform(counter * 0x100000001b3ull + step);
    std::size_t m = 0;
    while (m + 1 < cdf_.size() && u >= cdf_[m]) ++m;
    comp = comp.compose(model_->ifs.maps[m]);
  }
  return comp(model_->barycenter);
}

}  // namespace fractbem
