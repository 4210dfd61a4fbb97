#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fractbem/similarity.hpp"

namespace fractbem {

// An iterated function system of M >= 2 contracting similarities in R^n, n in {1,2}.
struct Ifs {
  int dim = 2;
  std::vector<Similarity> maps;
  std::string name;
  std::optional<double> declared_measure;

  int map_count() const { return static_cast<int>(maps.size()); }

  double rho_min() const;
  double rho_max() const;
  bool homogeneous(double tol = 1e-12) const;

  // sum_m rho_m^p
  double ratio_power_sum(double p) const;

  // true when the similarity dimension equals the ambient dimension
  bool is_n_attractor(double tol = 1e-12) const { return std::abs(ratio_power_sum(dim) - 1.0) <= tol; }
};

// throws invalid_argument with a field path on any malformed entry
void validate_ifs(const Ifs& ifs);

// Unique positive solution d of sum_m rho_m^d = 1 (monotone bisection + Newton polish).
double similarity_dimension(const Ifs& ifs);

// Depth descent over composed maps: calls fn(composed) for each node of the index
// tree whose image diameter first drops to <= max_diam, where the image diameter
// is measured as composed.rho * base_diam. Left-to-right composition order.
void for_each_deep_cell(const Ifs& ifs, double base_diam, double max_diam,
                        const std::function<void(const Similarity&)>& fn);

// --- built-in attractor library ------------------------------------------------

// Names: "square", "touching-squares", "separated-squares", "strip-stack",
// "alpha-intervals" (alpha parameter, default 0.5), "koch-snowflake", "interval".
Ifs builtin_ifs(const std::string& name, double alpha = 0.5);
std::vector<std::string> builtin_ifs_names();

}  // namespace fractbem
