#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fractbem/linalg.hpp"

namespace fractbem {

// Contracting similarity s(x) = rho * R * x + t with rho in (0,1) and R orthogonal.
// For ambient dimension 1 the second coordinate is carried along untouched.
struct Similarity {
  double rho = 0.5;
  Mat2 R = kIdentity2;
  Vec2 t{0.0, 0.0};

  Vec2 operator()(Vec2 x) const { return rho * mat_apply(R, x) + t; }

  // composition (a.compose(b))(x) = a(b(x))
  Similarity compose(const Similarity& b) const {
    Similarity c;
    c.rho = rho * b.rho;
    c.R = matmul(R, b.R);
    c.t = rho * mat_apply(R, b.t) + t;
    return c;
  }

  Similarity inverse() const {
    Similarity inv;
    inv.rho = 1.0 / rho;
    inv.R = transpose(R);
    inv.t = (-1.0 / rho) * mat_apply(transpose(R), t);
    return inv;
  }
};

inline Similarity identity_map() { return Similarity{1.0, kIdentity2, {0.0, 0.0}}; }

inline void validate_similarity(const Similarity& s, const std::string& where) {
  if (!(s.rho > 0.0 && s.rho < 1.0))
    throw std::invalid_argument(where + ".rho: contraction ratio must lie in (0,1), got " +
                                std::to_string(s.rho));
  if (orthogonality_defect(s.R) > 1e-12)
    throw std::invalid_argument(where + ".orthogonal: matrix is not orthogonal within 1e-12");
}

}  // namespace fractbem
