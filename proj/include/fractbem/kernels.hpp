#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "fractbem/bessel.hpp"
#include "fractbem/linalg.hpp"

namespace fractbem {

using cplx = std::complex<double>;

struct Wavenumber {
  double k;
  explicit Wavenumber(double k_) : k(k_) {
    if (!(k > 0.0)) throw std::invalid_argument("Wavenumber: k must be positive");
  }
};

// Plane wave e^{i k theta . x} in R^{n+1}, |theta| = 1.
struct IncidentPlaneWave {
  Wavenumber k;
  Vec3 direction;

  IncidentPlaneWave(Wavenumber k_, Vec3 dir) : k(k_), direction(dir) {
    if (std::abs(norm(dir) - 1.0) > 1e-14)
      throw std::invalid_argument("IncidentPlaneWave: direction must be a unit vector");
  }

  cplx value(Vec3 x) const {
    const double phase = k.k * (direction[0] * x[0] + direction[1] * x[1] + direction[2] * x[2]);
    return std::polar(1.0, phase);
  }
};

// Free-space fundamental solution of the Helmholtz operator as a function of the
// point distance r > 0; n is the screen dimension (ambient space is R^{n+1}).
inline cplx fundamental_solution(int n, double k, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("fundamental_solution: requires r > 0");
  if (n == 2) return std::polar(1.0, k * r) / (4.0 * std::numbers::pi * r);
  if (n == 1) return cplx(0.0, 0.25) * hankel0_first_kind(k * r);
  throw std::invalid_argument("fundamental_solution: n must be 1 or 2");
}

// Diagonal-safe splitting Phi = singular + remainder with the remainder
// continuous at r = 0:
//   n = 2: singular = 1/(4 pi r),        remainder(0) = i k/(4 pi)
//   n = 1: singular = -(1/2 pi) ln r,    remainder(0) = i/4 - (ln(k/2) + gamma)/(2 pi)
struct KernelSplit {
  cplx singular;
  cplx remainder;
};

inline cplx kernel_singular_part(int n, double r) {
  if (n == 2) return cplx(1.0 / (4.0 * std::numbers::pi * r), 0.0);
  return cplx(-std::log(r) / (2.0 * std::numbers::pi), 0.0);
}

inline cplx kernel_remainder(int n, double k, double r) {
  constexpr double euler_gamma = 0.57721566490153286;
  if (r == 0.0) {
    if (n == 2) return cplx(0.0, k / (4.0 * std::numbers::pi));
    return cplx(-(std::log(0.5 * k) + euler_gamma) / (2.0 * std::numbers::pi), 0.25);
  }
  if (n == 2) {
    // e^{ikr} - 1 written cancellation-free: -2 sin^2(kr/2) + i sin(kr)
    const double s = std::sin(0.5 * k * r);
    return cplx(-2.0 * s * s, std::sin(k * r)) / (4.0 * std::numbers::pi * r);
  }
  return fundamental_solution(1, k, r) - kernel_singular_part(1, r);
}

inline KernelSplit kernel_split(int n, double k, double r) {
  if (r == 0.0) return {cplx(0.0, 0.0), kernel_remainder(n, k, 0.0)};
  return {kernel_singular_part(n, r), kernel_remainder(n, k, r)};
}

// Dirichlet datum g = -u^i restricted to the screen plane x_{n+1} = 0.
inline cplx incident_trace(const IncidentPlaneWave& wave, Vec2 x) {
  const double phase = wave.k.k * (wave.direction[0] * x[0] + wave.direction[1] * x[1]);
  return -std::polar(1.0, phase);
}

}  // namespace fractbem
