#include "fractbem/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fractbem {

namespace {

constexpr double kCrossover = 12.0;
constexpr long double kEulerGamma = 0.5772156649015328606065120900824024L;

// Ascending series for J0, Y0, J1, Y1 summed in extended precision; fine below
// the crossover where cancellation stays within a few digits.
Bessel0 series_branch(double x) {
  const long double q = static_cast<long double>(x) * x / 4.0L;
  long double j0 = 1.0L, term = 1.0L;
  long double y0sum = 0.0L;       // sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
  long double j1 = 1.0L, term1 = 1.0L;  // J1 = (x/2) * sum (-1)^k q^k/(k!(k+1)!)
  long double y1sum = 1.0L;       // sum (-1)^k (H_k + H_{k+1}) q^k/(k!(k+1)!), k=0 term H_1 = 1
  long double Hk = 0.0L;
  for (int k = 1; k < 400; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    Hk += 1.0L / k;
    j0 += term;
    y0sum -= term * Hk;
    term1 *= -q / (static_cast<long double>(k) * (k + 1));
    j1 += term1;
    y1sum += term1 * (Hk + Hk + 1.0L / (k + 1));
    if (std::abs((double)term) < 1e-25 * (1.0 + std::abs((double)j0)) &&
        std::abs((double)term1) < 1e-25)
      break;
  }
  const long double lx = std::log(static_cast<long double>(x) / 2.0L);
  const long double twopi = 2.0L / std::numbers::pi_v<long double>;
  const long double J0 = j0;
  const long double Y0 = twopi * ((lx + kEulerGamma) * J0 + y0sum);
  const long double J1 = (x / 2.0L) * j1;
  // DLMF 10.8.1 with psi(k+1) = -gamma + H_k
  const long double Y1 = twopi * lx * J1 - twopi / x -
                         (x / 2.0L) * (1.0L / std::numbers::pi_v<long double>) *
                             (y1sum - 2.0L * kEulerGamma * j1);
  Bessel0 out;
  out.j0 = static_cast<double>(J0);
  out.y0 = static_cast<double>(Y0);
  out.j0p = -static_cast<double>(J1);
  out.y0p = -static_cast<double>(Y1);
  return out;
}

// modified Lentz for b0 + a1/(b1 + a2/(b2 + ...))
template <class T, class FnA, class FnB>
T lentz(T b0, FnA a_of, FnB b_of, int max_iter) {
  const double tiny = 1e-300;
  T f = b0;
  if (std::abs(f) == 0.0) f = T(tiny);
  T c = f, d = T(0.0);
  for (int k = 1; k <= max_iter; ++k) {
    const T a = a_of(k), b = b_of(k);
    d = b + a * d;
    if (std::abs(d) == 0.0) d = T(tiny);
    c = b + a / c;
    if (std::abs(c) == 0.0) c = T(tiny);
    d = T(1.0) / d;
    const T delta = c * d;
    f *= delta;
    if (std::abs(delta - T(1.0)) < 1e-16) break;
  }
  return f;
}

// CF1: J1/J0 = 1/(2/x - 1/(4/x - 1/(6/x - ...))); J0'/J0 = -J1/J0.
double cf1_j0(double x) {
  const double r = lentz<double>(
      0.0, [](int k) { return k == 1 ? 1.0 : -1.0; }, [x](int k) { return 2.0 * k / x; }, 100000);
  return -r;
}

// CF2: p + iq = -1/(2x) + i + (i/x) * [ (1/2)^2 / (2(x+i) + (3/2)^2 / (2(x+2i) + ...)) ].
std::complex<double> cf2_j0(double x) {
  using C = std::complex<double>;
  const C i1(0.0, 1.0);
  const C cf = lentz<C>(
      C(0.0), [](int k) { return C((k - 0.5) * (k - 0.5)); },
      [x, i1](int k) { return 2.0 * (x + static_cast<double>(k) * i1); }, 10000);
  return C(-0.5 / x, 0.0) + i1 + (i1 / x) * cf;
}

Bessel0 steed_branch(double x) {
  const double f = cf1_j0(x);
  const std::complex<double> pq = cf2_j0(x);
  const double p = pq.real(), q = pq.imag();
  const double W = 2.0 / (std::numbers::pi * x);
  const double gamma_ratio = (p - f) / q;  // Y0/J0
  const double j0sq = W * q / ((p - f) * (p - f) + q * q);
  double j0 = std::sqrt(j0sq);
  // pick the overall sign from the dominant two-term asymptotic component
  const double chi = x - 0.25 * std::numbers::pi;
  const double jhat = std::cos(chi) + std::sin(chi) / (8.0 * x);
  const double yhat = std::sin(chi) - std::cos(chi) / (8.0 * x);
  if (std::abs(jhat) >= std::abs(yhat)) {
    if (jhat < 0.0) j0 = -j0;
  } else {
    if ((yhat < 0.0) != (gamma_ratio < 0.0)) j0 = -j0;
  }
  Bessel0 out;
  out.j0 = j0;
  out.y0 = gamma_ratio * j0;
  out.j0p = f * j0;
  out.y0p = p * out.y0 + q * out.j0;
  return out;
}

}  // namespace

Bessel0 bessel_j0y0(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("bessel_j0y0: requires x > 0");
  return x < kCrossover ? series_branch(x) : steed_branch(x);
}

std::complex<double> hankel0_first_kind(double x) {
  const Bessel0 b = bessel_j0y0(x);
  return {b.j0, b.y0};
}

std::complex<double> hankel0_first_kind_derivative(double x) {
  const Bessel0 b = bessel_j0y0(x);
  return {b.j0p, b.y0p};
}

}  // namespace fractbem
