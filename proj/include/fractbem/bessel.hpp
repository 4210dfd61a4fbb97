#pragma once

#include <complex>

namespace fractbem {

// J0, Y0 and their derivatives at x > 0. Ascending series below the crossover
// |x| = 12, Steed-style continued fractions (CF1 for J0'/J0, complex CF2 for
// (J0'+iY0')/(J0+iY0), combined through the Wronskian) above it.
struct Bessel0 {
  double j0, y0, j0p, y0p;
};

Bessel0 bessel_j0y0(double x);

// H0^(1)(x) = J0(x) + i Y0(x); rejects x <= 0 (logarithmic singularity).
std::complex<double> hankel0_first_kind(double x);
std::complex<double> hankel0_first_kind_derivative(double x);

}  // namespace fractbem
