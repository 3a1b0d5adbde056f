#pragma once

#include <complex>

namespace hecke {

// log Gamma(z) for complex z away from the poles. Stirling series after
// shifting to Re z >= 15, reflection for Re z < 1/2. The imaginary part is
// not normalized to the principal branch; exp() of the result is Gamma(z).
std::complex<double> log_gamma(std::complex<double> z);

// Upper incomplete gamma Gamma(a, x) for complex a and real x > 0.
// Series for small x, Lentz continued fraction otherwise.
std::complex<double> upper_incomplete_gamma(std::complex<double> a, double x);

// Riemann zeta by Euler-Maclaurin with 10 Bernoulli corrections and cutoff
// ceil(10 + 2|Im s|). Requires Re s > 0 and s != 1.
std::complex<double> zeta(std::complex<double> s);

}  // namespace hecke
