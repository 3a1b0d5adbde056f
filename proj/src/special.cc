#include "hecke/special.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hecke/error.h"
#include "hecke/summation.h"

namespace hecke {

namespace {

using cd = std::complex<double>;

// B_2, B_4, ..., B_20.
constexpr double kBernoulli[10] = {
    1.0 / 6.0,      -1.0 / 30.0,     1.0 / 42.0,         -1.0 / 30.0,
    5.0 / 66.0,     -691.0 / 2730.0, 7.0 / 6.0,          -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0};

cd stirling(cd z) {
  const cd inv = 1.0 / z;
  const cd inv2 = inv * inv;
  cd series = 0.0;
  cd power = inv;
  for (int k = 1; k <= 10; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) +
         series;
}

cd incomplete_series(cd a, double x) {
  // gamma(a, x) = x^a e^-x sum_k x^k / (a (a+1) ... (a+k))
  cd term = 1.0 / a;
  cd sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= x / (a + static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) {
      const cd lower = std::exp(a * std::log(x) - x) * sum;
      return std::exp(log_gamma(a)) - lower;
    }
  }
  throw PreconditionError("incomplete gamma series failed to converge at x = " +
                          std::to_string(x));
}

cd incomplete_fraction(cd a, double x) {
  // Modified Lentz on the continued fraction for Gamma(a, x) e^x x^-a.
  constexpr double tiny = 1e-300;
  cd b = x + 1.0 - a;
  cd c = 1.0 / tiny;
  cd d = 1.0 / b;
  cd h = d;
  for (int i = 1; i < 100000; ++i) {
    const cd an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cd delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return std::exp(a * std::log(x) - x) * h;
  }
  throw PreconditionError(
      "incomplete gamma continued fraction failed to converge at x = " +
      std::to_string(x));
}

}  // namespace

cd log_gamma(cd z) {
  if (z.real() < 0.5) {
    const cd s = std::sin(std::numbers::pi * z);
    require(std::abs(s) > 0.0, "log_gamma: pole at a non-positive integer");
    return std::log(std::numbers::pi) - std::log(s) - log_gamma(1.0 - z);
  }
  cd shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

cd upper_incomplete_gamma(cd a, double x) {
  require(x > 0.0, "upper_incomplete_gamma: x must be positive");
  if (x < a.real() + 1.0) return incomplete_series(a, x);
  return incomplete_fraction(a, x);
}

cd zeta(cd s) {
  require(s.real() > 0.0, "zeta: Re s must be positive");
  require(s != cd(1.0, 0.0), "zeta: pole at s = 1");
  const auto N = static_cast<std::int64_t>(std::ceil(10.0 + 2.0 * std::abs(s.imag())));
  ComplexCompensatedSum sum;
  for (std::int64_t n = 1; n < N; ++n) {
    sum += std::exp(-s * std::log(static_cast<double>(n)));
  }
  const double logN = std::log(static_cast<double>(N));
  const cd n_pow = std::exp(-s * logN);  // N^-s
  sum += n_pow * static_cast<double>(N) / (s - 1.0);
  sum += 0.5 * n_pow;
  // sum_k B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^(-s-2k+1)
  cd rising = s;
  cd power = n_pow / static_cast<double>(N);
  double factorial = 2.0;
  const double inv_n2 = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
  for (int k = 1; k <= 10; ++k) {
    sum += kBernoulli[k - 1] / factorial * rising * power;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    power *= inv_n2;
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum.value();
}

}  // namespace hecke
