#include "hecke/arith.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hecke/error.h"
#include "hecke/summation.h"

namespace hecke {

PrimeSieve::PrimeSieve(std::int64_t limit) : limit_(limit) {
  require(limit >= 2, "sieve limit must be at least 2");
  composite_.assign(static_cast<std::size_t>(limit + 1), false);
  composite_[0] = composite_[1] = true;
  for (std::int64_t p = 2; p * p <= limit; ++p) {
    if (composite_[p]) continue;
    for (std::int64_t m = p * p; m <= limit; m += p) composite_[m] = true;
  }
  primes_.reserve(static_cast<std::size_t>(
      1.26 * static_cast<double>(limit) / std::log(static_cast<double>(limit))));
  for (std::int64_t n = 2; n <= limit; ++n) {
    if (!composite_[n]) primes_.push_back(n);
  }
}

bool PrimeSieve::is_prime(std::int64_t n) const {
  require(n >= 0 && n <= limit_,
          "is_prime: " + std::to_string(n) + " outside sieve range");
  return !composite_[n];
}

std::span<const std::int64_t> PrimeSieve::primes_up_to(double x) const {
  require(x <= static_cast<double>(limit_),
          "x = " + std::to_string(x) + " exceeds sieve limit " +
              std::to_string(limit_));
  const auto bound = static_cast<std::int64_t>(std::floor(x));
  auto end = std::upper_bound(primes_.begin(), primes_.end(), bound);
  return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

std::vector<PrimePower> PrimeSieve::factor(std::int64_t n) const {
  require(n >= 1, "factor: n must be positive");
  require(static_cast<double>(n) <=
              static_cast<double>(limit_) * static_cast<double>(limit_),
          "factor: " + std::to_string(n) + " exceeds the sieve's reach");
  std::vector<PrimePower> out;
  for (std::int64_t p : primes_) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

SquareFreeOddEnumerator::SquareFreeOddEnumerator(std::int64_t limit)
    : limit_(limit) {
  require(limit >= 0, "square-free enumeration limit must be non-negative");
  std::vector<bool> has_square(static_cast<std::size_t>(limit + 1), false);
  for (std::int64_t p = 3; p * p <= limit; p += 2) {
    const std::int64_t sq = p * p;
    for (std::int64_t m = sq; m <= limit; m += sq) has_square[m] = true;
  }
  for (std::int64_t d = 1; d <= limit; d += 2) {
    if (!has_square[d]) values_.push_back(d);
  }
}

namespace {

// (2|n) for odd n, indexed by n mod 8.
constexpr int kTwoTable[8] = {0, 1, 0, -1, 0, -1, 0, 1};

}  // namespace

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (n & 1) == 0) return 0;

  int v = std::countr_zero(static_cast<std::uint64_t>(n));
  n >>= v;
  int k = (v & 1) ? kTwoTable[a & 7] : 1;
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  // n is now odd and positive.
  while (a != 0) {
    v = std::countr_zero(static_cast<std::uint64_t>(a));
    a >>= v;
    if (v & 1) k *= kTwoTable[n & 7];
    if (a & n & 2) k = -k;
    const std::int64_t r = a < 0 ? -a : a;
    a = n % r;
    n = r;
  }
  return n == 1 ? k : 0;
}

int jacobi(std::int64_t a, std::int64_t n) {
  require(n > 0 && (n & 1) == 1, "jacobi: modulus must be odd and positive");
  return kronecker(a, n);
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::int64_t divisor_count(std::int64_t n) {
  require(n >= 1, "divisor_count: n must be positive");
  std::int64_t count = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= e + 1;
  }
  if (n > 1) count *= 2;
  return count;
}

Rational euler_weight_A(std::int64_t d, const PrimeSieve& sieve) {
  require(d >= 1, "euler_weight_A: d must be positive");
  Rational r{1, 1};
  for (const auto& [p, e] : sieve.factor(d)) {
    (void)e;
    __int128 num = static_cast<__int128>(r.num) * (p - 1);
    __int128 den = static_cast<__int128>(r.den) * p;
    __int128 a = num, b = den;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    // num < den, so both fit in 64 bits once reduced.
    r.num = static_cast<std::int64_t>(num / a);
    r.den = static_cast<std::int64_t>(den / a);
  }
  return r;
}

double mertens_sum(const PrimeSieve& sieve, double x, MertensVariant variant,
                   std::span<const double> lambda) {
  require(x >= 2.0, "mertens_sum: x must be at least 2");
  const auto primes = sieve.primes_up_to(x);
  if (variant == MertensVariant::kLambdaSquared) {
    require(!primes.empty() &&
                static_cast<std::size_t>(primes.back()) < lambda.size(),
            "mertens_sum: eigenvalue table does not cover primes <= x");
  }
  CompensatedSum sum;
  for (std::int64_t p : primes) {
    const double pd = static_cast<double>(p);
    switch (variant) {
      case MertensVariant::kReciprocal:
        sum += 1.0 / pd;
        break;
      case MertensVariant::kLogWeighted:
        sum += std::log(pd) / pd;
        break;
      case MertensVariant::kLambdaSquared: {
        const double l = lambda[static_cast<std::size_t>(p)];
        sum += l * l / pd;
        break;
      }
    }
  }
  return sum.value();
}

}  // namespace hecke
