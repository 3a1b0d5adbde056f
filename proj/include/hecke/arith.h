#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hecke {

struct PrimePower {
  std::int64_t prime;
  int exponent;
};

// Bit-packed sieve of Eratosthenes. Immutable after construction.
class PrimeSieve {
 public:
  static constexpr std::int64_t kDefaultLimit = 10'000'000;

  explicit PrimeSieve(std::int64_t limit = kDefaultLimit);

  std::int64_t limit() const { return limit_; }

  // Throws PreconditionError for n outside [0, limit].
  bool is_prime(std::int64_t n) const;

  std::span<const std::int64_t> primes() const { return primes_; }

  // Ascending primes p <= x; x may not exceed limit().
  std::span<const std::int64_t> primes_up_to(double x) const;

  // Trial division over the sieve's primes. Complete for n <= limit()^2;
  // larger n are rejected.
  std::vector<PrimePower> factor(std::int64_t n) const;

 private:
  std::int64_t limit_;
  std::vector<bool> composite_;
  std::vector<std::int64_t> primes_;
};

// Odd square-free positive integers <= limit, ascending.
class SquareFreeOddEnumerator {
 public:
  explicit SquareFreeOddEnumerator(std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  const std::vector<std::int64_t>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::int64_t limit_;
  std::vector<std::int64_t> values_;
};

// Kronecker symbol (a|n), full extension to negative a, even n and n <= 0.
int kronecker(std::int64_t a, std::int64_t n);

// Jacobi symbol (a|n) for odd positive n.
int jacobi(std::int64_t a, std::int64_t n);

std::int64_t divisor_count(std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);

// Exact non-negative rational in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// prod_{p | d} (1 - 1/p).
Rational euler_weight_A(std::int64_t d, const PrimeSieve& sieve);

enum class MertensVariant { kReciprocal, kLogWeighted, kLambdaSquared };

// Sum over p <= x of 1/p, (log p)/p, or lambda(p)^2/p, in ascending prime
// order with compensated summation. `lambda` is indexed by n (entry 0 unused)
// and must cover every prime <= x for the lambda-squared variant.
double mertens_sum(const PrimeSieve& sieve, double x, MertensVariant variant,
                   std::span<const double> lambda = {});

}  // namespace hecke
