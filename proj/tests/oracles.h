#pragma once

// Independent reference implementations. None of these call into the
// library's number-theoretic code paths; they are deliberately slow and
// direct.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using i128 = __int128;

// Coefficients of q prod_{n>=1} (1 - q^n)^24 up to q^N, by multiplying in
// one factor (1 - q^n) at a time. O(24 N^2 / 2).
inline std::vector<i128> tau_naive(std::int64_t N) {
  std::vector<i128> series(static_cast<std::size_t>(N), 0);  // prod, index 0..N-1
  series[0] = 1;
  for (std::int64_t n = 1; n < N; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::int64_t i = N - 1; i >= n; --i) series[i] -= series[i - n];
    }
  }
  std::vector<i128> tau(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t n = 1; n <= N; ++n) tau[n] = series[n - 1];
  return tau;
}

inline std::int64_t divisors(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) c += (d * d == n) ? 1 : 2;
  }
  return c;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::int64_t phi(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

inline int mobius(std::int64_t n) {
  int mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  return n > 1 ? -mu : mu;
}

inline bool squarefree(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<i128>(r) * b % m);
    b = static_cast<std::int64_t>(static_cast<i128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

// Legendre symbol by Euler's criterion.
inline int legendre(std::int64_t a, std::int64_t p) {
  const std::int64_t r = powmod(a, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// (8d | n) for odd d > 0: zero for even n, otherwise the product of Legendre
// symbols over the prime factors of n (with multiplicity).
inline int kronecker_8d(std::int64_t d, std::int64_t n) {
  if (n % 2 == 0) return 0;
  int v = 1;
  for (std::int64_t p = 3; p * p <= n; p += 2) {
    while (n % p == 0) {
      v *= legendre(8 * d, p);
      n /= p;
    }
  }
  if (n > 1) v *= legendre(8 * d, n);
  return v;
}

// zeta(s) by Borwein's alternating-series algorithm (n terms).
inline std::complex<double> zeta_borwein(std::complex<double> s, int n = 120) {
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), kept as ratios d_k / d_n.
  std::vector<double> d(static_cast<std::size_t>(n + 1));
  double term = 1.0 / n;  // i = 0 term divided by n
  double acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1.0) * (2.0 * i));
    acc += term;
    d[i] = n * acc;
  }
  std::complex<double> sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = (d[k] - d[n]) / d[n];
    sum += (k % 2 ? -1.0 : 1.0) * w * std::pow(static_cast<double>(k + 1), -s);
  }
  return -sum / (1.0 - std::pow(2.0, 1.0 - s));
}

// For a_n (n = 1..Y, a[0] unused):
//   sum over primitive chi mod q of |sum_n a_n chi(n)|^(2m), m in {1, 2}
// via sum*_chi chi(a) conj(chi(b)) = sum_{d | q, d | a - b} phi(d) mu(q/d)
// for (ab, q) = 1. No characters are constructed.
inline double primitive_moment_by_congruence(std::int64_t q, const std::vector<double>& a,
                                             int m) {
  const auto Y = static_cast<std::int64_t>(a.size()) - 1;
  // Collapse the (m-fold product) coefficients onto residues mod q.
  std::vector<double> b(static_cast<std::size_t>(q), 0.0);
  if (m == 1) {
    for (std::int64_t n = 1; n <= Y; ++n) {
      if (std::gcd(n, q) == 1) b[n % q] += a[n];
    }
  } else {
    for (std::int64_t n = 1; n <= Y; ++n) {
      for (std::int64_t k = 1; k <= Y; ++k) {
        if (std::gcd(n * k, q) == 1) b[(n * k) % q] += a[n] * a[k];
      }
    }
  }
  double total = 0.0;
  for (std::int64_t d = 1; d <= q; ++d) {
    if (q % d != 0) continue;
    const int mu = mobius(q / d);
    if (mu == 0) continue;
    double inner = 0.0;
    for (std::int64_t r = 0; r < q; ++r) {
      for (std::int64_t s = 0; s < q; ++s) {
        if ((r - s) % d == 0) inner += b[r] * b[s];
      }
    }
    total += mu * static_cast<double>(phi(d)) * inner;
  }
  return total;
}

// Direct double loop over odd square-free d <= X and n <= Y.
inline double quadratic_moment_direct(std::int64_t X, const std::vector<double>& a,
                                      double m) {
  const auto Y = static_cast<std::int64_t>(a.size()) - 1;
  double total = 0.0;
  for (std::int64_t d = 1; d <= X; d += 2) {
    if (!squarefree(d)) continue;
    double s = 0.0;
    for (std::int64_t n = 1; n <= Y; ++n) s += kronecker_8d(d, n) * a[n];
    total += std::pow(std::abs(s), 2.0 * m);
  }
  return total;
}

}  // namespace oracle
