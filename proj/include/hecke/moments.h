#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hecke {

class DirichletCharacter;
class EigenformTable;
class PrimeSieve;

// Phi_U: equal to 1 on [1/U, 1 - 1/U], zero outside (0, 1), with the
// exp(-1/x) smooth step on the two transition windows.
class SmoothingKernel {
 public:
  explicit SmoothingKernel(double U);

  // clamp(modulus^0.2, 4, 100)
  static double default_U(double modulus);

  double U() const { return U_; }
  double operator()(double t) const;

  // int_0^1 Phi_U(t) t^(s-1) dt. Plateau in closed form, transition windows
  // by adaptive Gauss-Kronrod.
  std::complex<double> mellin(std::complex<double> s) const;
  // Exact value of mellin(1).
  double mellin_at_one() const { return 1.0 - 1.0 / U_; }

 private:
  double U_;
};

enum class Family { kFixedMod, kQuadratic };

std::string to_string(Family family);

struct MomentOptions {
  int threads = 1;
  // Fixed modulus only: sum over every character mod q instead of the
  // primitive ones. Diagnostic; it admits an exact orthogonality oracle.
  bool all_characters = false;
  // Quadratic envelope exponent E(m, k, epsilon).
  int k = 1;
  double epsilon = 0.0;
};

struct MomentReport {
  Family family = Family::kFixedMod;
  std::int64_t modulus = 0;  // q or X
  std::int64_t Y = 0;
  double m = 0.0;
  std::optional<double> U;  // kernel parameter, if smoothed
  std::int64_t count = 0;   // characters or discriminants summed over
  double measured = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  double log_exponent = 0.0;  // exponent of log(modulus) in the envelope
  int k = 1;
  double epsilon = 0.0;
  bool all_characters = false;
  double runtime_seconds = 0.0;
};

// E(m, k, eps) = max(2m^2 - 3m + k + 1, (m-k)^2 + 2k^2 - k + eps,
//                    (m-k)^2 + 2k^2 - m + eps).
double exponent_E(double m, int k, double epsilon);

// |sum_{n <= Y} chi(n) lambda(n) [Phi_U(n / Y)]| for each primitive chi mod q
// (or every chi, see MomentOptions), in the group's canonical order.
std::vector<double> fixed_mod_inner_sums(std::int64_t q, std::int64_t Y,
                                         const EigenformTable& table,
                                         const PrimeSieve& sieve,
                                         const SmoothingKernel* kernel,
                                         const MomentOptions& options);

// |sum_{n <= Y} (8d|n) lambda(n) [Phi_U(n / Y)]| for odd square-free d <= X,
// ascending in d.
std::vector<double> quadratic_inner_sums(std::int64_t X, std::int64_t Y,
                                         const EigenformTable& table,
                                         const PrimeSieve& sieve,
                                         const SmoothingKernel* kernel,
                                         const MomentOptions& options);

// sum |inner|^(2m), compensated, in the given order.
double moment_from_inner(std::span<const double> inner, double m);

MomentReport moment_fixed_mod(std::int64_t q, std::int64_t Y, double m,
                              const EigenformTable& table, const PrimeSieve& sieve,
                              const SmoothingKernel* kernel = nullptr,
                              const MomentOptions& options = {});
MomentReport moment_quadratic(std::int64_t X, std::int64_t Y, double m,
                              const EigenformTable& table, const PrimeSieve& sieve,
                              const SmoothingKernel* kernel = nullptr,
                              const MomentOptions& options = {});

// Several m at once; the inner sums are computed a single time.
std::vector<MomentReport> moment_fixed_mod_sweep(
    std::int64_t q, std::int64_t Y, std::span<const double> ms,
    const EigenformTable& table, const PrimeSieve& sieve,
    const SmoothingKernel* kernel = nullptr, const MomentOptions& options = {});
std::vector<MomentReport> moment_quadratic_sweep(
    std::int64_t X, std::int64_t Y, std::span<const double> ms,
    const EigenformTable& table, const PrimeSieve& sieve,
    const SmoothingKernel* kernel = nullptr, const MomentOptions& options = {});

struct PrSumRecord {
  double lhs = 0.0;
  double main_term = 0.0;
  double error = 0.0;       // lhs - main_term
  double tail_bound = 0.0;  // bound on the truncated Euler product's effect
};

// Smoothed quadratic character sum
//   lhs = sum_{d odd square-free} A(d)^-k (8d|n) Phi(d / X)
// against delta_{n = square} Phi^(1) (X/2) prod_{p|n} (1 + A(p)^-k/p)^-1
//   prod_{p odd} (1 - 1/p)(1 + A(p)^-k / p),
// the last product truncated at the sieve limit.
PrSumRecord verify_lemma_prsum(std::int64_t X, std::int64_t n, double k,
                               const SmoothingKernel& kernel,
                               const PrimeSieve& sieve);

enum class CancellationVariant { kPlain, kSymSquare };

struct CancellationRecord {
  std::complex<double> sum;
  double envelope_sqrt_x = 0.0;  // sqrt(x) (log 2q(x + |t0|))^2
  double ratio = 0.0;            // |sum| / envelope
};

// sum_{p <= x} chi(p) [lambda(p^2)] p^(-i t0) log p.
CancellationRecord verify_prime_cancellation(const DirichletCharacter& chi,
                                             double t0, double x,
                                             const EigenformTable& table,
                                             const PrimeSieve& sieve,
                                             CancellationVariant variant);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least squares of log(measured / (count Y^m)) against
// log_exponent * log log modulus. Needs at least 3 reports of one family
// and one m.
ExponentFit fit_exponent(std::span<const MomentReport> reports);

}  // namespace hecke
