#include "hecke/moments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hecke/arith.h"
#include "hecke/dirichlet.h"
#include "hecke/eigenform.h"
#include "hecke/error.h"
#include "hecke/parallel.h"
#include "hecke/summation.h"

namespace hecke {

namespace {

using cd = std::complex<double>;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kCharacterChunk = 8;
constexpr std::size_t kDiscriminantChunk = 64;

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

// Real and imaginary parts integrated separately over each [x_i, x_i+1].
template <class F>
cd integrate_pieces(F f, const std::vector<double>& breaks) {
  using boost::math::quadrature::gauss_kronrod;
  cd total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double re = gauss_kronrod<double, 61>::integrate(
        [&](double u) { return f(u).real(); }, breaks[i], breaks[i + 1], 10, 1e-13);
    const double im = gauss_kronrod<double, 61>::integrate(
        [&](double u) { return f(u).imag(); }, breaks[i], breaks[i + 1], 10, 1e-13);
    total += cd(re, im);
  }
  return total;
}

// Break points spaced so that each piece holds at most about half a turn of
// the phase |Im s| log u (geometric) or |Im s| log(1 - v/U) (uniform).
std::vector<double> breaks_geometric(double lo, double hi, double turns) {
  const auto pieces = static_cast<int>(std::ceil(turns)) + 4;
  std::vector<double> b;
  for (int i = 0; i <= pieces; ++i) {
    b.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / pieces));
  }
  b.back() = hi;
  return b;
}

std::vector<double> breaks_uniform(double lo, double hi, double turns) {
  const auto pieces = static_cast<int>(std::ceil(turns)) + 4;
  std::vector<double> b;
  for (int i = 0; i <= pieces; ++i) b.push_back(lo + (hi - lo) * i / pieces);
  b.back() = hi;
  return b;
}

std::vector<double> kernel_weights(std::int64_t Y, const EigenformTable& table,
                                   const SmoothingKernel* kernel) {
  std::vector<double> w(static_cast<std::size_t>(Y + 1), 0.0);
  for (std::int64_t n = 1; n <= Y; ++n) {
    w[n] = table.lambda(n);
    if (kernel != nullptr) {
      w[n] *= (*kernel)(static_cast<double>(n) / static_cast<double>(Y));
    }
  }
  return w;
}

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

MomentReport make_report(Family family, std::int64_t modulus, std::int64_t Y,
                         double m, const SmoothingKernel* kernel,
                         std::span<const double> inner, double log_envelope_rest,
                         double log_exponent, const MomentOptions& options) {
  MomentReport r;
  r.family = family;
  r.modulus = modulus;
  r.Y = Y;
  r.m = m;
  if (kernel != nullptr) r.U = kernel->U();
  r.count = static_cast<std::int64_t>(inner.size());
  r.measured = moment_from_inner(inner, m);
  r.log_exponent = log_exponent;
  const double log_env = log_envelope_rest + m * std::log(static_cast<double>(Y)) +
                         log_exponent * std::log(std::log(static_cast<double>(modulus)));
  r.envelope = std::exp(log_env);
  r.ratio = r.measured / r.envelope;
  r.k = options.k;
  r.epsilon = options.epsilon;
  r.all_characters = options.all_characters;
  return r;
}

std::vector<std::int32_t> smallest_odd_factors(std::int64_t Y) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(Y + 1), 0);
  for (std::int64_t p = 3; p <= Y; p += 2) {
    if (spf[p] != 0) continue;
    for (std::int64_t m = p; m <= Y; m += 2 * p) {
      if (spf[m] == 0) spf[m] = static_cast<std::int32_t>(p);
    }
  }
  return spf;
}

bool is_perfect_square(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

}  // namespace

SmoothingKernel::SmoothingKernel(double U) : U_(U) {
  require(U >= 4.0, "smoothing kernel needs U >= 4, got " + std::to_string(U));
}

double SmoothingKernel::default_U(double modulus) {
  return std::clamp(std::pow(modulus, 0.2), 4.0, 100.0);
}

double SmoothingKernel::operator()(double t) const {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double edge = 1.0 / U_;
  if (t < edge) return smooth_step(U_ * t);
  if (t > 1.0 - edge) return smooth_step(U_ * (1.0 - t));
  return 1.0;
}

cd SmoothingKernel::mellin(cd s) const {
  require(s.real() > 0.0, "kernel Mellin transform needs Re s > 0");
  const double edge = 1.0 / U_;
  // Plateau: int_{1/U}^{1-1/U} t^(s-1) dt.
  const cd plateau =
      (std::exp(s * std::log(1.0 - edge)) - std::exp(s * std::log(edge))) / s;
  // Left window, t = u / U: U^-s int_0^1 S(u) u^(s-1) du. S(u) < 1e-21
  // below u = 1/50, far under the target accuracy.
  constexpr double u_min = 1.0 / 50.0;
  const double T = std::abs(s.imag());
  const cd left =
      std::exp(-s * std::log(U_)) *
      integrate_pieces(
          [&](double u) -> cd {
            return smooth_step(u) * std::exp((s - 1.0) * std::log(u));
          },
          breaks_geometric(u_min, 1.0, T * std::log(1.0 / u_min) / std::numbers::pi));
  // Right window, t = 1 - v / U: (1/U) int_0^1 S(v) (1 - v/U)^(s-1) dv.
  const cd right =
      edge * integrate_pieces(
                 [&](double v) -> cd {
                   return smooth_step(v) * std::exp((s - 1.0) * std::log(1.0 - v * edge));
                 },
                 breaks_uniform(0.0, 1.0, -T * std::log(1.0 - edge) / std::numbers::pi));
  return plateau + left + right;
}

std::string to_string(Family family) {
  return family == Family::kFixedMod ? "fixed_mod" : "quadratic";
}

double exponent_E(double m, int k, double epsilon) {
  const double mk = m - k;
  return std::max({2.0 * m * m - 3.0 * m + k + 1.0,
                   mk * mk + 2.0 * k * k - k + epsilon,
                   mk * mk + 2.0 * k * k - m + epsilon});
}

std::vector<double> fixed_mod_inner_sums(std::int64_t q, std::int64_t Y,
                                         const EigenformTable& table,
                                         const PrimeSieve& sieve,
                                         const SmoothingKernel* kernel,
                                         const MomentOptions& options) {
  require(Y >= 1 && Y <= q, "moment_fixed_mod: need 1 <= Y <= q (Y = " +
                                std::to_string(Y) + ", q = " + std::to_string(q) + ")");
  require(Y <= table.size(), "moment_fixed_mod: table does not cover n <= Y");
  const CharacterGroup group(q, sieve);
  const auto chars =
      options.all_characters ? group.characters() : group.primitive_characters();
  const auto w = kernel_weights(Y, table, kernel);
  std::vector<double> out(chars.size(), 0.0);
  parallel_chunks(chars.size(), options.threads, kCharacterChunk,
                  [&](std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i) {
                      ComplexCompensatedSum sum;
                      for (std::int64_t n = 1; n <= Y; ++n) {
                        if (w[n] == 0.0) continue;
                        const cd c = chars[i](n);
                        if (c == 0.0) continue;
                        sum += w[n] * c;
                      }
                      out[i] = std::abs(sum.value());
                    }
                  });
  return out;
}

std::vector<double> quadratic_inner_sums(std::int64_t X, std::int64_t Y,
                                         const EigenformTable& table,
                                         const PrimeSieve& sieve,
                                         const SmoothingKernel* kernel,
                                         const MomentOptions& options) {
  (void)sieve;
  require(X >= 1 && Y >= 1 && Y <= X, "moment_quadratic: need 1 <= Y <= X (Y = " +
                                          std::to_string(Y) + ", X = " +
                                          std::to_string(X) + ")");
  require(Y <= table.size(), "moment_quadratic: table does not cover n <= Y");
  const SquareFreeOddEnumerator ds(X);
  const auto w = kernel_weights(Y, table, kernel);
  const auto spf = smallest_odd_factors(Y);
  std::vector<double> out(ds.size(), 0.0);
  parallel_chunks(ds.size(), options.threads, kDiscriminantChunk,
                  [&](std::size_t begin, std::size_t end) {
                    // (8d|n) for odd n, filled multiplicatively from the primes.
                    std::vector<std::int8_t> chi(static_cast<std::size_t>(Y + 1), 0);
                    for (std::size_t i = begin; i < end; ++i) {
                      const std::int64_t D = 8 * ds.values()[i];
                      KahanSum sum;
                      chi[1] = 1;
                      sum += w[1];
                      for (std::int64_t n = 3; n <= Y; n += 2) {
                        const std::int64_t p = spf[n];
                        std::int8_t v;
                        if (p == n) {
                          v = static_cast<std::int8_t>(kronecker(D % p, p));
                        } else {
                          v = static_cast<std::int8_t>(chi[p] * chi[n / p]);
                        }
                        chi[n] = v;
                        if (v != 0 && w[n] != 0.0) sum += v * w[n];
                      }
                      out[i] = std::abs(sum.value());
                    }
                  });
  return out;
}

double moment_from_inner(std::span<const double> inner, double m) {
  require(m > 0.0, "moment exponent m must be positive");
  CompensatedSum sum;
  for (double v : inner) {
    if (v != 0.0) sum += std::pow(v, 2.0 * m);
  }
  return sum.value();
}

std::vector<MomentReport> moment_fixed_mod_sweep(
    std::int64_t q, std::int64_t Y, std::span<const double> ms,
    const EigenformTable& table, const PrimeSieve& sieve,
    const SmoothingKernel* kernel, const MomentOptions& options) {
  const auto start = Clock::now();
  for (double m : ms) require(m > 0.0, "moment exponent m must be positive");
  const auto inner = fixed_mod_inner_sums(q, Y, table, sieve, kernel, options);
  const double log_phi = std::log(static_cast<double>(euler_phi(q)));
  std::vector<MomentReport> out;
  for (double m : ms) {
    out.push_back(make_report(Family::kFixedMod, q, Y, m, kernel, inner, log_phi,
                              (m - 1.0) * (m - 1.0), options));
  }
  const double seconds = elapsed(start);
  for (auto& r : out) r.runtime_seconds = seconds;
  return out;
}

std::vector<MomentReport> moment_quadratic_sweep(
    std::int64_t X, std::int64_t Y, std::span<const double> ms,
    const EigenformTable& table, const PrimeSieve& sieve,
    const SmoothingKernel* kernel, const MomentOptions& options) {
  const auto start = Clock::now();
  require(X >= 3, "moment_quadratic: X must satisfy log log X > 0");
  require(options.k >= 1, "moment_quadratic: k must be at least 1");
  for (double m : ms) require(m > 0.0, "moment exponent m must be positive");
  const auto inner = quadratic_inner_sums(X, Y, table, sieve, kernel, options);
  MomentOptions opts = options;
  opts.all_characters = false;
  std::vector<MomentReport> out;
  for (double m : ms) {
    out.push_back(make_report(Family::kQuadratic, X, Y, m, kernel, inner,
                              std::log(static_cast<double>(X)),
                              exponent_E(m, options.k, options.epsilon), opts));
  }
  const double seconds = elapsed(start);
  for (auto& r : out) r.runtime_seconds = seconds;
  return out;
}

MomentReport moment_fixed_mod(std::int64_t q, std::int64_t Y, double m,
                              const EigenformTable& table, const PrimeSieve& sieve,
                              const SmoothingKernel* kernel,
                              const MomentOptions& options) {
  const double ms[1] = {m};
  return moment_fixed_mod_sweep(q, Y, ms, table, sieve, kernel, options).front();
}

MomentReport moment_quadratic(std::int64_t X, std::int64_t Y, double m,
                              const EigenformTable& table, const PrimeSieve& sieve,
                              const SmoothingKernel* kernel,
                              const MomentOptions& options) {
  const double ms[1] = {m};
  return moment_quadratic_sweep(X, Y, ms, table, sieve, kernel, options).front();
}

PrSumRecord verify_lemma_prsum(std::int64_t X, std::int64_t n, double k,
                               const SmoothingKernel& kernel,
                               const PrimeSieve& sieve) {
  require(X >= 2, "verify_lemma_prsum: X must be at least 2");
  require(n >= 1, "verify_lemma_prsum: n must be positive");
  require(k >= 0.0, "verify_lemma_prsum: k must be non-negative");
  require(X <= sieve.limit(), "verify_lemma_prsum: X exceeds the sieve limit");
  sieve.factor(n);  // rejects n beyond the sieve's reach
  PrSumRecord rec;
  if (n % 2 == 0) return rec;  // (8d|n) = 0 for every d

  CompensatedSum lhs;
  const double Xd = static_cast<double>(X);
  for (std::int64_t d : SquareFreeOddEnumerator(X)) {
    const double phi = kernel(static_cast<double>(d) / Xd);
    if (phi == 0.0) continue;
    const int chi = kronecker(8 * d, n);
    if (chi == 0) continue;
    const double A = euler_weight_A(d, sieve).to_double();
    lhs += chi * std::pow(A, -k) * phi;
  }
  rec.lhs = lhs.value();

  if (is_perfect_square(n)) {
    auto weight = [k](double p) { return std::pow(p / (p - 1.0), k) / p; };
    double local = 1.0;
    for (const auto& [p, e] : sieve.factor(n)) {
      (void)e;
      local /= 1.0 + weight(static_cast<double>(p));
    }
    CompensatedSum log_euler;
    for (std::int64_t p : sieve.primes()) {
      if (p == 2) continue;
      const double pd = static_cast<double>(p);
      log_euler += std::log1p(-1.0 / pd) + std::log1p(weight(pd));
    }
    rec.main_term = kernel.mellin_at_one() * Xd / 2.0 * local * std::exp(log_euler.value());
    // Each omitted factor is 1 + O((|k - 1| + 1) / p^2).
    const double P = static_cast<double>(sieve.limit());
    const double rel = (std::abs(k - 1.0) + 1.0) / (P * std::log(P));
    rec.tail_bound = std::abs(rec.main_term) * std::expm1(rel);
  }
  rec.error = rec.lhs - rec.main_term;
  return rec;
}

CancellationRecord verify_prime_cancellation(const DirichletCharacter& chi,
                                             double t0, double x,
                                             const EigenformTable& table,
                                             const PrimeSieve& sieve,
                                             CancellationVariant variant) {
  require(x >= 2.0, "verify_prime_cancellation: x must be at least 2");
  if (variant == CancellationVariant::kPlain) {
    require(!chi.is_principal(),
            "verify_prime_cancellation: the principal character has no cancellation");
  } else {
    require(x <= static_cast<double>(table.size()),
            "verify_prime_cancellation: table does not cover primes <= x");
  }
  ComplexCompensatedSum sum;
  for (std::int64_t p : sieve.primes_up_to(x)) {
    const cd c = chi(p);
    if (c == 0.0) continue;
    const double lp = std::log(static_cast<double>(p));
    cd term = c * std::exp(cd(0.0, -t0 * lp)) * lp;
    if (variant == CancellationVariant::kSymSquare) {
      const double l = table.lambda(p);
      term *= l * l - 1.0;
    }
    sum += term;
  }
  CancellationRecord rec;
  rec.sum = sum.value();
  const double lg = std::log(2.0 * static_cast<double>(chi.modulus()) * (x + std::abs(t0)));
  rec.envelope_sqrt_x = std::sqrt(x) * lg * lg;
  rec.ratio = std::abs(rec.sum) / rec.envelope_sqrt_x;
  return rec;
}

ExponentFit fit_exponent(std::span<const MomentReport> reports) {
  require(reports.size() >= 3, "fit_exponent: need at least 3 reports");
  for (const auto& r : reports) {
    require(r.family == reports.front().family && r.m == reports.front().m,
            "fit_exponent: reports must share family and m");
    require(r.measured > 0.0 && r.count > 0,
            "fit_exponent: measured values must be positive");
    require(r.modulus > 2, "fit_exponent: modulus must exceed e");
  }
  const double n = static_cast<double>(reports.size());
  double sx = 0, sy = 0;
  std::vector<double> xs, ys;
  for (const auto& r : reports) {
    const double x = r.log_exponent * std::log(std::log(static_cast<double>(r.modulus)));
    const double y = std::log(r.measured) - std::log(static_cast<double>(r.count)) -
                     r.m * std::log(static_cast<double>(r.Y));
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  require(sxx > 0.0, "fit_exponent: moduli must differ");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace hecke
