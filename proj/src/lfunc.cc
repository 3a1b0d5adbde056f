#include "hecke/lfunc.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hecke/arith.h"
#include "hecke/dirichlet.h"
#include "hecke/eigenform.h"
#include "hecke/error.h"
#include "hecke/summation.h"

namespace hecke {

namespace {

using cd = std::complex<double>;

constexpr double kShiftA = 5.5;  // (weight - 1) / 2
constexpr double kSplits[2] = {1.0, 1.2};

bool is_square_free(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

}  // namespace

Twist Twist::trivial() {
  Twist t;
  t.q_ = 1;
  t.values_ = {1.0};
  t.gauss_ = 1.0;
  return t;
}

Twist Twist::from_character(const DirichletCharacter& chi) {
  require(chi.is_primitive(), "twist needs a primitive character; conductor " +
                                  std::to_string(chi.conductor()) + " != modulus " +
                                  std::to_string(chi.modulus()));
  Twist t;
  t.q_ = chi.modulus();
  t.values_ = chi.value_table();
  t.gauss_ = hecke::gauss_sum(chi);
  t.real_ = chi.is_quadratic();
  t.quadratic_ = chi.is_quadratic();
  return t;
}

Twist Twist::kronecker_8d(std::int64_t d) {
  require(d >= 1 && d % 2 == 1 && is_square_free(d),
          "kronecker_8d: d = " + std::to_string(d) +
              " must be odd, positive and square-free");
  Twist t;
  t.q_ = 8 * d;
  t.values_.resize(static_cast<std::size_t>(t.q_));
  ComplexCompensatedSum gauss;
  for (std::int64_t a = 0; a < t.q_; ++a) {
    const int v = kronecker(8 * d, a);
    t.values_[a] = static_cast<double>(v);
    if (v != 0) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(a) /
                           static_cast<double>(t.q_);
      gauss += static_cast<double>(v) * cd(std::cos(angle), std::sin(angle));
    }
  }
  t.gauss_ = gauss.value();
  return t;
}

cd Twist::operator()(std::int64_t n) const {
  std::int64_t r = n % q_;
  if (r < 0) r += q_;
  return values_[static_cast<std::size_t>(r)];
}

Twist Twist::conj() const {
  Twist t = *this;
  for (auto& v : t.values_) v = std::conj(v);
  // tau(conj chi) = chi(-1) conj(tau(chi))
  t.gauss_ = (*this)(-1) * std::conj(gauss_);
  return t;
}

cd Twist::root_number() const {
  // i^12 = 1.
  return gauss_ * gauss_ / static_cast<double>(q_);
}

TwistedLSeries::TwistedLSeries(std::int64_t q, cd s, const EigenformTable& table,
                               std::int64_t cutoff)
    : q_(q), s_(s), table_(&table) {
  require(q >= 1, "l_twisted: modulus must be positive");
  require(s.real() >= 0.5, "l_twisted: Re s must be at least 1/2");
  require(cutoff >= 0 && cutoff <= table.size(),
          "l_twisted: cutoff " + std::to_string(cutoff) + " exceeds table size " +
              std::to_string(table.size()));
  const std::int64_t cap = cutoff > 0 ? cutoff : table.size();
  const cd a_direct = s + kShiftA;
  const cd a_dual = 1.0 - s + kShiftA;
  const cd gamma = std::exp(log_gamma(a_direct));
  const double Q = static_cast<double>(q) / (2.0 * std::numbers::pi);
  dual_factor_ = std::exp((1.0 - 2.0 * s) * std::log(Q));
  const double dual_scale = std::abs(dual_factor_);

  for (int c = 0; c < 2; ++c) {
    direct_[c].assign(1, 0.0);
    dual_[c].assign(1, 0.0);
  }
  double last = std::numeric_limits<double>::infinity();
  double ratio = 1.0;
  for (std::int64_t n = 1; n <= cap; ++n) {
    const double logn = std::log(static_cast<double>(n));
    const double base = 2.0 * std::numbers::pi * static_cast<double>(n) /
                        static_cast<double>(q);
    double largest = 0.0;
    bool decaying = true;
    for (int c = 0; c < 2; ++c) {
      const double x_direct = base * kSplits[c];
      const double x_dual = base / kSplits[c];
      const cd wd = std::exp(-s * logn) * upper_incomplete_gamma(a_direct, x_direct) / gamma;
      const cd wu = std::exp((s - 1.0) * logn) * upper_incomplete_gamma(a_dual, x_dual) / gamma;
      direct_[c].push_back(wd);
      dual_[c].push_back(wu);
      largest = std::max({largest, std::abs(wd), dual_scale * std::abs(wu)});
      decaying = decaying && x_direct > a_direct.real() + 1.0 &&
                 x_dual > a_dual.real() + 1.0;
    }
    ratio = largest / last;
    last = largest;
    terms_ = n;
    if (cutoff == 0 && decaying && largest * static_cast<double>(q) < 1e-19) break;
  }
  // Remaining terms: |lambda(n)| <= d(n) <= 2 sqrt(n), weights decay at
  // least geometrically once past the incomplete-gamma turning point.
  const double dn = 2.0 * std::sqrt(static_cast<double>(terms_ + 1));
  tail_bound_ = ratio < 1.0 ? 4.0 * dn * last * ratio / (1.0 - ratio)
                            : std::numeric_limits<double>::infinity();
}

LValue TwistedLSeries::evaluate(const Twist& chi) const {
  require(chi.modulus() == q_, "l_twisted: character modulus " +
                                   std::to_string(chi.modulus()) +
                                   " does not match the series modulus " +
                                   std::to_string(q_));
  const cd eps = chi.root_number();
  const auto lambda = table_->lambda_values();
  cd value[2];
  for (int c = 0; c < 2; ++c) {
    ComplexCompensatedSum direct;
    ComplexCompensatedSum dual;
    for (std::int64_t n = 1; n <= terms_; ++n) {
      const cd x = chi(n);
      if (x == 0.0) continue;
      direct += lambda[n] * x * direct_[c][n];
      dual += lambda[n] * std::conj(x) * dual_[c][n];
    }
    value[c] = direct.value() + eps * dual_factor_ * dual.value();
  }
  return {value[0], std::abs(value[0] - value[1]) + tail_bound_, terms_};
}

LValue l_twisted(cd s, const Twist& chi, const EigenformTable& table,
                 std::int64_t cutoff) {
  return TwistedLSeries(chi.modulus(), s, table, cutoff).evaluate(chi);
}

SymSquareSeries::SymSquareSeries(const EigenformTable& table)
    : coeff_(square_argument_eigenvalues(table, table.size())) {}

LValue SymSquareSeries::evaluate(cd s) const {
  require(s.real() > 1.0, "l_sym_square: Re s must exceed 1 (no continuation)");
  const std::int64_t M = terms();
  ComplexCompensatedSum sum;
  for (std::int64_t n = 1; n <= M; ++n) {
    sum += coeff_[n] * std::exp(-s * std::log(static_cast<double>(n)));
  }
  const cd z2 = zeta(2.0 * s);
  // sum_{n > M} d(n^2) n^-sigma against the average order (3/pi^2) log^2 n.
  const double sigma = s.real();
  const double L = std::log(static_cast<double>(M));
  const double e = sigma - 1.0;
  const double tail = 3.0 / (std::numbers::pi * std::numbers::pi) *
                      std::exp(-e * L) / e * (L * L + 2.0 * L / e + 2.0 / (e * e));
  return {z2 * sum.value(), std::abs(z2) * tail, M};
}

LValue l_sym_square(cd s, const EigenformTable& table) {
  return SymSquareSeries(table).evaluate(s);
}

PrimeSumIdentity zeta_prime_sum_identity(double x, double alpha,
                                         const PrimeSieve& sieve) {
  require(x >= 2.0, "prime-sum identity: x must be at least 2");
  CompensatedSum sum;
  for (std::int64_t p : sieve.primes_up_to(x)) {
    const double lp = std::log(static_cast<double>(p));
    sum += std::cos(alpha * lp) / static_cast<double>(p);
  }
  const double log_abs = std::log(std::abs(zeta(cd(1.0 + 1.0 / std::log(x), alpha))));
  return {sum.value(), log_abs, sum.value() - log_abs};
}

PrimeSumIdentity sym_square_prime_sum_identity(double x, double alpha,
                                               const PrimeSieve& sieve,
                                               const EigenformTable& table,
                                               const SymSquareSeries& series) {
  require(x >= 2.0, "prime-sum identity: x must be at least 2");
  require(x <= static_cast<double>(table.size()),
          "prime-sum identity: table does not cover primes <= x");
  CompensatedSum sum;
  for (std::int64_t p : sieve.primes_up_to(x)) {
    const double lp = std::log(static_cast<double>(p));
    const double l = table.lambda(p);
    sum += std::cos(alpha * lp) * (l * l - 1.0) / static_cast<double>(p);
  }
  const LValue v = series.evaluate(cd(1.0 + 1.0 / std::log(x), alpha));
  const double log_abs = std::log(std::abs(v.value));
  return {sum.value(), log_abs, sum.value() - log_abs};
}

double g1(double x, double logq) {
  require(x >= 0.0, "g1: x must be non-negative");
  require(logq > 1.0, "g1: log q must exceed 1");
  // x against e^q is compared in logs.
  const double logx = x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
  const double q = std::exp(logq);
  double best = std::numeric_limits<double>::infinity();
  if (x <= 1.0 / logq || logx >= q) best = std::min(best, logq);
  if (x >= 1.0 / logq && x <= 10.0) best = std::min(best, 1.0 / x);
  if (x >= 10.0 && logx <= q) best = std::min(best, std::log(logx));
  return best;
}

double g2(double x, double logq) {
  require(x >= 0.0, "g2: x must be non-negative");
  require(logq > 1.0, "g2: log q must exceed 1");
  const double logx = x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
  const double q = std::exp(logq);
  double best = std::numeric_limits<double>::infinity();
  if (logx <= std::numbers::e) best = std::min(best, 1.0);
  if (logx >= std::numbers::e && logx <= q) best = std::min(best, std::log(logx));
  if (logx >= q) best = std::min(best, logq);
  return best;
}

double ShiftConfig::total() const {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

double ShiftConfig::sum_of_squares() const {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

void ShiftConfig::validate(double modulus) const {
  require(!a.empty(), "shift config needs at least one exponent");
  require(a.size() == t.size(), "shift config: exponent and shift counts differ");
  require(A > 0.0, "shift config: A must be positive");
  for (double v : a) require(v > 0.0, "shift config: exponents must be positive");
  const double bound = A * std::log(modulus);
  for (double v : t) {
    require(v == 0.0 || std::log(std::abs(v)) <= bound,
            "shift config: |t| = " + std::to_string(std::abs(v)) +
                " exceeds modulus^A");
  }
}

cd shift_weight_h(std::int64_t n, const ShiftConfig& cfg) {
  require(n >= 1, "shift_weight_h: n must be positive");
  require(cfg.a.size() == cfg.t.size(), "shift config: size mismatch");
  const double logn = std::log(static_cast<double>(n));
  cd sum = 0.0;
  for (std::size_t m = 0; m < cfg.a.size(); ++m) {
    sum += cfg.a[m] * std::exp(cd(0.0, -cfg.t[m] * logn));
  }
  return 0.5 * sum;
}

double log_lambda0() {
  auto residual = [](double l) { return std::exp(-l) - l - 0.5 * l * l; };
  double lo = 0.4;
  double hi = 0.6;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

MajorantValue log_l_majorant(const Twist& chi, double t, double x, double Q,
                             const EigenformTable& table, const PrimeSieve& sieve,
                             MajorantVariant variant, double A) {
  require(x >= 2.0 && x <= Q, "log_l_majorant: need 2 <= x <= Q");
  require(x <= static_cast<double>(table.size()),
          "log_l_majorant: table does not cover primes <= x");
  require(A > 0.0, "log_l_majorant: A must be positive");
  require(t == 0.0 || std::log(std::abs(t)) <= A * std::log(Q),
          "log_l_majorant: |t| exceeds Q^A");
  if (variant == MajorantVariant::kNonQuadratic) {
    require(!chi.is_quadratic(), "log_l_majorant: non-quadratic variant needs a "
                                 "non-quadratic character");
  }
  const double lx = std::log(x);
  ComplexCompensatedSum prime;
  for (std::int64_t p : sieve.primes_up_to(x)) {
    const cd c = chi(p);
    if (c == 0.0) continue;
    const double lp = std::log(static_cast<double>(p));
    const cd power = std::exp(-cd(0.5 + 1.0 / lx, t) * lp);
    prime += c * table.lambda(p) * power * ((lx - lp) / lx);
  }
  double square_end = std::sqrt(x);
  if (variant == MajorantVariant::kNonQuadratic) {
    square_end = std::min(std::log(Q), square_end);
  }
  ComplexCompensatedSum square;
  if (square_end >= 2.0) {
    for (std::int64_t p : sieve.primes_up_to(square_end)) {
      const cd w = variant == MajorantVariant::kQuadratic ? cd(1.0) : chi(p) * chi(p);
      if (w == 0.0) continue;
      const double l = table.lambda(p);
      const double lp = std::log(static_cast<double>(p));
      square += w * (l * l - 2.0) * std::exp(-cd(1.0, 2.0 * t) * lp);
    }
  }
  MajorantValue out;
  out.prime_sum = prime.value().real();
  out.square_sum = -0.5 * square.value().real();
  out.conductor_term = 2.0 * (A + 1.0) * std::log(Q) / lx;
  out.value = out.prime_sum + out.square_sum + out.conductor_term;
  return out;
}

namespace {

void add_factor(EnvelopeValue& env, std::string kind, cd point, double exponent,
                double value) {
  env.log_envelope += exponent * std::log(value);
  env.factors.push_back({std::move(kind), point, exponent, value});
}

// |zeta| and |L(sym^2)| at 1 + 1/log Q + i u, or g1/g2 at |u|.
void add_pair(EnvelopeValue& env, double u, double logQ, double zeta_exp,
              double sym_exp, const SymSquareSeries& sym2, EnvelopeMode mode) {
  if (mode == EnvelopeMode::kExact) {
    const cd s(1.0 + 1.0 / logQ, u);
    if (zeta_exp != 0.0) add_factor(env, "zeta", s, zeta_exp, std::abs(zeta(s)));
    if (sym_exp != 0.0) {
      add_factor(env, "sym2", s, sym_exp, std::abs(sym2.evaluate(s).value));
    }
  } else {
    const double x = std::abs(u);
    if (zeta_exp != 0.0) add_factor(env, "g1", x, zeta_exp, g1(x, logQ));
    if (sym_exp != 0.0) add_factor(env, "g2", x, sym_exp, g2(x, logQ));
  }
}

}  // namespace

EnvelopeValue envelope_fixed_mod(const ShiftConfig& cfg, std::int64_t q,
                                 const SymSquareSeries& sym2, EnvelopeMode mode) {
  require(q >= 3, "envelope_fixed_mod: q must satisfy log log q > 0");
  cfg.validate(static_cast<double>(q));
  const double logq = std::log(static_cast<double>(q));
  EnvelopeValue env;
  add_factor(env, "phi", static_cast<double>(q), 1.0, static_cast<double>(euler_phi(q)));
  add_factor(env, "log", static_cast<double>(q), cfg.sum_of_squares() / 4.0, logq);
  for (std::size_t j = 0; j < cfg.k(); ++j) {
    for (std::size_t l = j + 1; l < cfg.k(); ++l) {
      const double e = cfg.a[j] * cfg.a[l] / 2.0;
      add_pair(env, cfg.t[j] - cfg.t[l], logq, e, e, sym2, mode);
    }
  }
  return env;
}

EnvelopeValue envelope_quadratic(const ShiftConfig& cfg, double X,
                                 const SymSquareSeries& sym2, EnvelopeMode mode) {
  require(X > std::exp(1.0), "envelope_quadratic: X must satisfy log log X > 0");
  cfg.validate(X);
  const double logX = std::log(X);
  EnvelopeValue env;
  add_factor(env, "X", X, 1.0, X);
  add_factor(env, "log", X, cfg.sum_of_squares() / 4.0, logX);
  for (std::size_t j = 0; j < cfg.k(); ++j) {
    for (std::size_t l = j + 1; l < cfg.k(); ++l) {
      const double e = cfg.a[j] * cfg.a[l] / 2.0;
      add_pair(env, cfg.t[j] - cfg.t[l], logX, e, e, sym2, mode);
      add_pair(env, cfg.t[j] + cfg.t[l], logX, e, e, sym2, mode);
    }
  }
  for (std::size_t j = 0; j < cfg.k(); ++j) {
    const double a = cfg.a[j];
    add_pair(env, 2.0 * cfg.t[j], logX, a * a / 4.0 - a / 2.0, a * a / 4.0 + a / 2.0,
             sym2, mode);
  }
  return env;
}

}  // namespace hecke
