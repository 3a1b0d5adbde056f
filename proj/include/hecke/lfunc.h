#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hecke/special.h"

namespace hecke {

class DirichletCharacter;
class EigenformTable;
class PrimeSieve;

// A primitive character used to twist f, flattened to a value table mod q
// together with its Gauss sum. Built from a DirichletCharacter, from the
// Kronecker symbol (8d|.), or as the trivial character (q = 1).
class Twist {
 public:
  static Twist trivial();
  // Rejects imprimitive characters: the functional equation needs the
  // conductor to equal the modulus.
  static Twist from_character(const DirichletCharacter& chi);
  // chi^(8d) for odd square-free d >= 1, primitive of conductor 8d.
  static Twist kronecker_8d(std::int64_t d);

  std::int64_t modulus() const { return q_; }
  std::complex<double> operator()(std::int64_t n) const;
  std::complex<double> gauss_sum() const { return gauss_; }
  bool is_real() const { return real_; }
  // chi(p^2) for every p, i.e. chi is quadratic or principal.
  bool is_quadratic() const { return quadratic_; }
  Twist conj() const;
  // i^12 tau(chi)^2 / q.
  std::complex<double> root_number() const;

 private:
  Twist() = default;
  void classify();

  std::int64_t q_ = 1;
  std::vector<std::complex<double>> values_;
  std::complex<double> gauss_ = 1.0;
  bool real_ = true;
  bool quadratic_ = true;
};

struct LValue {
  std::complex<double> value;
  double error_estimate = 0.0;
  std::int64_t terms = 0;
};

// L(s, f x chi) for a fixed modulus and s, with the incomplete-gamma weights
// precomputed so that many characters mod q can be evaluated cheaply.
//
// The value comes from the exact approximate functional equation
//   Gamma(s+a) L(s) = sum b(n) n^-s Gamma(s+a, 2 pi n c / q)
//     + eps (q / 2 pi)^(1-2s) sum conj(b(n)) n^(s-1) Gamma(1-s+a, 2 pi n / (q c)),
// a = 11/2, which holds for every c > 0. The error estimate is the
// discrepancy between c = 1 and c = 1.2 plus the truncation tails, so it
// also exposes a wrong root number or an inaccurate incomplete gamma.
class TwistedLSeries {
 public:
  // cutoff = 0 picks the number of terms automatically (capped by the table).
  TwistedLSeries(std::int64_t q, std::complex<double> s,
                 const EigenformTable& table, std::int64_t cutoff = 0);

  std::int64_t terms() const { return terms_; }
  LValue evaluate(const Twist& chi) const;

 private:
  std::int64_t q_;
  std::complex<double> s_;
  const EigenformTable* table_;
  std::int64_t terms_ = 0;
  std::complex<double> dual_factor_;  // (q / 2 pi)^(1-2s)
  // Per n, already divided by Gamma(s + a); index 0 unused.
  std::vector<std::complex<double>> direct_[2];
  std::vector<std::complex<double>> dual_[2];
  double tail_bound_ = 0.0;
};

LValue l_twisted(std::complex<double> s, const Twist& chi,
                 const EigenformTable& table, std::int64_t cutoff = 0);

// L(s, sym^2 f) = zeta(2s) sum lambda(n^2) n^-s for Re s > 1, truncated at
// n <= table.size(). lambda(n^2) comes from the Hecke recursion on the
// table's lambda(p). The error estimate bounds the tail with the average
// order of d(n^2).
class SymSquareSeries {
 public:
  explicit SymSquareSeries(const EigenformTable& table);

  std::int64_t terms() const { return static_cast<std::int64_t>(coeff_.size()) - 1; }
  LValue evaluate(std::complex<double> s) const;
  double lambda_square(std::int64_t n) const { return coeff_.at(static_cast<std::size_t>(n)); }

 private:
  std::vector<double> coeff_;
};

LValue l_sym_square(std::complex<double> s, const EigenformTable& table);

// The two sides of the Mertens-type identities
//   sum_{p <= x} cos(alpha log p) / p            vs log |zeta(1 + 1/log x + i alpha)|
//   sum_{p <= x} cos(alpha log p) lambda(p^2) / p vs log |L(1 + 1/log x + i alpha, sym^2 f)|
struct PrimeSumIdentity {
  double prime_sum = 0.0;
  double log_abs_value = 0.0;
  double gap = 0.0;  // prime_sum - log_abs_value
};

PrimeSumIdentity zeta_prime_sum_identity(double x, double alpha,
                                         const PrimeSieve& sieve);
PrimeSumIdentity sym_square_prime_sum_identity(double x, double alpha,
                                               const PrimeSieve& sieve,
                                               const EigenformTable& table,
                                               const SymSquareSeries& series);

// Piecewise envelope functions; at a boundary shared by two branches the
// smaller branch value is returned.
double g1(double x, double logq);
double g2(double x, double logq);

struct ShiftConfig {
  std::vector<double> a;  // exponents a_j > 0
  std::vector<double> t;  // shifts t_j
  double A = 1.0;

  std::size_t k() const { return a.size(); }
  double total() const;           // a_1 + ... + a_k
  double sum_of_squares() const;  // a_1^2 + ... + a_k^2
  // Throws unless sizes agree, every a_j > 0, A > 0 and |t_j| <= modulus^A.
  void validate(double modulus) const;
};

// h(n) = (1/2) sum_m a_m n^(-i t_m).
std::complex<double> shift_weight_h(std::int64_t n, const ShiftConfig& cfg);

// Root of e^-l = l + l^2 / 2 by bisection on [0.4, 0.6].
double log_lambda0();

enum class MajorantVariant { kGeneral, kNonQuadratic, kQuadratic };

struct MajorantValue {
  double value = 0.0;
  double prime_sum = 0.0;        // Re sum_{p<=x} chi(p) lambda(p) p^(-1/2-it-1/log x) log(x/p)/log x
  double square_sum = 0.0;       // -(1/2) Re sum chi(p^2)(lambda(p^2)-1) p^(-1-2it)
  double conductor_term = 0.0;   // 2 (A+1) log Q / log x
};

// Right-hand side of the GRH upper bound for log |L(1/2 + it, f x chi)|
// without its O(1). Q is the modulus q for the fixed-modulus variants and
// the family size X for the quadratic variant, where the bound is for
// log |A(d) L(...)| and chi(p^2) is dropped from the square sum.
MajorantValue log_l_majorant(const Twist& chi, double t, double x, double Q,
                             const EigenformTable& table, const PrimeSieve& sieve,
                             MajorantVariant variant, double A = 1.0);

enum class EnvelopeMode { kExact, kG };

struct EnvelopeFactor {
  std::string kind;             // phi, X, log, zeta, sym2, g1, g2
  std::complex<double> point;   // evaluation point (or real argument)
  double exponent = 0.0;
  double value = 0.0;           // positive
};

struct EnvelopeValue {
  double log_envelope = 0.0;
  std::vector<EnvelopeFactor> factors;
};

// Constant-free right-hand sides of the shifted-moment bounds for the
// fixed-modulus family (modulus q) and the quadratic family (size X).
EnvelopeValue envelope_fixed_mod(const ShiftConfig& cfg, std::int64_t q,
                                 const SymSquareSeries& sym2, EnvelopeMode mode);
EnvelopeValue envelope_quadratic(const ShiftConfig& cfg, double X,
                                 const SymSquareSeries& sym2, EnvelopeMode mode);

}  // namespace hecke
