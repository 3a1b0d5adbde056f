#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace hecke {

class PrimeSieve;

namespace detail {
struct GroupData;
}

// Integer combination sum_k c_k zeta_L^k of L-th roots of unity. Equality
// with zero or with an integer is decided exactly by reduction modulo the
// L-th cyclotomic polynomial.
class CyclotomicSum {
 public:
  explicit CyclotomicSum(std::int64_t order);

  std::int64_t order() const { return order_; }
  void add(std::int64_t exponent, std::int64_t count = 1);

  // Coefficients of the remainder modulo Phi_L, lowest degree first.
  std::vector<std::int64_t> reduced() const;
  bool is_zero() const;
  // The integer value, when the sum is rational (it is then an integer).
  bool is_integer() const;
  std::int64_t integer_value() const;
  std::complex<double> value() const;

 private:
  std::int64_t order_;
  std::vector<std::int64_t> counts_;
};

// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n);

// A Dirichlet character, stored as exponents on the generators of its
// group. Values are exact roots of unity e(k / L) where L is the group's
// exponent; value_exponent() exposes k.
class DirichletCharacter {
 public:
  std::int64_t modulus() const;
  std::int64_t index() const { return index_; }
  std::span<const std::int64_t> exponents() const { return exponents_; }
  std::int64_t conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == modulus(); }
  bool is_principal() const;
  bool is_quadratic() const;
  bool is_even() const;
  // Multiplicative order of the character.
  std::int64_t order() const;

  // Exponent k in [0, L) with chi(n) = e(k / L), or -1 when gcd(n, q) > 1.
  std::int64_t value_exponent(std::int64_t n) const;
  std::int64_t root_order() const;
  std::complex<double> operator()(std::int64_t n) const;

  // chi(a) for a = 0..q-1.
  std::vector<std::complex<double>> value_table() const;

  DirichletCharacter conj() const;

 private:
  friend class CharacterGroup;
  DirichletCharacter(std::shared_ptr<const detail::GroupData> group,
                     std::int64_t index);

  std::shared_ptr<const detail::GroupData> group_;
  std::int64_t index_ = 0;
  std::vector<std::int64_t> exponents_;
  std::int64_t conductor_ = 1;
};

struct GroupGenerator {
  std::int64_t prime;          // prime whose power carries this generator
  std::int64_t prime_power;    // p^e component modulus
  std::int64_t generator;      // residue mod p^e (-1 is stored as p^e - 1)
  std::int64_t order;          // order of the generator
};

// The full character group mod q, built from a CRT decomposition with a
// primitive root per odd prime power and the pair (-1, 5) for 2^a, a >= 3.
// Characters are enumerated lexicographically by exponent vector.
class CharacterGroup {
 public:
  CharacterGroup(std::int64_t q, const PrimeSieve& sieve);

  std::int64_t modulus() const;
  std::int64_t order() const;     // phi(q)
  std::int64_t exponent() const;  // lcm of generator orders
  std::span<const GroupGenerator> generators() const;

  DirichletCharacter character(std::int64_t index) const;
  DirichletCharacter character(std::span<const std::int64_t> exponents) const;
  DirichletCharacter principal() const { return character(0); }
  std::vector<DirichletCharacter> characters() const;
  std::vector<DirichletCharacter> primitive_characters() const;

 private:
  std::shared_ptr<const detail::GroupData> data_;
};

// sum_{a mod q} chi(a) e(a n / q).
std::complex<double> twisted_gauss_sum(const DirichletCharacter& chi,
                                       std::int64_t n);

// tau(chi) for primitive chi; imprimitive characters are rejected.
std::complex<double> gauss_sum(const DirichletCharacter& chi);

// sum over all chi mod q of chi(n), in exact root-of-unity arithmetic.
CyclotomicSum orthogonality_sum(const CharacterGroup& group, std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

}  // namespace hecke
