#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "hecke/arith.h"
#include "hecke/dirichlet.h"
#include "hecke/error.h"
#include "oracles.h"

using namespace hecke;

namespace {

const PrimeSieve& sieve() {
  static const PrimeSieve s(100'000);
  return s;
}

// Smallest d | q with chi(n) = 1 for every unit n = 1 mod d.
std::int64_t brute_conductor(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  for (std::int64_t d = 1; d <= q; ++d) {
    if (q % d != 0) continue;
    bool induced = true;
    for (std::int64_t n = 1; n < q && induced; n += d) {
      if (std::gcd(n, q) == 1 && chi.value_exponent(n) != 0) induced = false;
    }
    if (induced) return d;
  }
  return q;
}

std::complex<double> e(double x) {
  return std::polar(1.0, 2.0 * std::numbers::pi * x);
}

}  // namespace

TEST(CharacterGroup, Orders) {
  EXPECT_EQ(CharacterGroup(5, sieve()).order(), 4);
  const CharacterGroup g8(8, sieve());
  EXPECT_EQ(g8.order(), 4);
  EXPECT_EQ(g8.generators().size(), 2u);
  EXPECT_EQ(CharacterGroup(45, sieve()).order(), 24);
  EXPECT_THROW(CharacterGroup(2, sieve()), PreconditionError);
}

TEST(CharacterGroup, SweepUpTo200) {
  for (std::int64_t q = 3; q <= 200; ++q) {
    const CharacterGroup g(q, sieve());
    const auto chars = g.characters();
    ASSERT_EQ(static_cast<std::int64_t>(chars.size()), oracle::phi(q)) << q;

    std::set<std::vector<std::int64_t>> tables;
    std::int64_t primitive = 0, brute_primitive = 0;
    for (const auto& chi : chars) {
      std::vector<std::int64_t> values;
      for (std::int64_t n = 0; n < q; ++n) values.push_back(chi.value_exponent(n));
      tables.insert(values);
      const std::int64_t f = brute_conductor(chi);
      ASSERT_EQ(chi.conductor(), f) << "q = " << q << " index " << chi.index();
      primitive += chi.is_primitive();
      brute_primitive += f == q;
    }
    ASSERT_EQ(tables.size(), chars.size()) << "duplicate characters mod " << q;
    ASSERT_EQ(primitive, brute_primitive);
    ASSERT_EQ(static_cast<std::int64_t>(g.primitive_characters().size()), primitive);
  }
}

TEST(DirichletCharacter, MultiplicativeAndPeriodic) {
  for (std::int64_t q : {12, 16, 45, 63, 97, 120}) {
    const CharacterGroup g(q, sieve());
    const std::int64_t L = g.exponent();
    for (const auto& chi : g.characters()) {
      for (std::int64_t m = 1; m < q; ++m) {
        ASSERT_EQ(chi.value_exponent(m), chi.value_exponent(m + 3 * q));
        for (std::int64_t n = 1; n < q; ++n) {
          const auto a = chi.value_exponent(m), b = chi.value_exponent(n);
          const auto ab = chi.value_exponent(m * n);
          if (a < 0 || b < 0) {
            ASSERT_EQ(ab, -1);
          } else {
            ASSERT_EQ(ab, (a + b) % L);
          }
        }
      }
    }
  }
}

TEST(DirichletCharacter, ValuesOnUnitCircle) {
  const CharacterGroup g(91, sieve());
  for (const auto& chi : g.characters()) {
    for (std::int64_t n = 0; n < 91; ++n) {
      const auto v = chi(n);
      if (std::gcd(n, std::int64_t{91}) > 1) {
        ASSERT_EQ(v, std::complex<double>(0.0));
      } else {
        ASSERT_NEAR(std::abs(v), 1.0, 1e-14);
      }
    }
  }
}

TEST(DirichletCharacter, Metadata) {
  const CharacterGroup g(5, sieve());
  EXPECT_TRUE(g.principal().is_principal());
  EXPECT_EQ(g.principal().conductor(), 1);
  EXPECT_EQ(g.primitive_characters().size(), 3u);
  int quadratic = 0;
  for (const auto& chi : g.characters()) {
    quadratic += chi.is_quadratic() && !chi.is_principal();
    // is_quadratic iff chi^2 is principal.
    bool square_trivial = true;
    for (std::int64_t n = 1; n < 5; ++n) {
      square_trivial &= (2 * chi.value_exponent(n)) % chi.root_order() == 0;
    }
    EXPECT_EQ(chi.is_quadratic(), square_trivial);
    EXPECT_EQ(chi.is_even(), chi.value_exponent(4) == 0);
  }
  EXPECT_EQ(quadratic, 1);

  // mod 9: the character induced from the quadratic one mod 3 has conductor 3.
  const CharacterGroup g9(9, sieve());
  int found = 0;
  for (const auto& chi : g9.characters()) {
    if (chi.is_quadratic() && !chi.is_principal()) {
      EXPECT_EQ(chi.conductor(), 3);
      EXPECT_EQ(chi(2), std::complex<double>(-1.0));
      ++found;
    }
  }
  EXPECT_EQ(found, 1);
}

TEST(DirichletCharacter, ConjugateIsInverse) {
  const CharacterGroup g(35, sieve());
  for (const auto& chi : g.characters()) {
    const auto c = chi.conj();
    for (std::int64_t n = 1; n < 35; ++n) {
      ASSERT_NEAR(std::abs(chi(n) * c(n) - (std::gcd(n, std::int64_t{35}) == 1 ? 1.0 : 0.0)),
                  0.0, 1e-14);
    }
  }
}

TEST(GaussSum, ClassicalValues) {
  for (const auto& chi : CharacterGroup(5, sieve()).characters()) {
    if (chi.is_quadratic() && !chi.is_principal()) {
      EXPECT_NEAR(std::abs(gauss_sum(chi) - std::sqrt(5.0)), 0.0, 1e-12);
    }
  }
  for (const auto& chi : CharacterGroup(3, sieve()).characters()) {
    if (!chi.is_principal()) {
      EXPECT_NEAR(std::abs(gauss_sum(chi) - std::complex<double>(0, std::sqrt(3.0))), 0.0,
                  1e-12);
    }
  }
  EXPECT_THROW(gauss_sum(CharacterGroup(5, sieve()).principal()), PreconditionError);
}

TEST(GaussSum, MagnitudeSweep) {
  for (std::int64_t q = 3; q <= 200; ++q) {
    for (const auto& chi : CharacterGroup(q, sieve()).primitive_characters()) {
      ASSERT_NEAR(std::abs(gauss_sum(chi)) / std::sqrt(static_cast<double>(q)), 1.0, 1e-9)
          << q << " " << chi.index();
    }
  }
}

TEST(GaussSum, DirectSumAndTwistedIdentity) {
  for (std::int64_t q = 3; q <= 50; ++q) {
    for (const auto& chi : CharacterGroup(q, sieve()).primitive_characters()) {
      std::complex<double> direct = 0.0;
      for (std::int64_t a = 1; a < q; ++a) direct += chi(a) * e(static_cast<double>(a) / q);
      const auto tau = gauss_sum(chi);
      ASSERT_NEAR(std::abs(direct - tau), 0.0, 1e-9);
      for (std::int64_t n = 1; n < 2 * q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        ASSERT_NEAR(std::abs(twisted_gauss_sum(chi, n) - std::conj(chi(n)) * tau), 0.0, 1e-9)
            << q << " " << n;
      }
    }
  }
}

TEST(Orthogonality, ExactValues) {
  const CharacterGroup g5(5, sieve());
  EXPECT_EQ(orthogonality_sum(g5, 1).integer_value(), 4);
  EXPECT_TRUE(orthogonality_sum(g5, 2).is_zero());
  EXPECT_EQ(orthogonality_sum(CharacterGroup(7, sieve()), 8).integer_value(), 6);
  for (std::int64_t q = 3; q <= 200; ++q) {
    const CharacterGroup g(q, sieve());
    for (std::int64_t n = 0; n < q; ++n) {
      const auto s = orthogonality_sum(g, n);
      if (n % q == 1 % q) {
        ASSERT_TRUE(s.is_integer());
        ASSERT_EQ(s.integer_value(), oracle::phi(q));
      } else {
        ASSERT_TRUE(s.is_zero()) << q << " " << n;
      }
    }
  }
}

TEST(Cyclotomic, Polynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<std::int64_t>{1, -1, 1}));
  // Phi_105 is the first with a coefficient of absolute value 2.
  const auto p105 = cyclotomic_polynomial(105);
  EXPECT_EQ(p105.size(), 49u);
  EXPECT_EQ(*std::min_element(p105.begin(), p105.end()), -2);
  for (std::int64_t n = 1; n <= 60; ++n) {
    ASSERT_EQ(static_cast<std::int64_t>(cyclotomic_polynomial(n).size()) - 1, oracle::phi(n));
  }
}

TEST(Cyclotomic, SumOfAllRootsVanishes) {
  for (std::int64_t L = 2; L <= 30; ++L) {
    CyclotomicSum s(L);
    for (std::int64_t k = 0; k < L; ++k) s.add(k);
    ASSERT_TRUE(s.is_zero());
    s.add(0, 3);
    ASSERT_TRUE(s.is_integer());
    ASSERT_EQ(s.integer_value(), 3);
  }
}

TEST(QuadraticFamily, KroneckerIsPrimitiveCharacter) {
  // (8d|.) is a primitive real character mod 8d: compare against the
  // character group's quadratic primitive characters.
  for (std::int64_t d = 1; d <= 30; d += 2) {
    if (!oracle::squarefree(d)) continue;
    const std::int64_t q = 8 * d;
    int matches = 0;
    for (const auto& chi : CharacterGroup(q, sieve()).primitive_characters()) {
      if (!chi.is_quadratic()) continue;
      bool same = true;
      for (std::int64_t n = 0; n < q && same; ++n) {
        same = std::abs(chi(n) - static_cast<double>(kronecker(q, n))) < 1e-12;
      }
      matches += same;
    }
    ASSERT_EQ(matches, 1) << d;
  }
}
