#include "hecke/dirichlet.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "hecke/arith.h"
#include "hecke/error.h"
#include "hecke/summation.h"

namespace hecke {

namespace detail {

struct GroupData {
  std::int64_t q = 0;
  std::int64_t phi = 0;
  std::int64_t exponent = 1;  // L
  std::vector<GroupGenerator> generators;
  // logs[a * r + j]: discrete log of a mod q on generator j, or -1.
  std::vector<std::int32_t> logs;
  std::vector<std::complex<double>> roots;  // e(k / L)

  std::size_t rank() const { return generators.size(); }
};

}  // namespace detail

namespace {

using detail::GroupData;

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  __int128 result = 1 % mod;
  __int128 b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t primitive_root_mod_prime(std::int64_t p, const PrimeSieve& sieve) {
  if (p == 2) return 1;
  const auto factors = sieve.factor(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [r, e] : factors) {
      (void)e;
      if (pow_mod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw PreconditionError("no primitive root mod " + std::to_string(p));
}

std::complex<double> unit_root(std::int64_t k, std::int64_t order) {
  // Quarter turns exactly, so real characters have exactly real values.
  if ((4 * k) % order == 0) {
    constexpr std::complex<double> quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return quarter[(4 * k / order) % 4];
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(order);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<std::int64_t> poly_divide_monic(std::vector<std::int64_t> num,
                                            const std::vector<std::int64_t>& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() <= dn) return {0};
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const std::int64_t c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

std::int64_t mobius(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) { return a / gcd(a, b) * b; }

}  // namespace

std::int64_t euler_phi(std::int64_t n) {
  require(n >= 1, "euler_phi: n must be positive");
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n) {
  require(n >= 1, "cyclotomic_polynomial: n must be positive");
  // Phi_n = prod_{d | n} (x^d - 1)^mu(n/d); numerators first keeps every
  // division exact.
  std::vector<std::int64_t> numer{1};
  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const std::int64_t mu = mobius(n / d);
    if (mu == 1) {
      std::vector<std::int64_t> next(numer.size() + static_cast<std::size_t>(d), 0);
      for (std::size_t i = 0; i < numer.size(); ++i) {
        next[i + static_cast<std::size_t>(d)] += numer[i];
        next[i] -= numer[i];
      }
      numer = std::move(next);
    } else if (mu == -1) {
      divisors.push_back(d);
    }
  }
  for (std::int64_t d : divisors) {
    std::vector<std::int64_t> den(static_cast<std::size_t>(d) + 1, 0);
    den[0] = -1;
    den[static_cast<std::size_t>(d)] = 1;
    numer = poly_divide_monic(std::move(numer), den);
  }
  while (numer.size() > 1 && numer.back() == 0) numer.pop_back();
  return numer;
}

CyclotomicSum::CyclotomicSum(std::int64_t order)
    : order_(order), counts_(static_cast<std::size_t>(order), 0) {
  require(order >= 1, "CyclotomicSum: order must be positive");
}

void CyclotomicSum::add(std::int64_t exponent, std::int64_t count) {
  exponent %= order_;
  if (exponent < 0) exponent += order_;
  counts_[static_cast<std::size_t>(exponent)] += count;
}

std::vector<std::int64_t> CyclotomicSum::reduced() const {
  const auto phi = cyclotomic_polynomial(order_);
  const std::size_t deg = phi.size() - 1;
  std::vector<std::int64_t> r = counts_;
  for (std::size_t i = r.size(); i-- > deg;) {
    const std::int64_t c = r[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) {
      std::int64_t prod = 0;
      if (__builtin_mul_overflow(c, phi[j], &prod) ||
          __builtin_sub_overflow(r[i - deg + j], prod, &r[i - deg + j])) {
        throw OverflowError("cyclotomic reduction overflow");
      }
    }
  }
  r.resize(std::max<std::size_t>(deg, 1));
  return r;
}

bool CyclotomicSum::is_zero() const {
  for (std::int64_t c : reduced()) {
    if (c != 0) return false;
  }
  return true;
}

bool CyclotomicSum::is_integer() const {
  const auto r = reduced();
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i] != 0) return false;
  }
  return true;
}

std::int64_t CyclotomicSum::integer_value() const {
  require(is_integer(), "cyclotomic sum is not an integer");
  return reduced()[0];
}

std::complex<double> CyclotomicSum::value() const {
  ComplexCompensatedSum sum;
  for (std::int64_t k = 0; k < order_; ++k) {
    const std::int64_t c = counts_[static_cast<std::size_t>(k)];
    if (c != 0) sum += static_cast<double>(c) * unit_root(k, order_);
  }
  return sum.value();
}

CharacterGroup::CharacterGroup(std::int64_t q, const PrimeSieve& sieve) {
  require(q >= 3, "character group modulus must be at least 3, got " +
                      std::to_string(q));
  require(q <= sieve.limit(), "modulus " + std::to_string(q) +
                                  " exceeds sieve limit");
  require(q <= std::int64_t{1} << 24, "modulus too large for log tables");
  auto data = std::make_shared<GroupData>();
  data->q = q;
  data->phi = euler_phi(q);

  // Per-component discrete-log tables, indexed by residue mod p^e.
  struct Component {
    std::int64_t modulus;
    std::vector<std::size_t> gens;  // indices into data->generators
    std::vector<std::vector<std::int32_t>> dlog;
  };
  std::vector<Component> components;

  for (const auto& [p, e] : sieve.factor(q)) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    Component comp{pe, {}, {}};
    if (p == 2) {
      if (e == 2) {
        comp.gens.push_back(data->generators.size());
        data->generators.push_back({2, pe, pe - 1, 2});
        comp.dlog.assign(1, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1));
        comp.dlog[0][1] = 0;
        comp.dlog[0][3] = 1;
      } else if (e >= 3) {
        const std::int64_t half_order = pe / 4;
        comp.gens.push_back(data->generators.size());
        data->generators.push_back({2, pe, pe - 1, 2});
        comp.gens.push_back(data->generators.size());
        data->generators.push_back({2, pe, 5, half_order});
        comp.dlog.assign(2, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1));
        std::int64_t x = 1;
        for (std::int64_t b = 0; b < half_order; ++b) {
          comp.dlog[0][x] = 0;
          comp.dlog[1][x] = static_cast<std::int32_t>(b);
          comp.dlog[0][pe - x] = 1;
          comp.dlog[1][pe - x] = static_cast<std::int32_t>(b);
          x = x * 5 % pe;
        }
      }
    } else {
      std::int64_t g = primitive_root_mod_prime(p, sieve);
      if (e >= 2 && pow_mod(g, p - 1, p * p) == 1) g += p;
      const std::int64_t order = pe / p * (p - 1);
      comp.gens.push_back(data->generators.size());
      data->generators.push_back({p, pe, g, order});
      comp.dlog.assign(1, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1));
      std::int64_t x = 1;
      for (std::int64_t i = 0; i < order; ++i) {
        comp.dlog[0][x] = static_cast<std::int32_t>(i);
        x = x * g % pe;
      }
    }
    components.push_back(std::move(comp));
  }

  for (const auto& g : data->generators) data->exponent = lcm(data->exponent, g.order);

  const std::size_t r = data->rank();
  data->logs.assign(static_cast<std::size_t>(q) * r, -1);
  for (std::int64_t a = 0; a < q; ++a) {
    if (gcd(a, q) != 1) continue;
    for (const auto& comp : components) {
      const std::int64_t res = a % comp.modulus;
      for (std::size_t j = 0; j < comp.gens.size(); ++j) {
        data->logs[static_cast<std::size_t>(a) * r + comp.gens[j]] = comp.dlog[j][res];
      }
    }
  }
  data->roots.resize(static_cast<std::size_t>(data->exponent));
  for (std::int64_t k = 0; k < data->exponent; ++k) {
    data->roots[k] = unit_root(k, data->exponent);
  }
  data_ = std::move(data);
}

std::int64_t CharacterGroup::modulus() const { return data_->q; }
std::int64_t CharacterGroup::order() const { return data_->phi; }
std::int64_t CharacterGroup::exponent() const { return data_->exponent; }
std::span<const GroupGenerator> CharacterGroup::generators() const {
  return data_->generators;
}

DirichletCharacter CharacterGroup::character(std::int64_t index) const {
  require(index >= 0 && index < data_->phi,
          "character index " + std::to_string(index) + " out of range");
  return DirichletCharacter(data_, index);
}

DirichletCharacter CharacterGroup::character(
    std::span<const std::int64_t> exponents) const {
  require(exponents.size() == data_->rank(),
          "exponent vector length does not match the group rank");
  std::int64_t index = 0;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    const std::int64_t o = data_->generators[j].order;
    require(exponents[j] >= 0 && exponents[j] < o,
            "character exponent out of range");
    index = index * o + exponents[j];
  }
  return DirichletCharacter(data_, index);
}

std::vector<DirichletCharacter> CharacterGroup::characters() const {
  std::vector<DirichletCharacter> out;
  out.reserve(static_cast<std::size_t>(data_->phi));
  for (std::int64_t i = 0; i < data_->phi; ++i) out.push_back(character(i));
  return out;
}

std::vector<DirichletCharacter> CharacterGroup::primitive_characters() const {
  std::vector<DirichletCharacter> out;
  for (std::int64_t i = 0; i < data_->phi; ++i) {
    auto chi = character(i);
    if (chi.is_primitive()) out.push_back(std::move(chi));
  }
  return out;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const GroupData> group,
                                       std::int64_t index)
    : group_(std::move(group)), index_(index) {
  const auto& gens = group_->generators;
  exponents_.assign(gens.size(), 0);
  std::int64_t rest = index;
  for (std::size_t j = gens.size(); j-- > 0;) {
    exponents_[j] = rest % gens[j].order;
    rest /= gens[j].order;
  }

  // Conductor, one prime-power component at a time.
  conductor_ = 1;
  for (std::size_t j = 0; j < gens.size();) {
    const std::int64_t p = gens[j].prime;
    if (p == 2) {
      const bool has_five = j + 1 < gens.size() && gens[j + 1].prime == 2;
      const std::int64_t c_minus = exponents_[j];
      std::int64_t f = c_minus != 0 ? 4 : 1;
      if (has_five && exponents_[j + 1] != 0) {
        const std::int64_t o = gens[j + 1].order;
        const std::int64_t char_order = o / gcd(exponents_[j + 1], o);
        f = 4 * char_order;
      }
      conductor_ *= f;
      j += has_five ? 2 : 1;
    } else {
      const std::int64_t c = exponents_[j];
      if (c != 0) {
        std::int64_t char_order = gens[j].order / gcd(c, gens[j].order);
        std::int64_t f = p;
        while (char_order % p == 0) {
          char_order /= p;
          f *= p;
        }
        conductor_ *= f;
      }
      ++j;
    }
  }
}

std::int64_t DirichletCharacter::modulus() const { return group_->q; }

bool DirichletCharacter::is_principal() const {
  for (std::int64_t c : exponents_) {
    if (c != 0) return false;
  }
  return true;
}

bool DirichletCharacter::is_quadratic() const {
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    if ((2 * exponents_[j]) % group_->generators[j].order != 0) return false;
  }
  return true;
}

bool DirichletCharacter::is_even() const {
  return value_exponent(group_->q - 1) == 0;
}

std::int64_t DirichletCharacter::order() const {
  std::int64_t o = 1;
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    const std::int64_t g = group_->generators[j].order;
    o = lcm(o, g / gcd(exponents_[j], g));
  }
  return o;
}

std::int64_t DirichletCharacter::root_order() const { return group_->exponent; }

std::int64_t DirichletCharacter::value_exponent(std::int64_t n) const {
  const std::int64_t q = group_->q;
  std::int64_t a = n % q;
  if (a < 0) a += q;
  const std::size_t r = group_->rank();
  const std::int32_t* logs = group_->logs.data() + static_cast<std::size_t>(a) * r;
  if (r > 0 && logs[0] < 0) return -1;
  if (r == 0 && gcd(a, q) != 1) return -1;
  const std::int64_t L = group_->exponent;
  std::int64_t k = 0;
  for (std::size_t j = 0; j < r; ++j) {
    const std::int64_t scale = L / group_->generators[j].order;
    k = (k + exponents_[j] * logs[j] % group_->generators[j].order * scale) % L;
  }
  return k;
}

std::complex<double> DirichletCharacter::operator()(std::int64_t n) const {
  const std::int64_t k = value_exponent(n);
  if (k < 0) return {0.0, 0.0};
  return group_->roots[static_cast<std::size_t>(k)];
}

std::vector<std::complex<double>> DirichletCharacter::value_table() const {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(group_->q));
  for (std::int64_t a = 0; a < group_->q; ++a) out[a] = (*this)(a);
  return out;
}

DirichletCharacter DirichletCharacter::conj() const {
  const auto& gens = group_->generators;
  std::int64_t index = 0;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const std::int64_t o = gens[j].order;
    index = index * o + (o - exponents_[j]) % o;
  }
  return DirichletCharacter(group_, index);
}

std::complex<double> twisted_gauss_sum(const DirichletCharacter& chi,
                                       std::int64_t n) {
  const std::int64_t q = chi.modulus();
  const std::int64_t L = chi.root_order();
  const std::int64_t D = lcm(L, q);
  std::int64_t nm = n % q;
  if (nm < 0) nm += q;
  ComplexCompensatedSum sum;
  for (std::int64_t a = 1; a < q; ++a) {
    const std::int64_t k = chi.value_exponent(a);
    if (k < 0) continue;
    const std::int64_t phase = (k * (D / L) + (a * nm % q) * (D / q)) % D;
    sum += unit_root(phase, D);
  }
  return sum.value();
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
  require(chi.is_primitive(),
          "gauss_sum: character " + std::to_string(chi.index()) + " mod " +
              std::to_string(chi.modulus()) + " is not primitive (conductor " +
              std::to_string(chi.conductor()) + ")");
  return twisted_gauss_sum(chi, 1);
}

CyclotomicSum orthogonality_sum(const CharacterGroup& group, std::int64_t n) {
  CyclotomicSum sum(group.exponent());
  for (std::int64_t i = 0; i < group.order(); ++i) {
    const std::int64_t k = group.character(i).value_exponent(n);
    if (k >= 0) sum.add(k);
  }
  return sum;
}

}  // namespace hecke
