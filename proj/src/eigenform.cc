#include "hecke/eigenform.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "hecke/arith.h"
#include "hecke/error.h"

namespace hecke {

namespace {

using UInt128 = unsigned __int128;

// Smallest n <= N whose coefficient bound 2 n^6 reaches 2^127, or 0.
std::int64_t first_unsafe_index(std::int64_t N) {
  const long double limit = std::ldexp(1.0L, 127);
  if (N < EigenformTable::kHardCap) return 0;
  for (std::int64_t n = EigenformTable::kHardCap - 1; n <= N; ++n) {
    const long double v = static_cast<long double>(n);
    if (2.0L * v * v * v * v * v * v >= limit) return n;
  }
  return 0;
}

bool is_prime_trial(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> divisor_counts(std::int64_t N) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t a = 1; a <= N; ++a) {
    for (std::int64_t m = a; m <= N; m += a) ++d[m];
  }
  return d;
}

// Smallest prime factor for every n <= N (spf[0] = spf[1] = 0).
std::vector<std::int32_t> smallest_factors(std::int64_t N) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t p = 2; p <= N; ++p) {
    if (spf[p] != 0) continue;
    for (std::int64_t m = p; m <= N; m += p) {
      if (spf[m] == 0) spf[m] = static_cast<std::int32_t>(p);
    }
  }
  return spf;
}

}  // namespace

std::string to_string(Int128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  UInt128 v = negative ? UInt128(0) - static_cast<UInt128>(value)
                       : static_cast<UInt128>(value);
  std::string digits;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int128 parse_int128(std::string_view text) {
  if (text.empty()) throw CacheError("empty integer field");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw CacheError("malformed integer field");
  const UInt128 limit = (UInt128(1) << 127) - (negative ? 0 : 1);
  UInt128 v = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw CacheError("malformed integer field '" + std::string(text) + "'");
    }
    if (v > (limit - static_cast<UInt128>(c - '0')) / 10) {
      throw CacheError("integer field out of 128-bit range");
    }
    v = v * 10 + static_cast<UInt128>(c - '0');
  }
  return negative ? static_cast<Int128>(UInt128(0) - v) : static_cast<Int128>(v);
}

EigenformTable::EigenformTable(std::vector<Int128> tau)
    : N_(static_cast<std::int64_t>(tau.size()) - 1), tau_(std::move(tau)) {
  tau_[0] = 0;
  lambda_.assign(tau_.size(), 0.0);
  for (std::int64_t n = 1; n <= N_; ++n) {
    const long double nn = static_cast<long double>(n);
    const long double scale = nn * nn * nn * nn * nn * std::sqrt(nn);
    lambda_[n] = static_cast<double>(static_cast<long double>(tau_[n]) / scale);
  }
}

EigenformTable EigenformTable::build(std::int64_t N) {
  require(N >= 1, "eigenform table size must be positive");
  if (const std::int64_t bad = first_unsafe_index(N); bad != 0) {
    throw OverflowError("tau(" + std::to_string(bad) +
                        ") may exceed the signed 128-bit range; table size " +
                        std::to_string(N) + " is above the hard cap " +
                        std::to_string(kHardCap - 1));
  }
  // Jacobi: prod (1 - q^n)^3 = sum_k (-1)^k (2k + 1) q^(k(k+1)/2).
  const std::size_t len = static_cast<std::size_t>(N);  // degrees 0..N-1
  std::vector<std::size_t> offsets;
  std::vector<UInt128> weights;
  for (std::int64_t k = 0; k * (k + 1) / 2 < N; ++k) {
    offsets.push_back(static_cast<std::size_t>(k * (k + 1) / 2));
    const std::int64_t w = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
    weights.push_back(static_cast<UInt128>(static_cast<Int128>(w)));
  }
  std::vector<UInt128> current(len, 0);
  for (std::size_t j = 0; j < offsets.size(); ++j) current[offsets[j]] = weights[j];

  // Seven sparse multiplications give the 24th power. Arithmetic wraps modulo
  // 2^128; the final coefficients are bounded well inside the signed range,
  // so the wrapped results are exact.
  std::vector<UInt128> next(len, 0);
  for (int power = 2; power <= 8; ++power) {
    for (std::size_t n = 0; n < len; ++n) {
      UInt128 acc = 0;
      for (std::size_t j = 0; j < offsets.size() && offsets[j] <= n; ++j) {
        acc += weights[j] * current[n - offsets[j]];
      }
      next[n] = acc;
    }
    current.swap(next);
  }

  std::vector<Int128> tau(len + 1, 0);
  for (std::size_t n = 1; n <= len; ++n) tau[n] = static_cast<Int128>(current[n - 1]);
  EigenformTable table(std::move(tau));

  const auto d = divisor_counts(N);
  for (std::int64_t n = 1; n <= N; ++n) {
    if (std::abs(table.lambda_[n]) > static_cast<double>(d[n]) + 1e-9) {
      throw OverflowError("tau(" + std::to_string(n) +
                          ") violates the coefficient bound; exact expansion "
                          "overflowed");
    }
  }
  return table;
}

EigenformTable EigenformTable::from_tau(std::vector<Int128> tau) {
  require(tau.size() >= 2, "tau table must contain at least tau(1)");
  require(static_cast<std::int64_t>(tau.size()) - 1 < kHardCap,
          "tau table exceeds the 128-bit hard cap");
  EigenformTable table(std::move(tau));
  if (table.tau_[1] != 1) throw CacheError("tau(1) must equal 1");
  if (const auto bad = find_hecke_violation(table)) {
    throw CacheError("table fails " + bad->relation + " at m = " +
                     std::to_string(bad->m) + ", n = " + std::to_string(bad->n));
  }
  return table;
}

Int128 EigenformTable::tau(std::int64_t n) const {
  require(n >= 1 && n <= N_, "tau: index " + std::to_string(n) +
                                 " outside table of size " + std::to_string(N_));
  return tau_[n];
}

double EigenformTable::lambda(std::int64_t n) const {
  require(n >= 1 && n <= N_, "lambda: index " + std::to_string(n) +
                                 " outside table of size " + std::to_string(N_));
  return lambda_[n];
}

std::optional<HeckeViolation> find_hecke_violation(const EigenformTable& table) {
  const std::int64_t N = table.size();
  const auto tau = table.tau_values();
  const auto lambda = table.lambda_values();

  if (tau[1] != 1) return HeckeViolation{"tau(1) = 1", 1, 1};

  for (std::int64_t m = 2; m * (m + 1) <= N; ++m) {
    for (std::int64_t n = m + 1; m * n <= N; ++n) {
      if (gcd(m, n) != 1) continue;
      const UInt128 lhs = static_cast<UInt128>(tau[m * n]);
      const UInt128 rhs = static_cast<UInt128>(tau[m]) * static_cast<UInt128>(tau[n]);
      if (lhs != rhs) return HeckeViolation{"multiplicativity", m, n};
    }
  }

  for (std::int64_t p = 2; p * p <= N; ++p) {
    if (!is_prime_trial(p)) continue;
    UInt128 p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= static_cast<UInt128>(p);
    std::int64_t prev = 1;  // p^(l-1)
    std::int64_t cur = p;   // p^l
    while (cur <= N / p) {
      const std::int64_t nxt = cur * p;
      const UInt128 rhs =
          static_cast<UInt128>(tau[p]) * static_cast<UInt128>(tau[cur]) -
          p11 * static_cast<UInt128>(tau[prev]);
      if (static_cast<UInt128>(tau[nxt]) != rhs) {
        return HeckeViolation{"prime-power recursion", p, nxt};
      }
      prev = cur;
      cur = nxt;
    }
  }

  const auto d = divisor_counts(N);
  if (lambda[1] != 1.0) return HeckeViolation{"lambda(1) = 1", 1, 1};
  for (std::int64_t n = 2; n <= N; ++n) {
    if (!(static_cast<double>(d[n]) - std::abs(lambda[n]) > 1e-9)) {
      return HeckeViolation{"Deligne bound", n, d[n]};
    }
  }
  return std::nullopt;
}

SatakePair satake_from_eigenvalue(double lambda_p) {
  const double disc = std::max(0.0, 4.0 - lambda_p * lambda_p);
  const double im = 0.5 * std::sqrt(disc);
  return {{0.5 * lambda_p, im}, {0.5 * lambda_p, -im}};
}

SatakePair satake(std::int64_t p, const EigenformTable& table) {
  require(p >= 2 && p <= table.size(),
          "satake: p = " + std::to_string(p) + " outside the table");
  require(is_prime_trial(p), "satake: " + std::to_string(p) + " is not prime");
  return satake_from_eigenvalue(table.lambda(p));
}

double lambda_of_square(std::int64_t n, const EigenformTable& table) {
  require(n >= 1 && n <= table.size() / n,
          "lambda_of_square: n^2 = " + std::to_string(n) + "^2 exceeds table");
  return table.lambda(n * n);
}

std::vector<double> square_argument_eigenvalues(const EigenformTable& table,
                                                std::int64_t limit) {
  require(limit >= 1 && limit <= table.size(),
          "square_argument_eigenvalues: limit exceeds table");
  const auto spf = smallest_factors(limit);
  std::vector<double> out(static_cast<std::size_t>(limit + 1), 0.0);
  out[1] = 1.0;
  for (std::int64_t n = 2; n <= limit; ++n) {
    const std::int64_t p = spf[n];
    std::int64_t rest = n;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    // lambda(p^(2e)) from lambda(p^(j+1)) = lambda(p) lambda(p^j) - lambda(p^(j-1)).
    const double lp = table.lambda(p);
    double prev = 1.0;  // lambda(p^0)
    double cur = lp;    // lambda(p^1)
    for (int j = 1; j < 2 * e; ++j) {
      const double nxt = lp * cur - prev;
      prev = cur;
      cur = nxt;
    }
    out[n] = cur * out[rest];
  }
  return out;
}

std::filesystem::path table_cache_path(const std::filesystem::path& dir,
                                       std::int64_t N) {
  return dir / ("tau-v" + std::to_string(kTableFormatVersion) + "-N" +
                std::to_string(N) + ".csv");
}

void save_table_csv(const EigenformTable& table,
                    const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << "n,tau\n";
    for (std::int64_t n = 1; n <= table.size(); ++n) {
      out << n << ',' << to_string(table.tau(n)) << '\n';
    }
    if (!out) throw CacheError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

EigenformTable load_table_csv(const std::filesystem::path& path,
                              std::int64_t expected_N) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "n,tau") {
    throw CacheError(path.string() + ": missing 'n,tau' header");
  }
  std::vector<Int128> tau{0};
  tau.reserve(static_cast<std::size_t>(expected_N + 1));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw CacheError(path.string() + ": bad row");
    const Int128 n = parse_int128(std::string_view(line).substr(0, comma));
    if (n != static_cast<Int128>(tau.size())) {
      throw CacheError(path.string() + ": rows out of order at n = " + to_string(n));
    }
    tau.push_back(parse_int128(std::string_view(line).substr(comma + 1)));
  }
  if (static_cast<std::int64_t>(tau.size()) - 1 != expected_N) {
    throw CacheError(path.string() + ": expected " + std::to_string(expected_N) +
                     " rows, found " + std::to_string(tau.size() - 1));
  }
  return EigenformTable::from_tau(std::move(tau));
}

EigenformTable load_or_build_table(std::int64_t N,
                                   const std::filesystem::path& dir) {
  if (dir.empty()) return EigenformTable::build(N);
  const auto path = table_cache_path(dir, N);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      return load_table_csv(path, N);
    } catch (const CacheError&) {
      // Stale or corrupt; rebuilt below.
    }
  }
  auto table = EigenformTable::build(N);
  try {
    save_table_csv(table, path);
  } catch (const std::exception&) {
    // A read-only cache directory is not fatal.
  }
  return table;
}

}  // namespace hecke
