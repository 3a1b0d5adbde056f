#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hecke {

using Int128 = __int128;

std::string to_string(Int128 value);
Int128 parse_int128(std::string_view text);

// Fourier coefficients of the weight-12 discriminant form: exact tau(n) and
// the normalized Hecke eigenvalues lambda(n) = tau(n) / n^(11/2).
// Arrays are indexed by n; entry 0 is unused and holds zero.
class EigenformTable {
 public:
  static constexpr int kWeight = 12;
  static constexpr std::int64_t kDefaultSize = 20'000;
  // tau(n) is guaranteed to fit in a signed 128-bit integer below this bound
  // (|tau(n)| <= d(n) n^(11/2) <= 2 n^6 < 2^127).
  static constexpr std::int64_t kHardCap = std::int64_t{1} << 21;

  // Expands q * prod (1 - q^n)^24 from the sparse Jacobi series for
  // prod (1 - q^n)^3. Throws OverflowError naming the first n whose
  // coefficient bound would not fit in 128 bits.
  static EigenformTable build(std::int64_t N);

  // Wraps externally supplied tau values (tau[0] ignored) after validating
  // tau(1) = 1, the Deligne bound and the Hecke relations.
  static EigenformTable from_tau(std::vector<Int128> tau);

  std::int64_t size() const { return N_; }
  Int128 tau(std::int64_t n) const;
  double lambda(std::int64_t n) const;

  std::span<const Int128> tau_values() const { return tau_; }
  std::span<const double> lambda_values() const { return lambda_; }

 private:
  EigenformTable(std::vector<Int128> tau);

  std::int64_t N_ = 0;
  std::vector<Int128> tau_;
  std::vector<double> lambda_;
};

struct HeckeViolation {
  std::string relation;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

// Checks tau(mn) = tau(m) tau(n) for coprime m, n and
// tau(p^(l+1)) = tau(p) tau(p^l) - p^11 tau(p^(l-1)) exactly, plus the Deligne
// bound |lambda(n)| <= d(n). Returns the first violation found, if any.
std::optional<HeckeViolation> find_hecke_violation(const EigenformTable& table);

// Satake parameters at p: the roots of z^2 - lambda(p) z + 1, with alpha the
// root of non-negative imaginary part.
struct SatakePair {
  std::complex<double> alpha;
  std::complex<double> beta;
};

// Throws PreconditionError unless p is a prime covered by the table.
SatakePair satake(std::int64_t p, const EigenformTable& table);
SatakePair satake_from_eigenvalue(double lambda_p);

// lambda(n^2) read from the table; requires n^2 <= table.size().
double lambda_of_square(std::int64_t n, const EigenformTable& table);

// lambda(n^2) for every n <= limit, obtained from the table's lambda(p) via
// the Hecke recursion lambda(p^(j+1)) = lambda(p) lambda(p^j) - lambda(p^(j-1)).
// Requires limit <= table.size(). Entry 0 is unused.
std::vector<double> square_argument_eigenvalues(const EigenformTable& table,
                                                std::int64_t limit);

// CSV cache with header "n,tau", tau as decimal strings. The loader
// re-derives lambda and re-validates the table.
inline constexpr int kTableFormatVersion = 1;

std::filesystem::path table_cache_path(const std::filesystem::path& dir,
                                       std::int64_t N);
void save_table_csv(const EigenformTable& table,
                    const std::filesystem::path& path);
EigenformTable load_table_csv(const std::filesystem::path& path,
                              std::int64_t expected_N);

// Loads the cached table of size N from `dir` if present and valid,
// otherwise builds it and (when `dir` is non-empty) writes the cache.
EigenformTable load_or_build_table(std::int64_t N,
                                   const std::filesystem::path& dir);

}  // namespace hecke
