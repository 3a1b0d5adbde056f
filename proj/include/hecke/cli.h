#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hecke {

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  std::int64_t sieve_limit = 10'000'000;
  std::int64_t eigenform_N = 20'000;
  std::string cache_dir;  // empty: no disk cache
  int threads = 1;
  OutputFormat output_format = OutputFormat::kCsv;

  // Applies key=value lines ('#' starts a comment). Unknown keys and
  // malformed values throw PreconditionError.
  void apply_file(const std::string& path);
  void apply(const std::string& key, const std::string& value);
  void validate() const;
};

// Shortest round-trip decimal; integral values keep a trailing ".0".
std::string format_double(double x);

// A result table: fixed column order, cells printed as given.
class ResultTable {
 public:
  using Cell = std::variant<std::int64_t, double, std::string>;

  explicit ResultTable(std::vector<std::string> columns);
  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }

  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Entry point behind the hecke executable. args excludes the program name.
// Exit codes: 0 success, 1 rejected precondition, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hecke
