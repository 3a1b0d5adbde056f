#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "hecke/arith.h"
#include "hecke/cli.h"
#include "hecke/eigenform.h"
#include "hecke/error.h"
#include "hecke/moments.h"

using namespace hecke;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) v.push_back(c);
  return v;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("hecke_cli_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// Keeps sieve construction cheap for tests that do not need many primes.
const std::vector<std::string> kSmall = {"--sieve-limit", "200000"};

std::vector<std::string> with_small(std::vector<std::string> args) {
  args.insert(args.begin(), kSmall.begin(), kSmall.end());
  return args;
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(1.0), "1.0");
  EXPECT_EQ(format_double(-24.0), "-24.0");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1e300), "1e+300");
  EXPECT_EQ(format_double(0.5303300858899106), "0.5303300858899106");
  for (double x : {1.0 / 3.0, 2.718281828459045, 123456789.125, 5e-324}) {
    const auto text = format_double(x);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    EXPECT_EQ(back, x) << text;
  }
}

TEST(Cli, EigenvaluesFirstRow) {
  const auto r = invoke(with_small({"eigenvalues", "--n", "10"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 11u);
  EXPECT_EQ(ls[0], "n,tau,lambda");
  EXPECT_EQ(ls[1], "1,1,1.0");
  EXPECT_EQ(split(ls[2])[1], "-24");
}

TEST(Cli, MomentsFixedMatchesLibrary) {
  const auto r = invoke(with_small({"moments-fixed", "--q", "5", "--y", "3", "--m", "1"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "family,q_or_X,Y,m,U,count,measured,envelope,ratio");
  const auto cells = split(ls[1]);
  ASSERT_EQ(cells.size(), 9u);
  EXPECT_EQ(cells[0], "fixed_mod");
  EXPECT_EQ(cells[4], "none");
  EXPECT_EQ(cells[5], "3");
  const PrimeSieve sieve(1000);
  const auto expect = moment_fixed_mod(5, 3, 1.0, EigenformTable::build(100), sieve);
  EXPECT_EQ(std::stod(cells[6]), expect.measured);
}

TEST(Cli, PrSumEvenVanishes) {
  const auto r = invoke(with_small({"verify-prsum", "--x", "1000", "--n", "2"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "X,n,k,U,lhs,main_term,error,tail_bound");
  EXPECT_EQ(split(ls[1])[4], "0.0");
}

TEST(Cli, RepeatedMAndSmoothing) {
  const auto r = invoke(with_small(
      {"moments-quad", "--x", "300", "--y", "200", "--m", "1", "--m", "2", "--U", "default"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(split(ls[1])[4], "4.0");
  EXPECT_EQ(split(ls[2])[3], "2.0");
}

TEST(Cli, JsonOutput) {
  const auto r = invoke(with_small({"--format", "json", "eigenvalues", "--n", "3"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_EQ(doc[0]["n"], 1);
  EXPECT_EQ(doc[0]["tau"], "1");
  EXPECT_EQ(doc[1]["lambda"].get<double>(), EigenformTable::build(3).lambda(2));
}

TEST(Cli, CharactersTable) {
  const auto r = invoke(with_small({"characters", "--q", "8"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[0], "q,index,exponents,conductor,primitive,quadratic,parity,order");
  EXPECT_EQ(ls[1], "8,0,0;0,1,0,1,even,1");
  const auto p = invoke(with_small({"characters", "--q", "8", "--primitive-only"}));
  EXPECT_EQ(lines(p.out).size(), 3u);
}

TEST(Cli, OtherSubcommandsRun) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"lvalues", "--q", "7", "--t", "1"},
           {"lvalues", "--family", "quadratic", "--d", "3"},
           {"lvalues", "--family", "sym2", "--sigma", "2"},
           {"lvalues", "--family", "trivial", "--sigma", "2"},
           {"majorant", "--q", "13"},
           {"verify-cancel", "--q", "7", "--x", "1000"},
           {"verify-cancel", "--q", "7", "--x", "1000", "--variant", "sym2", "--index", "2"},
           {"fit", "--family", "fixed", "--moduli", "31,61,101", "--m", "2"}}) {
    const auto r = invoke(with_small(args));
    EXPECT_EQ(r.code, 0) << args[0] << ": " << r.err;
    EXPECT_GE(lines(r.out).size(), 2u) << args[0];
  }
}

TEST(Cli, FitFromCsv) {
  const auto dir = scratch("fit");
  std::vector<std::string> files;
  for (const char* q : {"31", "61", "101", "211"}) {
    const auto path = (dir / (std::string(q) + ".csv")).string();
    const auto r = invoke(with_small({"--out", path, "moments-fixed", "--q", q, "--y", q, "--m", "2"}));
    ASSERT_EQ(r.code, 0) << r.err;
    files.push_back(path);
  }
  std::vector<std::string> args = with_small({"fit"});
  for (const auto& f : files) {
    args.push_back("--input");
    args.push_back(f);
  }
  const auto from_csv = invoke(args);
  ASSERT_EQ(from_csv.code, 0) << from_csv.err;
  const auto direct = invoke(with_small({"fit", "--family", "fixed", "--moduli", "31,61,101,211", "--m", "2"}));
  ASSERT_EQ(direct.code, 0) << direct.err;
  // Same data through the CSV round trip gives the same fit up to rounding
  // of the log exponent.
  const auto a = split(lines(from_csv.out)[1]), b = split(lines(direct.out)[1]);
  EXPECT_EQ(a[2], "4");
  EXPECT_NEAR(std::stod(a[3]), std::stod(b[3]), 1e-9);
  std::filesystem::remove_all(dir);
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"eigenvalues", "--bogus"},
           {"eigenvalues", "--n", "abc"},
           {"moments-fixed", "--q", "5"},
           {"--format", "xml", "eigenvalues"}}) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? "" : args[0]);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
  }
}

TEST(Cli, PreconditionsExitOne) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"moments-fixed", "--q", "5", "--y", "6", "--m", "1"},
           {"moments-fixed", "--q", "5", "--y", "3", "--m", "1", "--U", "2"},
           {"verify-cancel", "--q", "7", "--x", "1000", "--index", "0"},
           {"--threads", "0", "eigenvalues"},
           {"lvalues", "--q", "9", "--index", "3"}}) {
    const auto r = invoke(with_small(args));
    EXPECT_EQ(r.code, 1) << args[0];
    EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
  }
}

TEST(Cli, HelpExitsZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("moments-fixed"), std::string::npos);
}

TEST(Cli, ConfigFileAndPrecedence) {
  const auto dir = scratch("config");
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "# comment\nsieve_limit = 100000\noutput_format=json\n";
  auto r = invoke({"--config", cfg.string(), "eigenvalues", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.front(), '[');
  // Flags override the file.
  r = invoke({"--config", cfg.string(), "--format", "csv", "eigenvalues", "--n", "2"});
  EXPECT_EQ(lines(r.out)[0], "n,tau,lambda");
  std::ofstream(cfg) << "colour=blue\n";
  EXPECT_EQ(invoke({"--config", cfg.string(), "eigenvalues"}).code, 1);
  std::ofstream(cfg) << "threads=many\n";
  EXPECT_EQ(invoke({"--config", cfg.string(), "eigenvalues"}).code, 1);
  std::filesystem::remove_all(dir);
}

TEST(Cli, CacheDirFromEnvironment) {
  const auto dir = scratch("cache");
  ::setenv("HECKE_CACHE_DIR", dir.c_str(), 1);
  const auto r = invoke(with_small({"--eigenform-n", "500", "eigenvalues", "--n", "3"}));
  ::unsetenv("HECKE_CACHE_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(table_cache_path(dir, 500)));
  std::filesystem::remove_all(dir);
}

TEST(Cli, OutputFileAndDeterminism) {
  const auto dir = scratch("det");
  std::vector<std::string> contents;
  for (const char* threads : {"1", "4", "8"}) {
    const auto path = (dir / (std::string("t") + threads + ".csv")).string();
    const auto r = invoke(with_small({"--threads", threads, "--out", path, "moments-fixed", "--q",
                                      "401", "--y", "401", "--m", "1", "--m", "3", "--U", "6"}));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path, std::ios::binary);
    contents.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  EXPECT_EQ(contents[0], contents[1]);
  EXPECT_EQ(contents[0], contents[2]);
  std::filesystem::remove_all(dir);
}
