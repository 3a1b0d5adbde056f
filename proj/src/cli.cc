#include "hecke/cli.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hecke/arith.h"
#include "hecke/dirichlet.h"
#include "hecke/eigenform.h"
#include "hecke/error.h"
#include "hecke/lfunc.h"
#include "hecke/moments.h"

namespace hecke {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::int64_t v = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  require(ec == std::errc() && ptr == end,
          "config: " + key + " expects an integer, got '" + value + "'");
  return v;
}

std::string join_exponents(const DirichletCharacter& chi) {
  std::string out;
  for (std::int64_t e : chi.exponents()) {
    if (!out.empty()) out += ';';
    out += std::to_string(e);
  }
  return out;
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
  if (key == "sieve_limit") {
    sieve_limit = parse_int(key, value);
  } else if (key == "eigenform_N") {
    eigenform_N = parse_int(key, value);
  } else if (key == "cache_dir") {
    cache_dir = value;
  } else if (key == "threads") {
    threads = static_cast<int>(parse_int(key, value));
  } else if (key == "output_format") {
    require(value == "csv" || value == "json",
            "config: output_format must be csv or json, got '" + value + "'");
    output_format = value == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
  } else {
    throw PreconditionError("config: unknown key '" + key + "'");
  }
}

void RunConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos,
            "config: " + path + ":" + std::to_string(lineno) + ": expected key=value");
    apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void RunConfig::validate() const {
  require(sieve_limit >= 2, "sieve_limit must be at least 2");
  require(eigenform_N >= 1, "eigenform_N must be positive");
  require(threads >= 1, "threads must be positive");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

ResultTable::ResultTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<Cell> row) {
  require(row.size() == columns_.size(), "result row has the wrong width");
  rows_.push_back(std::move(row));
}

void ResultTable::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    out << (i ? "," : "") << columns_[i];
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_double(v);
            } else {
              out << v;
            }
          },
          row[i]);
    }
    out << '\n';
  }
}

void ResultTable::write_json(std::ostream& out) const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[columns_[i]] = v; }, row[i]);
    }
    doc.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

namespace {

struct Context {
  RunConfig config;
  std::optional<PrimeSieve> sieve;
  std::optional<EigenformTable> table;

  const PrimeSieve& primes() {
    if (!sieve) sieve.emplace(config.sieve_limit);
    return *sieve;
  }
  const EigenformTable& eigenform(std::int64_t needed) {
    const std::int64_t N = std::max(config.eigenform_N, needed);
    if (!table || table->size() < N) table.emplace(load_or_build_table(N, config.cache_dir));
    return *table;
  }
};

std::vector<DirichletCharacter> select_characters(const CharacterGroup& group,
                                                  std::int64_t index, bool primitive_only) {
  if (index >= 0) return {group.character(index)};
  return primitive_only ? group.primitive_characters() : group.characters();
}

ResultTable moment_table(const std::vector<MomentReport>& reports) {
  ResultTable t({"family", "q_or_X", "Y", "m", "U", "count", "measured", "envelope", "ratio"});
  for (const auto& r : reports) {
    ResultTable::Cell u = std::string("none");
    if (r.U) u = *r.U;
    t.add_row({to_string(r.family), r.modulus, r.Y, r.m, u, r.count, r.measured,
               r.envelope, r.ratio});
  }
  return t;
}

// --U: absent means unsmoothed, "default" picks clamp(modulus^0.2, 4, 100).
std::optional<SmoothingKernel> kernel_from(const std::string& spec, double modulus) {
  if (spec.empty() || spec == "none") return std::nullopt;
  if (spec == "default") return SmoothingKernel(SmoothingKernel::default_U(modulus));
  double U = 0.0;
  const auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), U);
  require(ec == std::errc() && ptr == spec.data() + spec.size(),
          "--U expects a number, 'default' or 'none', got '" + spec + "'");
  return SmoothingKernel(U);
}

std::vector<MomentReport> read_moment_csv(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "fit: cannot open " + path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) &&
              line == "family,q_or_X,Y,m,U,count,measured,envelope,ratio",
          "fit: " + path + " is not a moments CSV");
  std::vector<MomentReport> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    require(f.size() == 9, "fit: malformed row in " + path);
    MomentReport r;
    r.family = f[0] == "quadratic" ? Family::kQuadratic : Family::kFixedMod;
    r.modulus = std::stoll(f[1]);
    r.Y = std::stoll(f[2]);
    r.m = std::stod(f[3]);
    if (f[4] != "none") r.U = std::stod(f[4]);
    r.count = std::stoll(f[5]);
    r.measured = std::stod(f[6]);
    r.envelope = std::stod(f[7]);
    r.ratio = std::stod(f[8]);
    // The envelope fixes the log exponent: envelope = base * Y^m * (log Q)^E.
    const double Q = static_cast<double>(r.modulus);
    const double base = r.family == Family::kFixedMod
                            ? static_cast<double>(euler_phi(r.modulus))
                            : Q;
    r.log_exponent = (std::log(r.envelope) - std::log(base) -
                      r.m * std::log(static_cast<double>(r.Y))) /
                     std::log(std::log(Q));
    out.push_back(r);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hecke eigenvalues, twisted L-functions and moment sums of Delta"};
  app.name("hecke");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::int64_t sieve_limit = 0, eigenform_N = 0;
  std::string cache_dir, format, out_path;
  int threads = 0;
  app.add_option("--config", config_file, "key=value configuration file");
  auto* o_sieve = app.add_option("--sieve-limit", sieve_limit, "prime sieve limit");
  auto* o_N = app.add_option("--eigenform-n", eigenform_N, "minimum eigenform table size");
  auto* o_cache = app.add_option("--cache-dir", cache_dir, "eigenform table cache directory");
  auto* o_threads = app.add_option("--threads", threads, "worker threads");
  auto* o_format = app.add_option("--format", format, "csv or json")
                       ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write results to this file instead of stdout");

  // eigenvalues
  auto* c_eig = app.add_subcommand("eigenvalues", "tau(n) and lambda(n) for n <= N");
  std::int64_t eig_n = 10;
  c_eig->add_option("--n", eig_n, "number of rows")->check(CLI::PositiveNumber);

  // characters
  auto* c_chars = app.add_subcommand("characters", "the character group mod q");
  std::int64_t chars_q = 0;
  bool chars_primitive = false;
  c_chars->add_option("--q", chars_q, "modulus")->required();
  c_chars->add_flag("--primitive-only", chars_primitive, "list primitive characters only");

  // lvalues
  auto* c_l = app.add_subcommand("lvalues", "L(s, f x chi) or L(s, sym^2 f)");
  std::string l_family = "dirichlet";
  std::int64_t l_q = 0, l_d = 0, l_index = -1;
  double l_sigma = 0.5, l_t = 0.0;
  c_l->add_option("--family", l_family, "dirichlet, quadratic, trivial or sym2")
      ->check(CLI::IsMember({"dirichlet", "quadratic", "trivial", "sym2"}));
  c_l->add_option("--q", l_q, "modulus (dirichlet family)");
  c_l->add_option("--d", l_d, "odd square-free d (quadratic family, chi^(8d))");
  c_l->add_option("--index", l_index, "single character index (default: all primitive)");
  c_l->add_option("--sigma", l_sigma, "Re s");
  c_l->add_option("--t", l_t, "Im s");

  // majorant
  auto* c_maj = app.add_subcommand("majorant", "GRH majorant for log |L(1/2+it, f x chi)|");
  std::int64_t maj_q = 0, maj_index = -1;
  double maj_t = 0.0, maj_x = 0.0, maj_A = 1.0;
  std::string maj_variant = "auto";
  c_maj->add_option("--q", maj_q, "modulus")->required();
  c_maj->add_option("--index", maj_index, "single character index (default: all primitive)");
  c_maj->add_option("--t", maj_t, "shift t");
  c_maj->add_option("--x", maj_x, "prime-sum length (default q)");
  c_maj->add_option("--A", maj_A, "shift exponent bound A");
  c_maj->add_option("--variant", maj_variant, "auto, general or nonquadratic")
      ->check(CLI::IsMember({"auto", "general", "nonquadratic"}));

  // moments-fixed
  auto* c_mf = app.add_subcommand("moments-fixed", "S_m(q, Y) over primitive characters mod q");
  std::int64_t mf_q = 0, mf_y = 0;
  std::vector<double> mf_m;
  std::string mf_U;
  bool mf_all = false;
  c_mf->add_option("--q", mf_q, "modulus")->required();
  c_mf->add_option("--y", mf_y, "inner sum length Y <= q")->required();
  c_mf->add_option("--m", mf_m, "moment exponent(s)")->required();
  c_mf->add_option("--U", mf_U, "smoothing parameter, 'default' or 'none'");
  c_mf->add_flag("--all-characters", mf_all, "diagnostic: sum over every character mod q");

  // moments-quad
  auto* c_mq = app.add_subcommand("moments-quad", "T_m(X, Y) over odd square-free d <= X");
  std::int64_t mq_x = 0, mq_y = 0;
  std::vector<double> mq_m;
  std::string mq_U;
  int mq_k = 1;
  double mq_eps = 0.0;
  c_mq->add_option("--x", mq_x, "family size X")->required();
  c_mq->add_option("--y", mq_y, "inner sum length Y <= X")->required();
  c_mq->add_option("--m", mq_m, "moment exponent(s)")->required();
  c_mq->add_option("--U", mq_U, "smoothing parameter, 'default' or 'none'");
  c_mq->add_option("--k", mq_k, "k in the envelope exponent E(m, k, eps)");
  c_mq->add_option("--epsilon", mq_eps, "eps in the envelope exponent E(m, k, eps)");

  // verify-prsum
  auto* c_pr = app.add_subcommand("verify-prsum", "smoothed quadratic character sum vs main term");
  std::int64_t pr_x = 0, pr_n = 0;
  double pr_k = 0.0;
  std::string pr_U = "default";
  c_pr->add_option("--x", pr_x, "X")->required();
  c_pr->add_option("--n", pr_n, "n")->required();
  c_pr->add_option("--k", pr_k, "power of A(d)^-1");
  c_pr->add_option("--U", pr_U, "smoothing parameter or 'default'");

  // verify-cancel
  auto* c_vc = app.add_subcommand("verify-cancel", "prime sums twisted by a character");
  std::int64_t vc_q = 0, vc_index = -1;
  double vc_t0 = 0.0, vc_x = 0.0;
  std::string vc_variant = "plain";
  c_vc->add_option("--q", vc_q, "modulus")->required();
  c_vc->add_option("--index", vc_index, "character index (default: every non-principal)");
  c_vc->add_option("--t0", vc_t0, "shift t0");
  c_vc->add_option("--x", vc_x, "prime bound x")->required();
  c_vc->add_option("--variant", vc_variant, "plain or sym2")
      ->check(CLI::IsMember({"plain", "sym2"}));

  // fit
  auto* c_fit = app.add_subcommand("fit", "fit the log-power exponent of moment sweeps");
  std::vector<std::string> fit_inputs;
  std::string fit_family;
  std::vector<std::int64_t> fit_moduli;
  double fit_m = 0.0;
  c_fit->add_option("--input", fit_inputs, "moments CSV file(s) to fit");
  c_fit->add_option("--family", fit_family, "fixed or quadratic (run a sweep)")
      ->check(CLI::IsMember({"fixed", "quadratic"}));
  c_fit->add_option("--moduli", fit_moduli, "moduli q or X for the sweep (Y = modulus)")
      ->delimiter(',');
  c_fit->add_option("--m", fit_m, "moment exponent for the sweep");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    Context ctx;
    if (!config_file.empty()) ctx.config.apply_file(config_file);
    if (const char* env = std::getenv("HECKE_CACHE_DIR"); env != nullptr) {
      ctx.config.cache_dir = env;
    }
    if (o_sieve->count()) ctx.config.sieve_limit = sieve_limit;
    if (o_N->count()) ctx.config.eigenform_N = eigenform_N;
    if (o_cache->count()) ctx.config.cache_dir = cache_dir;
    if (o_threads->count()) ctx.config.threads = threads;
    if (o_format->count()) ctx.config.output_format =
        format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
    ctx.config.validate();
    const int nthreads = ctx.config.threads;

    std::optional<ResultTable> result;

    if (c_eig->parsed()) {
      const auto& table = ctx.eigenform(eig_n);
      ResultTable t({"n", "tau", "lambda"});
      for (std::int64_t n = 1; n <= eig_n; ++n) {
        t.add_row({n, to_string(table.tau(n)), table.lambda(n)});
      }
      result = std::move(t);
    } else if (c_chars->parsed()) {
      const CharacterGroup group(chars_q, ctx.primes());
      ResultTable t({"q", "index", "exponents", "conductor", "primitive", "quadratic",
                     "parity", "order"});
      for (const auto& chi : select_characters(group, -1, chars_primitive)) {
        t.add_row({chars_q, chi.index(), join_exponents(chi), chi.conductor(),
                   std::int64_t{chi.is_primitive()}, std::int64_t{chi.is_quadratic()},
                   std::string(chi.is_even() ? "even" : "odd"), chi.order()});
      }
      result = std::move(t);
    } else if (c_l->parsed()) {
      const std::complex<double> s(l_sigma, l_t);
      ResultTable t({"family", "modulus", "index", "exponents", "re_s", "im_s", "re_L",
                     "im_L", "abs_L", "error"});
      auto emit = [&](const std::string& fam, std::int64_t mod, std::int64_t idx,
                      const std::string& ex, const LValue& v) {
        t.add_row({fam, mod, idx, ex, s.real(), s.imag(), v.value.real(), v.value.imag(),
                   std::abs(v.value), v.error_estimate});
      };
      if (l_family == "sym2") {
        const auto& table = ctx.eigenform(0);
        emit("sym2", 1, 0, "", l_sym_square(s, table));
      } else if (l_family == "trivial") {
        emit("trivial", 1, 0, "", l_twisted(s, Twist::trivial(), ctx.eigenform(0)));
      } else if (l_family == "quadratic") {
        require(l_d >= 1, "lvalues: --d is required for the quadratic family");
        const auto twist = Twist::kronecker_8d(l_d);
        emit("quadratic", 8 * l_d, l_d, "", l_twisted(s, twist, ctx.eigenform(0)));
      } else {
        require(l_q >= 3, "lvalues: --q >= 3 is required for the dirichlet family");
        const CharacterGroup group(l_q, ctx.primes());
        const auto& table = ctx.eigenform(0);
        const TwistedLSeries series(l_q, s, table);
        for (const auto& chi : select_characters(group, l_index, true)) {
          emit("dirichlet", l_q, chi.index(), join_exponents(chi),
               series.evaluate(Twist::from_character(chi)));
        }
      }
      result = std::move(t);
    } else if (c_maj->parsed()) {
      const double x = maj_x > 0.0 ? maj_x : static_cast<double>(maj_q);
      const CharacterGroup group(maj_q, ctx.primes());
      const auto& table = ctx.eigenform(static_cast<std::int64_t>(x));
      const TwistedLSeries series(maj_q, {0.5, maj_t}, table);
      ResultTable t({"q", "index", "exponents", "variant", "t", "x", "prime_sum",
                     "square_sum", "conductor_term", "majorant", "log_abs_L",
                     "l_error"});
      for (const auto& chi : select_characters(group, maj_index, true)) {
        const auto twist = Twist::from_character(chi);
        MajorantVariant v = MajorantVariant::kGeneral;
        if (maj_variant == "nonquadratic" ||
            (maj_variant == "auto" && !chi.is_quadratic())) {
          v = MajorantVariant::kNonQuadratic;
        }
        const auto m = log_l_majorant(twist, maj_t, x, static_cast<double>(maj_q), table,
                                      ctx.primes(), v, maj_A);
        const auto L = series.evaluate(twist);
        t.add_row({maj_q, chi.index(), join_exponents(chi),
                   std::string(v == MajorantVariant::kGeneral ? "general" : "nonquadratic"),
                   maj_t, x, m.prime_sum, m.square_sum, m.conductor_term, m.value,
                   std::log(std::abs(L.value)), L.error_estimate});
      }
      result = std::move(t);
    } else if (c_mf->parsed()) {
      const auto kernel = kernel_from(mf_U, static_cast<double>(mf_q));
      MomentOptions opts;
      opts.threads = nthreads;
      opts.all_characters = mf_all;
      result = moment_table(moment_fixed_mod_sweep(mf_q, mf_y, mf_m, ctx.eigenform(mf_y),
                                                   ctx.primes(),
                                                   kernel ? &*kernel : nullptr, opts));
    } else if (c_mq->parsed()) {
      const auto kernel = kernel_from(mq_U, static_cast<double>(mq_x));
      MomentOptions opts;
      opts.threads = nthreads;
      opts.k = mq_k;
      opts.epsilon = mq_eps;
      result = moment_table(moment_quadratic_sweep(mq_x, mq_y, mq_m, ctx.eigenform(mq_y),
                                                   ctx.primes(),
                                                   kernel ? &*kernel : nullptr, opts));
    } else if (c_pr->parsed()) {
      const auto kernel = kernel_from(pr_U, static_cast<double>(pr_x));
      require(kernel.has_value(), "verify-prsum needs a smoothing kernel");
      const auto rec = verify_lemma_prsum(pr_x, pr_n, pr_k, *kernel, ctx.primes());
      ResultTable t({"X", "n", "k", "U", "lhs", "main_term", "error", "tail_bound"});
      t.add_row({pr_x, pr_n, pr_k, kernel->U(), rec.lhs, rec.main_term, rec.error,
                 rec.tail_bound});
      result = std::move(t);
    } else if (c_vc->parsed()) {
      const CharacterGroup group(vc_q, ctx.primes());
      const auto variant = vc_variant == "plain" ? CancellationVariant::kPlain
                                                 : CancellationVariant::kSymSquare;
      const auto& table =
          ctx.eigenform(variant == CancellationVariant::kSymSquare
                            ? static_cast<std::int64_t>(vc_x)
                            : 1);
      ResultTable t({"q", "index", "exponents", "variant", "t0", "x", "re_sum", "im_sum",
                     "abs_sum", "envelope", "ratio"});
      for (const auto& chi : select_characters(group, vc_index, false)) {
        if (vc_index < 0 && chi.is_principal()) continue;
        const auto rec = verify_prime_cancellation(chi, vc_t0, vc_x, table, ctx.primes(),
                                                   variant);
        t.add_row({vc_q, chi.index(), join_exponents(chi), vc_variant, vc_t0, vc_x,
                   rec.sum.real(), rec.sum.imag(), std::abs(rec.sum),
                   rec.envelope_sqrt_x, rec.ratio});
      }
      result = std::move(t);
    } else if (c_fit->parsed()) {
      std::vector<MomentReport> reports;
      for (const auto& path : fit_inputs) {
        for (auto& r : read_moment_csv(path)) reports.push_back(r);
      }
      if (!fit_family.empty()) {
        require(fit_m > 0.0, "fit: --m is required with --family");
        MomentOptions opts;
        opts.threads = nthreads;
        for (std::int64_t Q : fit_moduli) {
          const auto& table = ctx.eigenform(Q);
          reports.push_back(fit_family == "fixed"
                                ? moment_fixed_mod(Q, Q, fit_m, table, ctx.primes(),
                                                   nullptr, opts)
                                : moment_quadratic(Q, Q, fit_m, table, ctx.primes(),
                                                   nullptr, opts));
        }
      }
      const auto fit = fit_exponent(reports);
      ResultTable t({"family", "m", "points", "slope", "intercept", "r2"});
      t.add_row({to_string(reports.front().family), reports.front().m,
                 static_cast<std::int64_t>(reports.size()), fit.slope, fit.intercept,
                 fit.r2});
      result = std::move(t);
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary | std::ios::trunc);
      require(static_cast<bool>(file), "cannot write " + out_path);
      sink = &file;
    }
    if (ctx.config.output_format == OutputFormat::kJson) {
      result->write_json(*sink);
    } else {
      result->write_csv(*sink);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hecke
