#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hecke/arith.h"
#include "hecke/dirichlet.h"
#include "hecke/eigenform.h"
#include "hecke/error.h"
#include "hecke/lfunc.h"
#include "hecke/moments.h"

namespace py = pybind11;
using namespace hecke;
using cd = std::complex<double>;

namespace {

// Python ints are arbitrary precision; go through the decimal string.
py::int_ to_pyint(Int128 v) {
  return py::int_(py::reinterpret_steal<py::object>(
      PyLong_FromString(to_string(v).c_str(), nullptr, 10)));
}

template <class T>
std::vector<T> to_vector(std::span<const T> s) {
  return {s.begin(), s.end()};
}

std::unique_ptr<SmoothingKernel> kernel_from(std::optional<double> U) {
  return U ? std::make_unique<SmoothingKernel>(*U) : nullptr;
}

MomentOptions options_from(int threads, int k, double epsilon, bool all_characters) {
  MomentOptions o;
  o.threads = threads;
  o.k = k;
  o.epsilon = epsilon;
  o.all_characters = all_characters;
  return o;
}

}  // namespace

PYBIND11_MODULE(_hecke, m) {
  m.doc() = "Hecke eigenvalues of Delta, Dirichlet characters, L-values and moment sums";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);
  py::register_exception<CacheError>(m, "CacheError", PyExc_RuntimeError);

  py::class_<PrimeSieve>(m, "PrimeSieve")
      .def(py::init<std::int64_t>(), py::arg("limit") = PrimeSieve::kDefaultLimit)
      .def_property_readonly("limit", &PrimeSieve::limit)
      .def("is_prime", &PrimeSieve::is_prime)
      .def("primes_up_to",
           [](const PrimeSieve& s, double x) { return to_vector(s.primes_up_to(x)); })
      .def("factor", [](const PrimeSieve& s, std::int64_t n) {
        std::vector<std::pair<std::int64_t, int>> out;
        for (const auto& pp : s.factor(n)) out.emplace_back(pp.prime, pp.exponent);
        return out;
      });

  m.def("kronecker", &kronecker);
  m.def("jacobi", &jacobi);
  m.def("euler_phi", &euler_phi);

  py::class_<EigenformTable>(m, "EigenformTable")
      .def_static("build", &EigenformTable::build, py::arg("N"))
      .def_static("load_or_build", &load_or_build_table, py::arg("N"),
                  py::arg("cache_dir") = std::filesystem::path())
      .def_property_readonly("size", &EigenformTable::size)
      .def("tau", [](const EigenformTable& t, std::int64_t n) { return to_pyint(t.tau(n)); })
      .def("lambda_", &EigenformTable::lambda, py::arg("n"))
      .def("lambdas", [](const EigenformTable& t) { return to_vector(t.lambda_values()); })
      .def("__len__", &EigenformTable::size);
  m.def("hecke_violation", [](const EigenformTable& t) -> std::optional<py::tuple> {
    const auto v = find_hecke_violation(t);
    if (!v) return std::nullopt;
    return py::make_tuple(v->relation, v->m, v->n);
  });
  m.def("lambda_of_square", &lambda_of_square);

  py::class_<DirichletCharacter>(m, "DirichletCharacter")
      .def_property_readonly("modulus", &DirichletCharacter::modulus)
      .def_property_readonly("index", &DirichletCharacter::index)
      .def_property_readonly("exponents",
                             [](const DirichletCharacter& c) { return to_vector(c.exponents()); })
      .def_property_readonly("conductor", &DirichletCharacter::conductor)
      .def_property_readonly("order", &DirichletCharacter::order)
      .def("is_primitive", &DirichletCharacter::is_primitive)
      .def("is_principal", &DirichletCharacter::is_principal)
      .def("is_quadratic", &DirichletCharacter::is_quadratic)
      .def("is_even", &DirichletCharacter::is_even)
      .def("value_exponent", &DirichletCharacter::value_exponent)
      .def_property_readonly("root_order", &DirichletCharacter::root_order)
      .def("__call__", &DirichletCharacter::operator())
      .def("conj", &DirichletCharacter::conj)
      .def("__repr__", [](const DirichletCharacter& c) {
        std::string e;
        for (auto x : c.exponents()) e += (e.empty() ? "" : ",") + std::to_string(x);
        return "<DirichletCharacter q=" + std::to_string(c.modulus()) + " exponents=(" + e + ")>";
      });

  py::class_<CharacterGroup>(m, "CharacterGroup")
      .def(py::init<std::int64_t, const PrimeSieve&>(), py::arg("q"), py::arg("sieve"))
      .def_property_readonly("modulus", &CharacterGroup::modulus)
      .def_property_readonly("order", &CharacterGroup::order)
      .def_property_readonly("exponent", &CharacterGroup::exponent)
      .def("character", py::overload_cast<std::int64_t>(&CharacterGroup::character, py::const_))
      .def("character_by_exponents",
           [](const CharacterGroup& g, const std::vector<std::int64_t>& e) {
             return g.character(std::span<const std::int64_t>(e));
           })
      .def("characters", &CharacterGroup::characters)
      .def("primitive_characters", &CharacterGroup::primitive_characters);
  m.def("gauss_sum", &gauss_sum);
  m.def("twisted_gauss_sum", &twisted_gauss_sum);

  py::class_<Twist>(m, "Twist")
      .def_static("trivial", &Twist::trivial)
      .def_static("from_character", &Twist::from_character)
      .def_static("kronecker_8d", &Twist::kronecker_8d, py::arg("d"))
      .def_property_readonly("modulus", &Twist::modulus)
      .def("__call__", &Twist::operator())
      .def("is_quadratic", &Twist::is_quadratic)
      .def("root_number", &Twist::root_number);

  py::class_<LValue>(m, "LValue")
      .def_readonly("value", &LValue::value)
      .def_readonly("error_estimate", &LValue::error_estimate)
      .def_readonly("terms", &LValue::terms);
  m.def("l_twisted", &l_twisted, py::arg("s"), py::arg("chi"), py::arg("table"),
        py::arg("cutoff") = 0);
  m.def("l_sym_square", &l_sym_square, py::arg("s"), py::arg("table"));
  m.def("zeta", &zeta);
  m.def("log_lambda0", &log_lambda0);

  py::enum_<MajorantVariant>(m, "MajorantVariant")
      .value("GENERAL", MajorantVariant::kGeneral)
      .value("NONQUADRATIC", MajorantVariant::kNonQuadratic)
      .value("QUADRATIC", MajorantVariant::kQuadratic);
  py::class_<MajorantValue>(m, "MajorantValue")
      .def_readonly("value", &MajorantValue::value)
      .def_readonly("prime_sum", &MajorantValue::prime_sum)
      .def_readonly("square_sum", &MajorantValue::square_sum)
      .def_readonly("conductor_term", &MajorantValue::conductor_term);
  m.def("log_l_majorant", &log_l_majorant, py::arg("chi"), py::arg("t"), py::arg("x"),
        py::arg("Q"), py::arg("table"), py::arg("sieve"),
        py::arg("variant") = MajorantVariant::kGeneral, py::arg("A") = 1.0);

  py::class_<PrimeSumIdentity>(m, "PrimeSumIdentity")
      .def_readonly("prime_sum", &PrimeSumIdentity::prime_sum)
      .def_readonly("log_abs_value", &PrimeSumIdentity::log_abs_value)
      .def_readonly("gap", &PrimeSumIdentity::gap);
  m.def("zeta_prime_sum_identity", &zeta_prime_sum_identity);
  m.def("sym_square_prime_sum_identity",
        [](double x, double alpha, const PrimeSieve& sieve, const EigenformTable& table) {
          return sym_square_prime_sum_identity(x, alpha, sieve, table, SymSquareSeries(table));
        });

  py::class_<SmoothingKernel>(m, "SmoothingKernel")
      .def(py::init<double>(), py::arg("U"))
      .def_static("default_U", &SmoothingKernel::default_U)
      .def_property_readonly("U", &SmoothingKernel::U)
      .def("__call__", &SmoothingKernel::operator())
      .def("mellin", &SmoothingKernel::mellin);

  py::class_<MomentReport>(m, "MomentReport")
      .def_property_readonly("family", [](const MomentReport& r) { return to_string(r.family); })
      .def_readonly("modulus", &MomentReport::modulus)
      .def_readonly("Y", &MomentReport::Y)
      .def_readonly("m", &MomentReport::m)
      .def_readonly("U", &MomentReport::U)
      .def_readonly("count", &MomentReport::count)
      .def_readonly("measured", &MomentReport::measured)
      .def_readonly("envelope", &MomentReport::envelope)
      .def_readonly("ratio", &MomentReport::ratio)
      .def_readonly("log_exponent", &MomentReport::log_exponent);
  m.def("exponent_E", &exponent_E, py::arg("m"), py::arg("k") = 1, py::arg("epsilon") = 0.0);
  m.def(
      "moment_fixed_mod",
      [](std::int64_t q, std::int64_t Y, double mm, const EigenformTable& table,
         const PrimeSieve& sieve, std::optional<double> U, int threads, bool all_characters) {
        const auto kernel = kernel_from(U);
        py::gil_scoped_release release;
        return moment_fixed_mod(q, Y, mm, table, sieve, kernel.get(),
                                options_from(threads, 1, 0.0, all_characters));
      },
      py::arg("q"), py::arg("Y"), py::arg("m"), py::arg("table"), py::arg("sieve"),
      py::arg("U") = std::nullopt, py::arg("threads") = 1, py::arg("all_characters") = false);
  m.def(
      "moment_quadratic",
      [](std::int64_t X, std::int64_t Y, double mm, const EigenformTable& table,
         const PrimeSieve& sieve, std::optional<double> U, int threads, int k, double epsilon) {
        const auto kernel = kernel_from(U);
        py::gil_scoped_release release;
        return moment_quadratic(X, Y, mm, table, sieve, kernel.get(),
                                options_from(threads, k, epsilon, false));
      },
      py::arg("X"), py::arg("Y"), py::arg("m"), py::arg("table"), py::arg("sieve"),
      py::arg("U") = std::nullopt, py::arg("threads") = 1, py::arg("k") = 1,
      py::arg("epsilon") = 0.0);

  py::class_<ExponentFit>(m, "ExponentFit")
      .def_readonly("slope", &ExponentFit::slope)
      .def_readonly("intercept", &ExponentFit::intercept)
      .def_readonly("r2", &ExponentFit::r2);
  m.def("fit_exponent",
        [](const std::vector<MomentReport>& r) { return fit_exponent(r); });

  py::class_<PrSumRecord>(m, "PrSumRecord")
      .def_readonly("lhs", &PrSumRecord::lhs)
      .def_readonly("main_term", &PrSumRecord::main_term)
      .def_readonly("error", &PrSumRecord::error)
      .def_readonly("tail_bound", &PrSumRecord::tail_bound);
  m.def("verify_lemma_prsum", &verify_lemma_prsum, py::arg("X"), py::arg("n"), py::arg("k"),
        py::arg("kernel"), py::arg("sieve"));

  py::enum_<CancellationVariant>(m, "CancellationVariant")
      .value("PLAIN", CancellationVariant::kPlain)
      .value("SYM2", CancellationVariant::kSymSquare);
  py::class_<CancellationRecord>(m, "CancellationRecord")
      .def_readonly("sum", &CancellationRecord::sum)
      .def_readonly("envelope", &CancellationRecord::envelope_sqrt_x)
      .def_readonly("ratio", &CancellationRecord::ratio);
  m.def("verify_prime_cancellation", &verify_prime_cancellation, py::arg("chi"), py::arg("t0"),
        py::arg("x"), py::arg("table"), py::arg("sieve"),
        py::arg("variant") = CancellationVariant::kPlain);
}
