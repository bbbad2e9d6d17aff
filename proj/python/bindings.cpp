#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "waring/apolarity.hpp"
#include "waring/combinatorics.hpp"
#include "waring/error.hpp"
#include "waring/homotopy.hpp"
#include "waring/terracini.hpp"

namespace py = pybind11;
using namespace waring;

namespace {

PolyVector make_vector(int num_vars, const std::vector<int>& degrees, const std::vector<CVector>& parts) {
  if (degrees.size() != parts.size()) throw Error(ErrorKind::Validation, "one degree per part");
  std::vector<HomogeneousPoly> polys;
  for (std::size_t j = 0; j < parts.size(); ++j) polys.emplace_back(num_vars, degrees[j], parts[j]);
  return PolyVector(num_vars, std::move(polys));
}

CMatrix forms_matrix(const WaringDecomposition& d) {
  CMatrix m(d.k(), d.k() > 0 ? d.forms.front().num_vars() : 0);
  for (int i = 0; i < d.k(); ++i) m.row(i) = d.forms[static_cast<std::size_t>(i)].coeffs().transpose();
  return m;
}

py::dict to_dict(const WaringDecomposition& d) {
  py::dict out;
  out["forms"] = forms_matrix(d);
  out["lambdas"] = d.lambdas;
  out["residual"] = d.residual;
  return out;
}

py::dict to_dict(const PolyVector& f) {
  py::dict out;
  out["num_vars"] = f.num_vars();
  out["degrees"] = f.degrees();
  std::vector<CVector> parts;
  for (const auto& p : f.parts()) parts.push_back(p.coeffs());
  out["parts"] = parts;
  return out;
}

py::dict to_dict(const CountResult& r) {
  py::dict out;
  out["k"] = r.k;
  out["count"] = r.count;
  out["status"] = r.status;
  out["loops"] = r.loops;
  out["path_failures"] = r.path_failures;
  py::list sols;
  for (const auto& s : r.solutions) sols.append(to_dict(s));
  out["solutions"] = sols;
  return out;
}

BundleSpec bundle_from(const PolyVector& f, const std::string& text) {
  if (text != "auto") return BundleSpec::parse(text);
  const auto b = bundle_for_case(CaseSpec(f.n(), f.degrees()));
  if (!b) throw Error(ErrorKind::Validation, "no known bundle for this case; pass one explicitly");
  return *b;
}

CountOptions count_options(int stall, int budget_loops, int workers) {
  CountOptions o;
  o.stall_loops = stall;
  o.budget_loops = budget_loops;
  o.monodromy.workers = workers;
  return o;
}

}  // namespace

PYBIND11_MODULE(_waring, m) {
  m.doc() = "Simultaneous Waring decompositions of vectors of forms";

  static py::exception<Error> waring_error(m, "WaringError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      if (e.kind() == ErrorKind::Validation || e.kind() == ErrorKind::OutOfRange) {
        PyErr_SetString(PyExc_ValueError, msg.c_str());
      } else {
        PyErr_SetString(waring_error.ptr(), msg.c_str());
      }
    }
  });

  m.def("is_perfect", &is_perfect, py::arg("n"), py::arg("degrees"),
        "k with k (r + n) = sum binom(a_i + n, n), or None.");
  m.def("veronese_count", [](int d, int n) { return py::int_(py::str(veronese_count(d, n).count.str())); },
        py::arg("d"), py::arg("n"));
  m.def("pair_lower_bound", &pair_lower_bound, py::arg("t"));
  m.def("monomials", [](int degree, int num_vars) {
    std::vector<std::vector<int>> out;
    for (const auto& mi : MonomialBasis::get(degree, num_vars).monomials()) out.push_back(mi.exponents);
    return out;
  }, py::arg("degree"), py::arg("num_vars"), "Exponent vectors in coefficient order.");

  m.def(
      "secant_defect",
      [](int n, const std::vector<int>& degrees, std::optional<int> k, std::uint64_t seed) {
        const CaseSpec spec(n, degrees);
        const DefectResult d = secant_defect(spec, k ? *k : spec.require_k(), seed);
        py::dict out;
        out["dim"] = d.dim;
        out["expected"] = d.expected;
        out["defect"] = d.defect;
        out["gap"] = d.gap;
        out["conclusive"] = d.conclusive;
        out["attempts"] = d.attempts;
        return out;
      },
      py::arg("n"), py::arg("degrees"), py::arg("k") = py::none(), py::arg("seed") = 1);

  m.def(
      "forward_construct",
      [](int n, const std::vector<int>& degrees, std::optional<int> k, std::uint64_t seed) {
        const CaseSpec spec(n, degrees);
        const ForwardSample s = forward_construct(n, degrees, k ? *k : spec.require_k(), seed);
        return py::make_tuple(to_dict(s.f), to_dict(s.truth));
      },
      py::arg("n"), py::arg("degrees"), py::arg("k") = py::none(), py::arg("seed") = 1,
      "Random f from Gaussian summands; returns (f, decomposition).");

  m.def(
      "nonabelian_matrix",
      [](int num_vars, const std::vector<int>& degrees, const std::vector<CVector>& parts, const std::string& bundle) {
        const PolyVector f = make_vector(num_vars, degrees, parts);
        return nonabelian_matrix(f, bundle_from(f, bundle)).entries;
      },
      py::arg("num_vars"), py::arg("degrees"), py::arg("parts"), py::arg("bundle") = "auto");

  m.def(
      "decompose",
      [](int num_vars, const std::vector<int>& degrees, const std::vector<CVector>& parts, const std::string& bundle,
         std::uint64_t seed) {
        const PolyVector f = make_vector(num_vars, degrees, parts);
        py::gil_scoped_release release;
        const WaringDecomposition d = decompose(f, bundle_from(f, bundle), DecomposeOptions{seed});
        py::gil_scoped_acquire acquire;
        return to_dict(d);
      },
      py::arg("num_vars"), py::arg("degrees"), py::arg("parts"), py::arg("bundle") = "auto", py::arg("seed") = 1);

  m.def(
      "count_decompositions",
      [](int n, const std::vector<int>& degrees, std::uint64_t seed, int stall, int budget_loops, int workers) {
        CountResult r;
        {
          py::gil_scoped_release release;
          r = count_decompositions(CaseSpec(n, degrees), seed, count_options(stall, budget_loops, workers));
        }
        return to_dict(r);
      },
      py::arg("n"), py::arg("degrees"), py::arg("seed") = 1, py::arg("stall") = 15, py::arg("budget_loops") = 200,
      py::arg("workers") = 1);

  m.def(
      "solve_by_monodromy",
      [](int num_vars, const std::vector<int>& degrees, const std::vector<CVector>& parts, std::uint64_t seed,
         int stall, int budget_loops, int workers) {
        const PolyVector f = make_vector(num_vars, degrees, parts);
        SolveOptions o;
        o.count = count_options(stall, budget_loops, workers);
        CountResult r;
        {
          py::gil_scoped_release release;
          r = solve_by_monodromy(f, seed, o);
        }
        return to_dict(r);
      },
      py::arg("num_vars"), py::arg("degrees"), py::arg("parts"), py::arg("seed") = 1, py::arg("stall") = 15,
      py::arg("budget_loops") = 200, py::arg("workers") = 1);

  m.def(
      "reconstruction_residual",
      [](int num_vars, const std::vector<int>& degrees, const std::vector<CVector>& parts, const CMatrix& forms,
         const CMatrix& lambdas) {
        WaringDecomposition d;
        for (Eigen::Index i = 0; i < forms.rows(); ++i) d.forms.emplace_back(CVector(forms.row(i).transpose()));
        d.lambdas = lambdas;
        return reconstruction_residual(d, make_vector(num_vars, degrees, parts));
      },
      py::arg("num_vars"), py::arg("degrees"), py::arg("parts"), py::arg("forms"), py::arg("lambdas"));
}
