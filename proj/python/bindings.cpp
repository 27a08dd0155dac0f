// Python bindings: a dictionary-based facade over the core library.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "drinfeld/acceptance.hpp"
#include "drinfeld/bundles.hpp"
#include "drinfeld/cartier.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/mod_p_reps.hpp"
#include "drinfeld/special_fiber.hpp"

namespace py = pybind11;
using namespace drinfeld;

namespace {

py::dict order_table(unsigned p, unsigned f) {
  const BundleCalculus calc(p, f);
  const auto solved = calc.solve_order_systems();
  py::dict out;
  for (std::size_t i = 0; i < kGeneratorCount; ++i)
    out[py::str(to_string(static_cast<Generator>(i)))] = py::make_tuple(solved.orders[i].first, solved.orders[i].second);
  return out;
}

py::dict bundle_info(unsigned p, long long k0, long long k1, long long r, unsigned f, unsigned m, unsigned a) {
  const BundleCalculus calc(p, f, m);
  const BundleClass L = calc.make({r, a}, r, k0, k1);
  py::dict out, chi, types;
  chi["t"] = L.chi.t;
  chi["a"] = L.chi.a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) types[("t" + std::to_string(i) + std::to_string(j)).c_str()] = calc.type_of(L, i, j);
  out["q"] = calc.q();
  out["chi"] = chi;
  out["types"] = types;
  out["k0"] = L.k0;
  out["k1"] = L.k1;
  out["r"] = L.r;
  out["weight"] = calc.weight(L);
  out["positivity"] = to_string(calc.positivity(L));
  out["vanishing_prediction"] = to_string(calc.predict_vanishing(L));
  py::list decs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto d = calc.decompose(L, i, j);
      py::dict e;
      e["omega"] = i;
      e["L"] = j;
      e["omega_exponent"] = d.omega_exponent;
      e["type"] = d.type;
      e["character"] = py::make_tuple(d.chi.t, d.chi.a);
      decs.append(e);
    }
  out["decompositions"] = decs;
  return out;
}

py::dict cohomology_dims(unsigned p, long long k0, long long k1, long long r, int radius, const std::string& center,
                         std::uint64_t seed, const std::string& gauge) {
  if (center != "s0" && center != "s1") throw ConfigError("center must be 's0' or 's1'");
  if (gauge != "unit" && gauge != "equivariant") throw ConfigError("gauge must be 'unit' or 'equivariant'");
  const BundleCalculus calc(p);
  const BundleClass L = calc.make({r, 1}, r, k0, k1);
  const Tree tree(p);
  const ChartAtlas atlas(tree, seed);
  const Ball ball = make_ball(atlas, center == "s0" ? tree.s0() : tree.s1(), radius);
  const FiniteField F(p);
  const auto res = cohomology(gauge == "unit" ? build_complex(F, L, ball) : equivariant_complex(F, L, ball, atlas));
  py::dict out;
  out["h0"] = res.h0;
  out["h1"] = res.h1;
  out["euler"] = res.euler;
  out["components"] = ball.vertices.size();
  if (auto pred = predicted_dims(L, ball, p)) out["predicted"] = py::make_tuple(pred->first, pred->second);
  else out["predicted"] = py::none();
  return out;
}

py::dict scan(unsigned q, unsigned m) {
  const auto s = vanishing_scan(q, m);
  py::dict out;
  out["pi_zeros"] = s.pi_zeros;
  out["f_zeros"] = s.f_zeros;
  out["pi_zeros_are_base_field"] = s.pi_zeros_are_base_field;
  out["f_zeros_are_quadratic"] = s.f_zeros_are_quadratic;
  out["pi_divisor_degree"] = s.pi_divisor_degree;
  out["f_divisor_degree"] = s.f_divisor_degree;
  return out;
}

py::dict hecke_recurrence(unsigned p, int k, int max_power) {
  const FiniteField F(p);
  const auto rep = HeckeAlgebra(F, p, {k, 0, 1}).verify_recurrence(max_power);
  py::list powers;
  for (const auto& h : rep.powers) powers.append(h.coeffs);
  py::dict out;
  out["ok"] = rep.ok;
  out["powers"] = powers;
  return out;
}

std::optional<FiniteField::Elem> phi_tilde_lambda(unsigned p, long long k0, long long r, int i, int radius,
                                                 std::uint64_t seed) {
  const FiniteField F(p);
  const Tree tree(p);
  const ChartAtlas atlas(tree, seed);
  const BundleClass L{{r, 1}, r, k0, static_cast<long long>(p) - 1 - k0};
  const auto rep = phi_tilde(F, L, i, atlas, tree.s1(), radius);
  if (!rep.ok()) return std::nullopt;
  return rep.lambda;
}

long long quotient_dim(unsigned p, int i, int k, long long r, int radius, std::uint64_t seed) {
  const FiniteField F(p);
  const Tree tree(p);
  const ChartAtlas atlas(tree, seed);
  return supersingular_quotient_dim(F, atlas, i, {k, r, 1}, radius);
}

py::dict bijection(unsigned p, unsigned m) {
  const auto rep = enumerate_and_match(p, m);
  py::dict out;
  out["bundle_count"] = rep.bundle_count;
  out["rep_count"] = rep.rep_count;
  out["injective"] = rep.injective;
  out["surjective"] = rep.surjective;
  out["bijective"] = rep.bijective();
  return out;
}

py::list acceptance(std::vector<int> only, std::uint64_t seed, std::optional<int> force_fail) {
  AcceptanceOptions opt;
  opt.only = std::move(only);
  opt.seed = seed;
  opt.force_fail = force_fail;
  std::vector<CriterionResult> results;
  {
    py::gil_scoped_release release;
    results = run_acceptance(opt);
  }
  py::list out;
  for (const auto& r : results) {
    py::dict d;
    d["id"] = r.id;
    d["name"] = r.name;
    d["passed"] = r.passed;
    d["seconds"] = r.seconds;
    d["budget_seconds"] = r.budget_seconds;
    d["detail"] = r.detail;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_drinfeld, m) {
  m.doc() = "Line bundle cohomology on the special fibre of the p-adic upper half plane";

  auto base = py::register_exception<Error>(m, "DrinfeldError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<WindowError>(m, "WindowError", base.ptr());

  m.def("order_table", &order_table, py::arg("p"), py::arg("f") = 1,
        "Orders (ord_s0, ord_s1) of the generator bundles solved from the divisor-degree systems.");
  m.def("orders_match_closed_form",
        [](unsigned p, unsigned f) {
          const BundleCalculus calc(p, f);
          return calc.solve_order_systems() == calc.closed_form_table();
        },
        py::arg("p"), py::arg("f") = 1);
  m.def("bundle_info", &bundle_info, py::arg("p"), py::arg("k0"), py::arg("k1"), py::arg("r") = 0, py::arg("f") = 1,
        py::arg("m") = 1, py::arg("a") = 1);
  m.def("cohomology", &cohomology_dims, py::arg("p"), py::arg("k0"), py::arg("k1"), py::arg("r") = 0,
        py::arg("radius") = 3, py::arg("center") = "s1", py::arg("seed") = 0, py::arg("gauge") = "unit");
  m.def("vanishing_scan", &scan, py::arg("q"), py::arg("m"));
  m.def("lie_map_scalars",
        [](unsigned p, unsigned m, FiniteField::Elem y) {
          const FiniteField F(p, m);
          const auto s = lie_map_scalars(F, y);
          return py::make_tuple(s.pi_scalar, s.f_scalar);
        },
        py::arg("p"), py::arg("m"), py::arg("y"));
  m.def("hecke_recurrence", &hecke_recurrence, py::arg("p"), py::arg("k"), py::arg("max_power") = 4);
  m.def("jordan_holder_ok", [](unsigned p, int k, long long r) { return jordan_holder_check(p, k, r).ok(); },
        py::arg("p"), py::arg("k"), py::arg("r") = 0);
  m.def("phi_tilde_lambda", &phi_tilde_lambda, py::arg("p"), py::arg("k0"), py::arg("r"), py::arg("i"),
        py::arg("radius") = 3, py::arg("seed") = 0);
  m.def("supersingular_quotient_dim", &quotient_dim, py::arg("p"), py::arg("i"), py::arg("k"), py::arg("r") = 0,
        py::arg("radius") = 2, py::arg("seed") = 0);
  m.def("enumerate_and_match", &bijection, py::arg("p"), py::arg("m") = 1);
  m.def("run_acceptance", &acceptance, py::arg("only") = std::vector<int>{}, py::arg("seed") = 0,
        py::arg("force_fail") = py::none());
  m.attr("CRITERION_COUNT") = kCriterionCount;
}
