// Command-line front end for the equivariant line bundle toolkit.
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "drinfeld/acceptance.hpp"
#include "drinfeld/bundles.hpp"
#include "drinfeld/cartier.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/mod_p_reps.hpp"
#include "drinfeld/special_fiber.hpp"
#include "json.hpp"

using namespace drinfeld;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitAcceptance = 4;

struct Common {
  unsigned p = 3;
  unsigned f = 1;
  unsigned m = 2;
  int radius = 3;
  std::uint64_t seed = 0;
  bool json = false;
  bool csv = false;
};

void require_prime(unsigned p) {
  if (p == 2) throw ConfigError("p = 2 is excluded");
  if (!is_prime(p)) throw ConfigError("p must be an odd prime, got " + std::to_string(p));
}

void require_qp(unsigned f, const char* what) {
  if (f != 1) throw ConfigError(std::string(what) + " is only implemented for K = Q_p (f = 1)");
}

// Parses "a:b" or a single integer into an inclusive range.
std::pair<long long, long long> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const long long v = std::stoll(s);
      return {v, v};
    }
    return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse range '" + s + "' (expected a:b)");
  }
}

json character_json(const Character& c) { return {{"t", c.t}, {"a", c.a}}; }

int cmd_orders(const Common& o) {
  require_prime(o.p);
  const BundleCalculus calc(o.p, o.f);
  const OrderTable solved = calc.solve_order_systems();
  const bool ok = solved == calc.closed_form_table();
  static const char* names[] = {"omega0", "omega1", "L0", "L1", "omega_log"};
  if (o.json) {
    json j{{"p", o.p}, {"f", o.f}, {"q", calc.q()}, {"matches_closed_form", ok}};
    for (std::size_t i = 0; i < kGeneratorCount; ++i)
      j["orders"][names[i]] = {solved.orders[i].first, solved.orders[i].second};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "q = " << calc.q() << "\n";
    std::printf("%-10s %8s %8s\n", "generator", "ord_s0", "ord_s1");
    for (std::size_t i = 0; i < kGeneratorCount; ++i)
      std::printf("%-10s %8lld %8lld\n", names[i], solved.orders[i].first, solved.orders[i].second);
    std::cout << (ok ? "matches the closed-form table\n" : "DOES NOT match the closed-form table\n");
  }
  return ok ? 0 : kExitAcceptance;
}

int cmd_bundle_info(const Common& o, long long k0, long long k1, long long r, unsigned a) {
  require_prime(o.p);
  const BundleCalculus calc(o.p, o.f, o.m);
  if (a == 0 || a >= calc.coefficient_field().size()) throw ConfigError("--a must encode a nonzero element of F_{q^m}");
  const BundleClass L = calc.make({r, a}, r, k0, k1);
  const long long w = calc.weight(L);
  json j{{"q", calc.q()},
         {"p", o.p},
         {"f", o.f},
         {"m", o.m},
         {"chi", character_json(L.chi)},
         {"r", L.r},
         {"k0", L.k0},
         {"k1", L.k1},
         {"weight", w},
         {"types",
          {{"t00", calc.type_of(L, 0, 0)},
           {"t01", calc.type_of(L, 0, 1)},
           {"t10", calc.type_of(L, 1, 0)},
           {"t11", calc.type_of(L, 1, 1)}}},
         {"positivity", to_string(calc.positivity(L))},
         {"vanishing_prediction", to_string(calc.predict_vanishing(L))}};
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj) {
      const auto d = calc.decompose(L, i, jj);
      j["decompositions"].push_back({{"omega", i},
                                     {"L", jj},
                                     {"omega_exponent", d.omega_exponent},
                                     {"type", d.type},
                                     {"character", character_json(d.chi)}});
    }
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "orders (k0, k1) = (" << L.k0 << ", " << L.k1 << "), r = " << L.r << ", weight = " << w << "\n"
              << "positivity: " << j["positivity"].get<std::string>()
              << ", predicted vanishing: " << j["vanishing_prediction"].get<std::string>() << "\n";
    for (const auto& d : j["decompositions"])
      std::cout << "  omega" << d["omega"] << "^" << d["omega_exponent"] << " (x) L" << d["L"] << "^" << d["type"]
                << " (x) chi(t=" << d["character"]["t"] << ", a=" << d["character"]["a"] << ")\n";
  }
  return 0;
}

const char* kCsvHeader = "p,f,k0,k1,r,radius,h0,h1,euler,seed";

struct CohomologyRecord {
  long long k0, k1, r;
  int radius;
  CohomologyResult res;
};

void print_csv_row(const Common& o, const CohomologyRecord& rec) {
  std::cout << o.p << "," << o.f << "," << rec.k0 << "," << rec.k1 << "," << rec.r << "," << rec.radius << ","
            << rec.res.h0 << "," << rec.res.h1 << "," << rec.res.euler << "," << o.seed << "\n";
}

json record_json(const Common& o, const CohomologyRecord& rec) {
  return {{"p", o.p},         {"f", o.f},         {"k0", rec.k0},           {"k1", rec.k1},
          {"r", rec.r},       {"radius", rec.radius}, {"h0", rec.res.h0}, {"h1", rec.res.h1},
          {"euler", rec.res.euler}, {"gauge_seed", o.seed}};
}

int cmd_cohomology(const Common& o, long long k0, long long k1, long long r, const std::string& center_name,
                   bool basis, const std::string& gauge, bool with_ball) {
  require_prime(o.p);
  require_qp(o.f, "cohomology");
  const BundleCalculus calc(o.p, o.f, 1);
  const BundleClass L = calc.make({r, 1}, r, k0, k1);
  const Tree tree(o.p);
  const ChartAtlas atlas(tree, o.seed);
  if (center_name != "s0" && center_name != "s1") throw ConfigError("--center must be s0 or s1");
  const Ball ball = make_ball(atlas, center_name == "s0" ? tree.s0() : tree.s1(), o.radius);
  const FiniteField F(o.p);
  const GluingComplex c = gauge == "equivariant" ? equivariant_complex(F, L, ball, atlas) : build_complex(F, L, ball);
  const CohomologyRecord rec{L.k0, L.k1, L.r, o.radius, cohomology(c, basis)};
  if (o.csv) {
    std::cout << kCsvHeader << "\n";
    print_csv_row(o, rec);
  } else if (o.json) {
    json j = record_json(o, rec);
    j["center"] = center_name;
    j["gauge"] = gauge;
    if (with_ball) j["ball"] = json::parse(ball_to_json(tree, ball));
    if (auto pred = predicted_dims(L, ball, o.p)) j["predicted"] = {pred->first, pred->second};
    if (rec.res.h0_basis) {
      for (const auto& v : *rec.res.h0_basis) {
        json vec = json::array();
        for (auto x : v) vec.push_back(x);
        j["h0_basis"].push_back(vec);
      }
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "ball(" << center_name << ", " << o.radius << "): " << ball.vertices.size() << " components, "
              << ball.edges.size() << " nodes\n"
              << "h0 = " << rec.res.h0 << ", h1 = " << rec.res.h1 << ", euler = " << rec.res.euler << "\n";
    if (auto pred = predicted_dims(L, ball, o.p))
      std::cout << "predicted (h0, h1) = (" << pred->first << ", " << pred->second << ")\n";
    if (rec.res.h0_basis) std::cout << "h0 basis: " << rec.res.h0_basis->size() << " vectors\n";
  }
  return 0;
}

// Rows of entries; each entry is its coefficient list in the ring's power basis.
json ring_matrix_json(const RingMatrix& mat) {
  json rows = json::array();
  for (std::size_t i = 0; i < mat.n; ++i) {
    json row = json::array();
    for (std::size_t jj = 0; jj < mat.n; ++jj) row.push_back(mat.at(i, jj));
    rows.push_back(row);
  }
  return rows;
}

int cmd_cartier_scan(const Common& o) {
  require_prime(o.p);
  require_qp(o.f, "cartier scan");
  const auto scan = vanishing_scan(o.p, o.m);
  const FiniteField F(o.p, o.m);
  std::size_t dim2 = 0, dim1 = 0, other = 0;
  for (FiniteField::Elem y = 0; y < F.size(); ++y) {
    const auto d = classify_deformations(F, y, 0);
    (d.dimension == 2 ? dim2 : d.dimension == 1 ? dim1 : other)++;
  }
  json j{{"q", scan.q},
         {"m", scan.m},
         {"pi_zero_count", scan.pi_zeros.size()},
         {"f_zero_count", scan.f_zeros.size()},
         {"pi_zeros_are_base_field", scan.pi_zeros_are_base_field},
         {"f_zeros_are_quadratic", scan.f_zeros_are_quadratic},
         {"pi_divisor_degree", scan.pi_divisor_degree},
         {"f_divisor_degree", scan.f_divisor_degree},
         {"deformation_dimension_counts", {{"2", dim2}, {"1", dim1}, {"other", other}}}};
  // Pi, F, V at the field generator over GR(p^2, m), critical index 0.
  const GaloisRing ring(F, 2);
  const CartierPoint sample(ring, F.generator(), 0);
  j["sample"] = {{"y", F.generator()},
                 {"ring_precision", 2},
                 {"critical_index", 0},
                 {"pi", ring_matrix_json(sample.pi())},
                 {"frobenius", ring_matrix_json(sample.frobenius())},
                 {"verschiebung", ring_matrix_json(sample.verschiebung())}};
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "F_{" << o.p << "^" << o.m << "}: zeros of y - y^(1/q): " << scan.pi_zeros.size()
              << (scan.pi_zeros_are_base_field ? " (= F_q)" : " (not F_q)") << ", zeros of y^q - y^(1/q): "
              << scan.f_zeros.size() << (scan.f_zeros_are_quadratic ? " (= F_{q^2} part)" : " (unexpected)") << "\n"
              << "divisor degrees with the point at infinity: " << scan.pi_divisor_degree << ", "
              << scan.f_divisor_degree << "\n"
              << "first-order deformations: dimension 2 at " << dim2 << " points, 1 at " << dim1 << "\n";
  }
  return 0;
}

int cmd_hecke_verify(const Common& o, int k, int window) {
  require_prime(o.p);
  require_qp(o.f, "hecke verify");
  if (k < 0 || k > static_cast<int>(o.p) - 1) throw ConfigError("--k must lie in [0, p-1]");
  if (window < 4) throw ConfigError("--window must be at least 4");
  const FiniteField F(o.p);
  const Tree tree(o.p);
  const ChartAtlas atlas(tree, o.seed);
  const Ball ball = make_ball(atlas, tree.s1(), window);
  const WeightSigma sigma{k, 0, 1};
  const HeckeAlgebra H(F, o.p, sigma);
  const auto rec = H.verify_recurrence(4);
  const InducedModel model(F, atlas, sigma);
  std::mt19937_64 rng(o.seed + 1);
  std::uniform_int_distribution<FiniteField::Elem> unit(1, o.p - 1);
  auto generic = [&] {
    FVec x(k + 1);
    for (auto& e : x) e = unit(rng);
    return x;
  };
  // Support of T on basis vectors at s1: inside the neighbours, and all of them together.
  std::set<std::string> covered;
  bool support_ok = true;
  for (int j = 0; j <= k; ++j) {
    FVec e(k + 1, 0);
    e[j] = 1;
    for (const auto& v : model.T_apply(model.single(tree.s1(), e), ball).support()) {
      support_ok = support_ok && tree.distance(v, tree.s1()) == 1;
      covered.insert(Tree::key(v));
    }
  }
  support_ok = support_ok && covered.size() == o.p + 1;
  int passed = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const QMat2 g = random_compact(rng, o.p) * QMat2::diag(1, p_power(o.p, t % 2)) * random_compact(rng, o.p);
    const auto x = model.single(tree.s1(), generic());
    passed += model.T_apply(model.act(g, x), ball) == model.act(g, model.T_apply(x, ball));
  }
  const bool ok = rec.ok && support_ok && passed == trials;
  if (o.json) {
    json j{{"p", o.p}, {"k", k}, {"recurrence_ok", rec.ok}, {"equivariance_trials", trials},
           {"equivariance_passed", passed}, {"support_ok", support_ok}};
    for (const auto& h : rec.powers) j["powers"].push_back(h.coeffs);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "T^n in the basis T_0..T_n:\n";
    for (std::size_t n = 0; n < rec.powers.size(); ++n) {
      std::cout << "  T^" << n + 1 << " =";
      for (std::size_t j = 0; j < rec.powers[n].coeffs.size(); ++j)
        if (rec.powers[n].coeffs[j] != 0) std::cout << " + " << rec.powers[n].coeffs[j] << " T_" << j;
      std::cout << "\n";
    }
    std::cout << "recurrence " << (rec.ok ? "ok" : "FAILED") << ", support " << (support_ok ? "ok" : "FAILED")
              << ", equivariance " << passed << "/" << trials << "\n";
  }
  return ok ? 0 : kExitAcceptance;
}

int cmd_supersingular(const Common& o) {
  require_prime(o.p);
  require_qp(o.f, "supersingular");
  const auto rep = enumerate_and_match(o.p, o.m);
  const FiniteField F(o.p);
  const Tree tree(o.p);
  const ChartAtlas atlas(tree, o.seed);
  const int R = std::max(o.radius, 3);
  json lambdas = json::array();
  bool all_nonzero = true;
  for (long long k0 = 0; k0 <= static_cast<long long>(o.p) - 1; ++k0)
    for (long long r = 0; r < static_cast<long long>(o.p) - 1; ++r)
      for (int i = 0; i < 2; ++i) {
        const BundleClass L{{r, 1}, r, k0, static_cast<long long>(o.p) - 1 - k0};
        const auto ph = phi_tilde(F, L, i, atlas, tree.s1(), R);
        all_nonzero = all_nonzero && ph.ok();
        lambdas.push_back({{"k0", L.k0}, {"k1", L.k1}, {"r", r}, {"i", i}, {"nonzero", ph.ok()},
                           {"lambda", ph.lambda ? json(*ph.lambda) : json(nullptr)}});
      }
  if (o.json) {
    json j{{"p", o.p},
           {"m", o.m},
           {"bundle_count", rep.bundle_count},
           {"rep_count", rep.rep_count},
           {"bijective", rep.bijective()},
           {"lambda_nonzero", lambdas}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "positive weight -1 bundle classes: " << rep.bundle_count << "\n"
              << "supersingular normal forms: " << rep.rep_count << "\n"
              << "bundle -> representation map bijective: " << (rep.bijective() ? "yes" : "no") << "\n"
              << "phi~ = lambda T with lambda != 0 on ball(s1, " << R << "): " << (all_nonzero ? "all classes" : "NOT all")
              << "\n";
  }
  return rep.bijective() && all_nonzero ? 0 : kExitAcceptance;
}

int cmd_sweep(const Common& o, const std::string& k0s, const std::string& k1s, const std::string& radii,
              std::optional<long long> weight, long long r, std::size_t max_records) {
  require_prime(o.p);
  require_qp(o.f, "sweep");
  const auto [k0a, k0b] = parse_range(k0s);
  const auto [k1a, k1b] = parse_range(k1s);
  const auto [ra, rb] = parse_range(radii);
  const long long q = o.p;
  const Tree tree(o.p);
  const ChartAtlas atlas(tree, o.seed);
  const FiniteField F(o.p);
  std::vector<std::pair<long long, long long>> pairs;
  for (long long k0 = k0a; k0 <= k0b; ++k0)
    for (long long k1 = k1a; k1 <= k1b; ++k1) {
      if ((k0 + k1) % (q - 1) != 0) continue;
      if (weight && -(k0 + k1) / (q - 1) != *weight) continue;
      pairs.emplace_back(k0, k1);
    }
  const long long nradii = rb >= ra ? rb - ra + 1 : 0;
  if (static_cast<long long>(pairs.size()) * nradii > static_cast<long long>(max_records))
    throw ResourceError("sweep would produce more than " + std::to_string(max_records) + " records");
  if (ra < 0) throw ConfigError("radii must be non-negative");
  std::vector<CohomologyRecord> records;
  for (long long R = ra; R <= rb; ++R) {
    const Ball ball = make_ball(atlas, tree.s1(), static_cast<int>(R));
    for (const auto& [k0, k1] : pairs) {
      const BundleClass L{{r, 1}, r, k0, k1};
      records.push_back({k0, k1, r, static_cast<int>(R), cohomology(build_complex(F, L, ball))});
    }
  }
  // Parameter order: (k0, k1) outer, radius inner.
  std::stable_sort(records.begin(), records.end(), [](const auto& x, const auto& y) {
    return std::tie(x.k0, x.k1, x.radius) < std::tie(y.k0, y.k1, y.radius);
  });
  if (o.json) {
    json arr = json::array();
    for (const auto& rec : records) arr.push_back(record_json(o, rec));
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << kCsvHeader << "\n";
    for (const auto& rec : records) print_csv_row(o, rec);
  }
  return 0;
}

int cmd_selftest(const Common& o, std::optional<int> force_fail, const std::vector<int>& only) {
  AcceptanceOptions opt;
  opt.force_fail = force_fail;
  opt.only = only;
  opt.seed = o.seed;
  if (!o.json) opt.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
  const auto results = run_acceptance(opt);
  bool ok = !results.empty();
  for (const auto& r : results) ok = ok && r.passed;
  if (o.json) std::cout << acceptance_json(results) << "\n";
  else std::cout << (ok ? "all criteria passed\n" : "some criteria FAILED\n");
  return ok ? 0 : kExitAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line bundle cohomology on the special fibre of the p-adic upper half plane"};
  app.require_subcommand(1);
  Common o;
  auto add_common = [&](CLI::App* cmd, bool with_m = true) {
    cmd->add_option("--p", o.p, "odd prime")->capture_default_str();
    cmd->add_option("--f", o.f, "residue degree, q = p^f")->capture_default_str();
    if (with_m) cmd->add_option("--m,--ext", o.m, "coefficient field F_{q^m}")->capture_default_str();
    cmd->add_option("--seed", o.seed, "chart gauge seed")->capture_default_str();
    cmd->add_flag("--json", o.json, "JSON output");
  };

  auto* orders = app.add_subcommand("orders", "solve and print the generator order table");
  add_common(orders, false);

  long long k0 = 0, k1 = 0, r = 0;
  unsigned a = 1;
  auto* bundle = app.add_subcommand("bundle", "line bundle invariants");
  auto* info = bundle->add_subcommand("info", "weight, types, decompositions, vanishing prediction");
  bundle->require_subcommand(1);
  add_common(info);
  info->add_option("--k0", k0)->required();
  info->add_option("--k1", k1)->required();
  info->add_option("--r", r, "r, an integer mod q-1")->capture_default_str();
  info->add_option("--a", a, "character value on p^2 (encoded element of F_{q^m})")->capture_default_str();

  std::string center = "s1", gauge = "unit";
  bool basis = false, with_ball = false;
  auto* coh = app.add_subcommand("cohomology", "H^0/H^1 dimensions on a ball of the special fibre");
  add_common(coh, false);
  coh->add_option("--k0", k0)->required();
  coh->add_option("--k1", k1)->required();
  coh->add_option("--r", r)->capture_default_str();
  coh->add_option("--radius", o.radius)->capture_default_str();
  coh->add_option("--center", center, "s0 or s1")->capture_default_str();
  coh->add_option("--gauge", gauge, "unit or equivariant gluing scalars")
      ->check(CLI::IsMember({"unit", "equivariant"}))
      ->capture_default_str();
  coh->add_flag("--basis", basis, "also compute an explicit H^0 basis");
  coh->add_flag("--ball", with_ball, "include the ball (vertices, edges, marked points) in JSON output");
  auto* csv_flag = coh->add_flag("--csv", o.csv, "CSV output");
  csv_flag->excludes(coh->get_option("--json"));

  auto* cartier = app.add_subcommand("cartier", "Cartier module computations");
  auto* scan = cartier->add_subcommand("scan", "vanishing loci of the Lie algebra maps over F_{p^m}");
  cartier->require_subcommand(1);
  add_common(scan);

  int hk = 0, window = 4;
  auto* hecke = app.add_subcommand("hecke", "Hecke algebra checks");
  auto* verify = hecke->add_subcommand("verify", "recurrence, support and equivariance of T");
  hecke->require_subcommand(1);
  add_common(verify, false);
  verify->add_option("--k", hk)->capture_default_str();
  verify->add_option("--window", window)->capture_default_str();

  auto* ss = app.add_subcommand("supersingular", "bundle/representation bijection and phi~ scalars");
  add_common(ss);
  ss->add_option("--radius", o.radius, "window radius for phi~ (at least 3)")->capture_default_str();

  std::string k0s = "0:2", k1s = "0:2", radii = "1:3";
  std::optional<long long> weight;
  std::size_t max_records = 100000;
  auto* sweep = app.add_subcommand("sweep", "CSV/JSON table of cohomology dimensions");
  add_common(sweep, false);
  sweep->add_option("--k0", k0s, "range a:b")->capture_default_str();
  sweep->add_option("--k1", k1s, "range a:b")->capture_default_str();
  sweep->add_option("--radius", radii, "range a:b")->capture_default_str();
  sweep->add_option("--weight", weight, "keep only bundles of this weight");
  sweep->add_option("--r", r)->capture_default_str();
  sweep->add_option("--max-records", max_records)->capture_default_str();

  std::optional<int> force_fail;
  std::vector<int> only;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--seed", o.seed)->capture_default_str();
  selftest->add_flag("--json", o.json);
  selftest->add_option("--force-fail", force_fail, "mark criterion N as failed")->check(CLI::Range(1, kCriterionCount));
  selftest->add_option("--only", only, "run only these criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*orders) return cmd_orders(o);
    if (*info) return cmd_bundle_info(o, k0, k1, r, a);
    if (*coh) return cmd_cohomology(o, k0, k1, r, center, basis, gauge, with_ball);
    if (*scan) return cmd_cartier_scan(o);
    if (*verify) return cmd_hecke_verify(o, hk, window);
    if (*ss) return cmd_supersingular(o);
    if (*sweep) return cmd_sweep(o, k0s, k1s, radii, weight, r, max_records);
    if (*selftest) return cmd_selftest(o, force_fail, only);
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
