/// Command-line front end: symmetric-pair construction, restricted root
/// systems, orbit spectra, complex focal sets, cohomogeneity tables and the
/// oracle-vs-closed-form verification suite.  Output is canonical JSON
/// (sorted keys, 12-significant-digit floats) unless --csv; identical
/// arguments and seed produce byte-identical output.
///
/// Exit codes: 0 success, 1 computation error (structured JSON on stdout),
/// 2 usage error (message on stderr).

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "orbitlab/catalog.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/hermann.hpp"
#include "orbitlab/json_io.hpp"
#include "orbitlab/linalg.hpp"
#include "orbitlab/oracle.hpp"
#include "orbitlab/orbits.hpp"

namespace orbitlab::cli {
namespace {

struct SpaceContext {
  CatalogEntry entry;
  AlgebraPtr g;
  SymmetricPair pair;
};

SpaceContext load_space(const std::string& space) {
  CatalogEntry entry = parse_space(space);
  AlgebraPtr g = LieAlgebra::cached(entry.g);
  SymmetricPair pair = SymmetricPair::build(g, entry.sigma);
  return {std::move(entry), std::move(g), std::move(pair)};
}

Vec to_vec(const std::vector<double>& coeffs) {
  Vec out(static_cast<int>(coeffs.size()));
  for (int i = 0; i < out.size(); ++i) out(i) = coeffs[static_cast<std::size_t>(i)];
  return out;
}

Json echo_vec(const Vec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

void emit(const Json& doc) { std::cout << dump_canonical(doc) << "\n"; }

Vec cartan_element(const CartanSubspace& cartan, const Vec& coeffs,
                   const char* flag) {
  if (coeffs.size() != cartan.rank())
    throw InvalidParams(std::string(flag) + " needs " +
                        std::to_string(cartan.rank()) +
                        " coefficients (the Cartan rank), got " +
                        std::to_string(coeffs.size()));
  return cartan.element(coeffs);
}

/// Resolve --sigma-prime: the tokens name theta-composites, anything else is
/// matched against the catalogued subgroups of the same G.
HermannConfiguration configuration_for(const SpaceContext& ctx,
                                       const std::string& sigma_prime,
                                       unsigned seed) {
  if (sigma_prime == "theta" || sigma_prime == "sigma*theta")
    return hermann_configuration(ctx.pair, sigma_prime, seed);
  std::optional<CatalogEntry> other = find_subgroup(ctx.entry.g, sigma_prime);
  if (!other)
    throw UnsupportedSigma("--sigma-prime '" + sigma_prime +
                           "' is neither a theta token nor a catalogued "
                           "subgroup of " + ctx.entry.g);
  return hermann_configuration(ctx.pair, other->sigma, seed);
}

// ---------------------------------------------------------------- verbs ----

int run_pairs(const std::string& space) {
  SpaceContext ctx = load_space(space);
  const SymmetricPair& pair = ctx.pair;
  emit(Json{{"schema", kJsonSchema},
            {"kind", "pair"},
            {"space", ctx.entry.space},
            {"table", ctx.entry.table},
            {"algebra", ctx.entry.g},
            {"sigma", pair.sigma().label},
            {"K_group", ctx.entry.k_label},
            {"L_group", ctx.entry.l_label},
            {"dim_g", pair.algebra().dim()},
            {"dim_h", pair.h().dim()},
            {"dim_q", pair.q().dim()},
            {"dim_h_p", pair.h_p().dim()},
            {"dim_h_f", pair.h_f().dim()},
            {"dim_q_p", pair.q_p().dim()},
            {"dim_q_f", pair.q_f().dim()}});
  return 0;
}

int run_roots(const std::string& space, const std::string& sigma_prime,
              unsigned seed) {
  SpaceContext ctx = load_space(space);
  Json doc;
  if (sigma_prime.empty()) {
    CartanSubspace cartan = maximal_abelian(ctx.pair.algebra(), ctx.pair.q_p(),
                                            ctx.pair.q_f(), seed);
    doc = json_of(restricted_roots(ctx.pair, cartan, seed));
  } else {
    doc = json_of(configuration_for(ctx, sigma_prime, seed).system);
    doc["sigma_prime"] = sigma_prime;
  }
  doc["space"] = ctx.entry.space;
  doc["seed"] = seed;
  emit(doc);
  return 0;
}

int run_spectrum(const std::string& space, const std::string& sigma_prime,
                 const std::vector<double>& w_coeffs,
                 const std::vector<double>& a_coeffs, unsigned seed) {
  SpaceContext ctx = load_space(space);
  Json doc;
  Vec wc = to_vec(w_coeffs), ac = to_vec(a_coeffs);
  if (sigma_prime.empty()) {
    CartanSubspace cartan = maximal_abelian(ctx.pair.algebra(), ctx.pair.q_p(),
                                            ctx.pair.q_f(), seed);
    RestrictedRootSystem system = restricted_roots(ctx.pair, cartan, seed);
    Vec w = cartan_element(cartan, wc, "--w");
    Vec a = cartan_element(cartan, ac, "--a");
    OrbitPoint point = make_orbit_point(ctx.pair, w);
    doc = json_of(isotropy_shape_spectrum(point, a, system));
  } else {
    HermannConfiguration config = configuration_for(ctx, sigma_prime, seed);
    Vec w = cartan_element(config.b, wc, "--w");
    Vec v = cartan_element(config.b, ac, "--a");
    doc = json_of(hermann_orbit_spectrum(config, w, v));
    doc["sigma_prime"] = sigma_prime;
  }
  doc["space"] = ctx.entry.space;
  doc["seed"] = seed;
  doc["w"] = echo_vec(wc);
  doc["a"] = echo_vec(ac);
  emit(doc);
  return 0;
}

int run_focal(const std::string& space, const std::vector<double>& w_coeffs,
              const std::vector<double>& a_coeffs, double window,
              unsigned seed) {
  if (!(window > 0.0)) throw InvalidParams("--window must be positive");
  SpaceContext ctx = load_space(space);
  CartanSubspace cartan = maximal_abelian(ctx.pair.algebra(), ctx.pair.q_p(),
                                          ctx.pair.q_f(), seed);
  RestrictedRootSystem system = restricted_roots(ctx.pair, cartan, seed);
  Vec wc = to_vec(w_coeffs), ac = to_vec(a_coeffs);
  Vec w = cartan_element(cartan, wc, "--w");
  Vec a = cartan_element(cartan, ac, "--a");
  OrbitPoint point = make_orbit_point(ctx.pair, w);
  Json doc = json_of(complex_focal_radii(point, a, system, window));
  doc["space"] = ctx.entry.space;
  doc["seed"] = seed;
  doc["w"] = echo_vec(wc);
  doc["a"] = echo_vec(ac);
  doc["window_radius"] = window;
  emit(doc);
  return 0;
}

int run_cohom(const std::string& space, unsigned seed, bool csv) {
  CatalogEntry entry = parse_space(space);
  CohomogeneityRow row = cohomogeneity(entry, seed);
  if (csv) {
    std::cout << table_csv({row});
    return 0;
  }
  emit(json_of(row));
  return 0;
}

int run_table(int table_id, int bound, unsigned seed, bool csv) {
  std::vector<CohomogeneityRow> rows = generate_table(table_id, bound, seed);
  if (csv) {
    std::cout << table_csv(rows);
    return 0;
  }
  Json out = Json::array();
  for (const CohomogeneityRow& row : rows) out.push_back(json_of(row));
  emit(Json{{"schema", kJsonSchema},
            {"kind", "cohomogeneity_table"},
            {"table_id", table_id},
            {"param_bound", bound},
            {"rows", out}});
  return 0;
}

// ------------------------------------------------------------- verify ----

struct VerifyState {
  Json checks = Json::array();
  int failures = 0;

  void record(const std::string& suite, const std::string& space, bool ok,
              const std::string& detail) {
    checks.push_back(Json{{"suite", suite},
                          {"space", space},
                          {"status", ok ? "ok" : "fail"},
                          {"detail", detail}});
    if (!ok) ++failures;
  }
};

double projector_distance(const CMat& a, const CMat& b) {
  CMat wa = la::column_space(a);
  CMat wb = la::column_space(b);
  return (wa * wa.adjoint() - wb * wb.adjoint()).norm();
}

/// Generic Cartan coefficients: every root value stays off the singular
/// lattice on w and away from zero on a.
struct GenericDirections {
  Vec wc, ac;
};
std::optional<GenericDirections> generic_directions(
    const RestrictedRootSystem& system, std::mt19937& rng) {
  const int rank = system.cartan.rank();
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int attempt = 0; attempt < 500; ++attempt) {
    Vec wc(rank), ac(rank);
    for (int i = 0; i < rank; ++i) {
      wc(i) = 0.5 * unit(rng);
      ac(i) = unit(rng);
    }
    bool ok = true;
    for (const RestrictedRoot& root : system.roots) {
      cplx bw = root.value_at(wc), ba = root.value_at(ac);
      if (nearest_lattice_point(bw).distance < 0.05 || std::abs(bw) > 2.5 ||
          std::abs(ba) < 0.05) {
        ok = false;
        break;
      }
    }
    if (ok) return GenericDirections{wc, ac};
  }
  return std::nullopt;
}

void verify_roots(const std::string& space, const SymmetricPair& pair,
                  const CartanSubspace& cartan,
                  const RestrictedRootSystem& system, double tol,
                  VerifyState* state) {
  oracle::BruteRootResult brute = oracle::brute_force_roots(pair, cartan);
  if (static_cast<int>(brute.roots.size()) !=
      static_cast<int>(system.roots.size())) {
    state->record("roots", space, false,
                  "root count " + std::to_string(system.roots.size()) +
                      " (closed) vs " + std::to_string(brute.roots.size()) +
                      " (brute)");
    return;
  }
  if (brute.zero_dim_q != static_cast<int>(system.zero_q.cols())) {
    state->record("roots", space, false, "centralizer dimension mismatch");
    return;
  }
  // Both sides sort by the same canonical (Re, Im) tuple order.
  for (std::size_t i = 0; i < brute.roots.size(); ++i) {
    const RestrictedRoot& closed = system.roots[i];
    const oracle::BruteRoot& scan = brute.roots[i];
    double value_gap = (closed.values - scan.values).norm();
    double space_gap = projector_distance(closed.q_space, scan.q_space);
    if (closed.mult_q != scan.mult_q || value_gap > tol || space_gap > 1e-6) {
      char detail[160];
      std::snprintf(detail, sizeof(detail),
                    "root %zu: value gap %.3e, space gap %.3e, mult %d vs %d",
                    i, value_gap, space_gap, closed.mult_q, scan.mult_q);
      state->record("roots", space, false, detail);
      return;
    }
  }
  state->record("roots", space, true,
                std::to_string(brute.roots.size()) + " roots agree");
}

std::vector<oracle::ScanZero> aggregate_window(const FocalSet& focal,
                                               double window) {
  std::vector<oracle::ScanZero> out;
  for (const FocalWindowEntry& entry : focal.window) {
    if (std::abs(entry.z) > window) continue;
    bool merged = false;
    for (oracle::ScanZero& known : out)
      if (std::abs(known.z - entry.z) <= 1e-9 * (1.0 + std::abs(entry.z))) {
        known.mult += entry.mult;
        merged = true;
        break;
      }
    if (!merged) out.push_back({entry.z, entry.mult});
  }
  std::sort(out.begin(), out.end(),
            [](const oracle::ScanZero& a, const oracle::ScanZero& b) {
              double ma = std::abs(a.z), mb = std::abs(b.z);
              if (std::abs(ma - mb) > 1e-12 * (1.0 + ma)) return ma < mb;
              return std::arg(a.z) < std::arg(b.z);
            });
  return out;
}

void verify_scan(const std::string& space, const OrbitPoint& point,
                 const Vec& a, const RestrictedRootSystem& system, double tol,
                 VerifyState* state) {
  const double window = 2.5;
  AssembledOperator jac = jacobi_operator(point, a, system);
  AssembledOperator shape = isotropy_shape_operator(point, a, system);
  if (jac.matrix.rows() > 10) {
    state->record("scan", space, true, "skipped (tangent dim > 10)");
    return;
  }
  FocalSet focal = complex_focal_radii(point, a, system, window);
  std::vector<oracle::ScanZero> expected = aggregate_window(focal, window);

  oracle::ScanReport rep =
      oracle::complex_focal_scan(jac.matrix, shape.matrix, window, 0.1);
  if (rep.zeros_found.size() != expected.size()) {
    state->record("scan", space, false,
                  "zero count " + std::to_string(expected.size()) +
                      " (lattice) vs " + std::to_string(rep.zeros_found.size()) +
                      " (scan)");
    return;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    double gap = std::abs(rep.zeros_found[i].z - expected[i].z);
    if (gap > tol || rep.zeros_found[i].mult != expected[i].mult) {
      char detail[120];
      std::snprintf(detail, sizeof(detail),
                    "zero %zu: gap %.3e, mult %d vs %d", i, gap,
                    expected[i].mult, rep.zeros_found[i].mult);
      state->record("scan", space, false, detail);
      return;
    }
  }

  // Real-axis leg through the independent 1-D scan.
  std::vector<oracle::ScanZero> real_expected;
  for (const oracle::ScanZero& zero : expected)
    if (std::abs(zero.z.imag()) <= 1e-9 && zero.z.real() > 1e-9)
      real_expected.push_back(zero);
  oracle::FocalScanResult real_scan =
      oracle::determinant_focal_scan(jac.matrix, shape.matrix, window);
  if (real_scan.radii.size() != real_expected.size()) {
    state->record("scan", space, false,
                  "real zero count " + std::to_string(real_expected.size()) +
                      " (lattice) vs " + std::to_string(real_scan.radii.size()) +
                      " (1-D scan)");
    return;
  }
  for (std::size_t i = 0; i < real_expected.size(); ++i) {
    double gap = std::abs(real_scan.radii[i] - real_expected[i].z.real());
    if (gap > tol ||
        real_scan.multiplicities[i] != real_expected[i].mult) {
      state->record("scan", space, false, "real zero mismatch");
      return;
    }
  }
  state->record("scan", space, true,
                std::to_string(expected.size()) + " zeros agree (" +
                    std::to_string(real_expected.size()) + " real)");
}

void verify_integrate(const std::string& space, const SymmetricPair& pair,
                      const OrbitPoint& point, const Vec& a,
                      const RestrictedRootSystem& system, double tol,
                      VerifyState* state) {
  AssembledOperator shape = isotropy_shape_operator(point, a, system);
  if (shape.basis.cols() == 0) {
    state->record("integrate", space, true, "skipped (no tangent)");
    return;
  }
  const LieAlgebra& g = pair.algebra();
  Mat ad2 = Mat(g.ad(a) * g.ad(a));
  double worst = 0.0;
  const int cols = std::min<int>(2, static_cast<int>(shape.basis.cols()));
  for (int j = 0; j < cols; ++j) {
    Vec x = shape.basis.col(j);
    Vec ax = shape.basis * shape.matrix.col(j);
    for (double s : {0.5, 1.0, 2.0}) {
      CVec closed = strong_jacobi_field(pair, a, x.cast<cplx>(),
                                        ax.cast<cplx>(), s);
      Vec numeric = oracle::jacobi_integrate(ad2, x, -ax, s);
      double gap = (closed.real() - numeric).norm() + closed.imag().norm();
      worst = std::max(worst, gap / std::max(1.0, numeric.norm()));
    }
  }
  char detail[80];
  std::snprintf(detail, sizeof(detail), "max relative gap %.3e", worst);
  state->record("integrate", space, worst <= tol, detail);
}

void verify_variation(const std::string& space, const SymmetricPair& pair,
                      const Vec& w, const Vec& a,
                      const RestrictedRootSystem& system,
                      const OrbitPoint& point, double tol, std::mt19937& rng,
                      VerifyState* state) {
  AssembledOperator shape = isotropy_shape_operator(point, a, system);
  if (shape.basis.cols() == 0) {
    state->record("variation", space, true, "skipped (no tangent)");
    return;
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec hc(pair.h().dim());
  for (int i = 0; i < hc.size(); ++i) hc(i) = 0.3 * gauss(rng);
  Vec driver = pair.h().lift(hc);
  oracle::VariationEstimate est =
      oracle::variation_shape_estimate(pair, w, driver, a);
  if (est.velocity.norm() < 1e-9) {
    state->record("variation", space, true, "skipped (stationary driver)");
    return;
  }
  Vec coef = shape.basis.colPivHouseholderQr().solve(est.velocity);
  double contain = (shape.basis * coef - est.velocity).norm();
  if (contain > 1e-6 * est.velocity.norm()) {
    state->record("variation", space, false,
                  "variation velocity left the tangent space");
    return;
  }
  Vec ax = shape.basis * (shape.matrix * coef);
  double predicted = pair.algebra().killing_form(ax, est.velocity);
  double gap = std::abs(est.pairing - predicted) /
               std::max(1.0, std::abs(predicted));
  char detail[80];
  std::snprintf(detail, sizeof(detail), "relative gap %.3e", gap);
  state->record("variation", space, gap <= tol, detail);
}

int run_verify(const std::string& suite, int max_dim, unsigned seed,
               double tol) {
  if (suite != "all" && suite != "roots" && suite != "scan" &&
      suite != "integrate" && suite != "variation")
    throw InvalidParams("--suite must be all, roots, scan, integrate or "
                        "variation, got '" + suite + "'");
  if (max_dim < 3) throw InvalidParams("--max-dim must be at least 3");
  auto wants = [&](const char* name) {
    return suite == "all" || suite == name;
  };

  // Worklist: catalogued pairs within the dimension budget, deduplicated.
  std::vector<CatalogEntry> entries;
  for (int table_id : {1, 2, 3})
    for (CatalogEntry& entry : enumerate_table(table_id, 4)) {
      bool seen = false;
      for (const CatalogEntry& known : entries)
        if (known.space == entry.space) seen = true;
      if (!seen) entries.push_back(std::move(entry));
    }

  VerifyState state;
  int examined = 0;
  for (const CatalogEntry& entry : entries) {
    AlgebraPtr g = LieAlgebra::cached(entry.g);
    if (g->dim() > max_dim) continue;
    ++examined;
    try {
      SymmetricPair pair = SymmetricPair::build(g, entry.sigma);
      CartanSubspace cartan =
          maximal_abelian(pair.algebra(), pair.q_p(), pair.q_f(), seed);
      RestrictedRootSystem system = restricted_roots(pair, cartan, seed);

      if (wants("roots"))
        verify_roots(entry.space, pair, cartan, system, tol, &state);

      if (cartan.rank() == 0 || system.roots.empty()) continue;
      std::mt19937 rng(seed ^ (0x9e3779b9u + static_cast<unsigned>(examined)));
      std::optional<GenericDirections> dirs = generic_directions(system, rng);
      if (!dirs) {
        state.record("setup", entry.space, false,
                     "no generic direction found in 500 draws");
        continue;
      }
      Vec w = cartan.element(dirs->wc);
      Vec a = cartan.element(dirs->ac);
      OrbitPoint point = make_orbit_point(pair, w);

      if (wants("scan")) verify_scan(entry.space, point, a, system, tol, &state);
      if (wants("integrate"))
        verify_integrate(entry.space, pair, point, a, system, tol, &state);
      if (wants("variation"))
        verify_variation(entry.space, pair, w, a, system, point, tol, rng,
                         &state);
    } catch (const Error& e) {
      state.record("setup", entry.space, false, e.what());
    }
  }

  emit(Json{{"schema", kJsonSchema},
            {"kind", "verify_report"},
            {"suite", suite},
            {"max_dim", max_dim},
            {"seed", seed},
            {"tol", tol},
            {"pairs_examined", examined},
            {"checks", state.checks},
            {"failures", state.failures}});
  return state.failures == 0 ? 0 : 1;
}

} // namespace
} // namespace orbitlab::cli

int main(int argc, char** argv) {
  using namespace orbitlab;
  using namespace orbitlab::cli;

  CLI::App app{"orbit geometry of semisimple pseudo-Riemannian symmetric "
               "pairs: root systems, shape spectra, focal sets, "
               "cohomogeneity tables"};
  app.require_subcommand(1);

  std::string space, sigma_prime, suite = "all";
  std::vector<double> w_coeffs, a_coeffs;
  double window = 10.0, tol = 1e-6;
  unsigned seed = 42;
  int table_id = 1, bound = 6, max_dim = 20;
  bool csv = false;

  CLI::App* c_pairs = app.add_subcommand("pairs", "construct a pair, report dimensions");
  c_pairs->add_option("--space", space, "space descriptor, e.g. \"SL(3,R)/SO0(1,2)\"")->required();

  CLI::App* c_roots = app.add_subcommand("roots", "restricted root system");
  c_roots->add_option("--space", space)->required();
  c_roots->add_option("--sigma-prime", sigma_prime,
                      "second involution: theta, sigma*theta, or a subgroup label");
  c_roots->add_option("--seed", seed, "RNG seed (default 42)");

  CLI::App* c_spectrum = app.add_subcommand("spectrum", "shape-operator spectrum");
  c_spectrum->add_option("--space", space)->required();
  c_spectrum->add_option("--sigma-prime", sigma_prime);
  c_spectrum->add_option("--w", w_coeffs, "base point coefficients in the emitted Cartan basis")
      ->required()->delimiter(',');
  c_spectrum->add_option("--a", a_coeffs, "normal direction coefficients")
      ->required()->delimiter(',');
  c_spectrum->add_option("--seed", seed);

  CLI::App* c_focal = app.add_subcommand("focal", "complex focal radii");
  c_focal->add_option("--space", space)->required();
  c_focal->add_option("--w", w_coeffs)->required()->delimiter(',');
  c_focal->add_option("--a", a_coeffs)->required()->delimiter(',');
  c_focal->add_option("--window", window, "|z| bound for the enumerated window (default 10)");
  c_focal->add_option("--seed", seed);

  CLI::App* c_cohom = app.add_subcommand("cohom", "cohomogeneities of one pair");
  c_cohom->add_option("--space", space)->required();
  c_cohom->add_option("--seed", seed);
  c_cohom->add_flag("--csv", csv, "CSV row instead of JSON");

  CLI::App* c_table = app.add_subcommand("table", "one full cohomogeneity table");
  c_table->add_option("--id", table_id, "table number (1, 2 or 3)")->required();
  c_table->add_option("--bound", bound, "parameter bound (default 6)");
  c_table->add_option("--seed", seed);
  c_table->add_flag("--csv", csv, "CSV instead of JSON");

  CLI::App* c_verify = app.add_subcommand("verify", "oracle vs closed-form cross-checks");
  c_verify->add_option("--suite", suite, "all, roots, scan, integrate or variation");
  c_verify->add_option("--max-dim", max_dim, "largest ambient algebra dimension (default 20)");
  c_verify->add_option("--seed", seed);
  c_verify->add_option("--tol", tol, "comparison tolerance (default 1e-6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (c_pairs->parsed()) return run_pairs(space);
    if (c_roots->parsed()) return run_roots(space, sigma_prime, seed);
    if (c_spectrum->parsed())
      return run_spectrum(space, sigma_prime, w_coeffs, a_coeffs, seed);
    if (c_focal->parsed())
      return run_focal(space, w_coeffs, a_coeffs, window, seed);
    if (c_cohom->parsed()) return run_cohom(space, seed, csv);
    if (c_table->parsed()) return run_table(table_id, bound, seed, csv);
    if (c_verify->parsed()) return run_verify(suite, max_dim, seed, tol);
    std::cerr << "no verb given\n";
    return 2;
  } catch (const Error& e) {
    emit(json_error(e.code(), e.what()));
    return 1;
  } catch (const std::exception& e) {
    emit(json_error("Internal", e.what()));
    return 1;
  }
}
