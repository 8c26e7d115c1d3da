#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edmrank/bounds.hpp"
#include "edmrank/edm.hpp"
#include "edmrank/errors.hpp"
#include "edmrank/json_io.hpp"
#include "edmrank/nested.hpp"
#include "edmrank/nmf.hpp"
#include "edmrank/polygeom.hpp"
#include "edmrank/protocol.hpp"
#include "edmrank/version.hpp"

#include "support/nested_oracle.hpp"

namespace {

using namespace edmrank;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitSymbolicLimit = 5;
constexpr int kExitInternal = 10;

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::size_t symbolic_limit = 8;
};

std::string config_hash(const Json& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string timestamp_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Reports carry the full configuration and its hash so a rerun can be checked
// against the producing invocation; the timestamp is the one field allowed to
// differ between identical runs.
Json envelope(const std::string& command, Json config, Json report) {
  Json out;
  out["version"] = kVersion;
  out["command"] = command;
  out["config"] = std::move(config);
  out["config_hash"] = config_hash(out["config"]);
  out["timestamp"] = timestamp_utc();
  out["report"] = std::move(report);
  return out;
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::invalid_argument("cli: cannot open output file \"" + g.out + "\"");
  f << text << "\n";
}

// Accepts both bare payloads and full reports written by other subcommands,
// so `edm gen --out inst.json` feeds `nested solve --input inst.json` as is.
Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cli: cannot read input file \"" + path + "\"");
  Json j = Json::parse(f);
  while (j.is_object() && j.contains("report") && j["report"].is_object()) j = j["report"];
  return j;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) out.push_back(item);
  if (out.empty()) throw std::invalid_argument("cli: empty list \"" + s + "\"");
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const std::string& tok : split_csv(s)) out.push_back(Rational::parse(tok));
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (const std::string& tok : split_csv(s)) {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size() || v < 0) throw std::invalid_argument("cli: bad count \"" + tok + "\"");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

// ---- edm gen ---------------------------------------------------------------

struct GenOpts {
  std::string alpha;
  std::size_t random_n = 0;
  long denom_bound = 50;
};

int run_edm_gen(const GenOpts& o, const GlobalOpts& g) {
  Json config{{"subcommand", "edm gen"},
              {"alpha", o.alpha.empty() ? Json(nullptr) : Json(o.alpha)},
              {"random", o.random_n == 0 ? Json(nullptr) : Json(o.random_n)},
              {"denom_bound", o.denom_bound},
              {"seed", g.seed}};
  const AlphaVector alpha = o.alpha.empty() ? random_alpha(o.random_n, g.seed, o.denom_bound)
                                            : AlphaVector(parse_rational_list(o.alpha));
  const EdmInstance inst = EdmInstance::from_alpha(alpha);
  emit(g, envelope("edm gen", std::move(config), instance_to_json(inst)).dump(2));
  return 0;
}

// ---- claims verify ---------------------------------------------------------

struct ClaimsOpts {
  std::string alpha;
  std::size_t n = 0;
  bool force_symbolic = false;
};

int run_claims_verify(const ClaimsOpts& o, const GlobalOpts& g) {
  Json config{{"subcommand", "claims verify"},
              {"alpha", o.alpha.empty() ? Json(nullptr) : Json(o.alpha)},
              {"n", o.n == 0 ? Json(nullptr) : Json(o.n)},
              {"symbolic", o.force_symbolic},
              {"seed", g.seed},
              {"symbolic_limit", g.symbolic_limit}};
  const AlphaVector alpha =
      o.alpha.empty() ? random_alpha(o.n, g.seed) : AlphaVector(parse_rational_list(o.alpha));
  const EdmInstance inst = EdmInstance::from_alpha(alpha);
  const std::size_t n = inst.alpha.n();
  if (o.force_symbolic && n > g.symbolic_limit)
    throw SymbolicLimitError("claims: symbolic identity at n = " + std::to_string(n) +
                             " exceeds the limit " + std::to_string(g.symbolic_limit));

  Json claims = Json::object();
  bool all_pass = true;
  const auto put = [&](const std::string& key, bool pass, Json witness) {
    claims[key] = Json{{"pass", pass}, {"witness", std::move(witness)}};
    all_pass = all_pass && pass;
  };

  try {
    classical_rank_check(inst.edm, inst.alpha);
    put("claim0", true,
        Json{{"rank", 3}, {"column_space", "spanned by 1, alpha, alpha^2 (exact)"}});
  } catch (const std::invalid_argument& e) {
    put("claim0", false, e.what());
  }

  std::optional<OuterVertices> ov;
  try {
    ov = outer_vertices(inst.alpha);
    Json bad = Json::array();
    for (std::size_t k = 0; k < n; ++k) {
      Rational sum;
      for (std::size_t i = 0; i < n; ++i) sum += ov->V(i, k);
      if (sum != Rational(1)) bad.push_back(Json{{"vertex", k}, {"column_sum", sum.str()}});
      for (std::size_t i = 0; i < n; ++i) {
        const bool should_vanish = i == k || i == (k + 1) % n;
        if (should_vanish != ov->V(i, k).is_zero())
          bad.push_back(Json{{"vertex", k}, {"coordinate", i}, {"entry", ov->V(i, k).str()}});
      }
    }
    put("claim1", bad.empty(),
        bad.empty() ? Json{{"vertices", n},
                           {"support", "nonnegative, unit column sums, zeros exactly at k, k+1"}}
                    : Json{{"violations", bad}});
  } catch (const std::exception& e) {
    put("claim1", false, e.what());
  }

  std::optional<AffineChart> chart;
  try {
    chart = AffineChart::for_instance(inst);
    const OuterPolygon op = outer_polygon(inst, *chart);
    const bool slack_match =
        ov && slack_matrix_simplex_slice(*ov) == op.data.V;
    put("claim2", slack_match,
        Json{{"convex_position", true},
             {"cyclic_order", "index order, counterclockwise in the chart"},
             {"slack_entrywise", slack_match}});
  } catch (const std::exception& e) {
    put("claim2", false, e.what());
  }

  std::optional<OuterPolygon> op;
  std::optional<InnerPoints> ip;
  try {
    if (!chart) throw std::logic_error("claims: chart unavailable");
    op = outer_polygon(inst, *chart);
    ip = inner_points(inst, *chart);
    std::size_t extremal = 0, boundary = 0, interior = 0;
    for (const Extremality s : ip->status) {
      extremal += s == Extremality::Vertex;
      boundary += s == Extremality::OnBoundary;
      interior += s == Extremality::Interior;
    }
    bool contained = true;
    for (const Vec2& p : ip->points) contained = contained && polygon_contains(op->polygon, p);
    put("claim3", contained,
        Json{{"columns_inside_outer", contained},
             {"hull_vertices", extremal},
             {"on_hull_boundary", boundary},
             {"hull_interior", interior}});
  } catch (const std::exception& e) {
    put("claim3", false, e.what());
  }

  try {
    if (!op || !ip) throw std::logic_error("claims: outer polygon unavailable");
    Json untouched = Json::array();
    for (std::size_t i = 0; i < op->polygon.size(); ++i) {
      const auto [a, b] = op->polygon.edge(i);
      bool touched = false;
      for (const Vec2& p : ip->points) touched = touched || on_segment(a, b, p);
      if (!touched) untouched.push_back(i);
    }
    put("claim4", untouched.empty(),
        untouched.empty() ? Json{{"edges", n}, {"every_edge_carries_a_column", true}}
                          : Json{{"untouched_edges", untouched}});
  } catch (const std::exception& e) {
    put("claim4", false, e.what());
  }

  try {
    Json w5;
    bool sym_ok = true;
    if (n <= g.symbolic_limit) {
      sym_ok = verify_slack_identity(n, g.symbolic_limit);
      w5["symbolic_identity"] = sym_ok;
    } else {
      w5["symbolic_identity"] = "skipped: n exceeds the symbolic limit";
    }
    const AlphaVector pos = inst.alpha.positivized();
    const QMatrix sw = slack_matrix_polygon(w_polygon(pos));
    const QMatrix sv = slack_matrix_simplex_slice(outer_vertices(pos));
    const auto eq = scaling_equivalence(sw, sv);
    bool num_ok = eq.has_value();
    if (eq) {
      for (const Rational& r : eq->first) num_ok = num_ok && r > Rational(0);
      for (const Rational& r : eq->second) num_ok = num_ok && r > Rational(0);
    }
    w5["positive_diagonal_scaling"] = num_ok;
    put("claim5", sym_ok && num_ok, std::move(w5));
  } catch (const std::exception& e) {
    put("claim5", false, e.what());
  }

  try {
    const AlphaVector pos = inst.alpha.positivized();
    const Polygon2 w = w_polygon(pos);
    Json bad = Json::array();
    std::size_t rational_pairs = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 h = Rational(1, 2) * (w.vertex((k + n - 1) % n) + w.vertex(k));
      const VietaResult res = vieta_recover(w, k, h);
      const Rational root = Rational(1) / pos[k];
      if (!(root * root - res.sigma2 * root + res.sigma1).is_zero())
        bad.push_back(Json{{"edge", k},
                           {"sigma1", res.sigma1.str()},
                           {"sigma2", res.sigma2.str()},
                           {"claimed_root", root.str()}});
      rational_pairs += res.rational_roots;
    }
    put("claim6", bad.empty(),
        bad.empty() ? Json{{"edges", n},
                           {"root_check", "1/alpha_k is an exact root of t^2 - sigma2 t + sigma1"},
                           {"edges_with_two_rational_roots", rational_pairs}}
                    : Json{{"violations", bad}});
  } catch (const std::exception& e) {
    put("claim6", false, e.what());
  }

  Json report;
  report["n"] = n;
  report["alpha"] = to_json(inst.alpha.entries());
  report["claims"] = std::move(claims);
  report["all_pass"] = all_pass;
  emit(g, envelope("claims verify", std::move(config), std::move(report)).dump(2));
  return all_pass ? 0 : kExitCheckFailed;
}

// ---- nested solve ----------------------------------------------------------

struct NestedOpts {
  std::string input;
  bool oracle = false;
};

int run_nested_solve(const NestedOpts& o, const GlobalOpts& g) {
  Json config{{"subcommand", "nested solve"},
              {"input", o.input},
              {"oracle", o.oracle},
              {"seed", g.seed}};
  const Json in = read_json_file(o.input);

  NestedInstance ni = [&] {
    if (in.contains("alpha")) {
      const EdmInstance inst = instance_from_json(in);
      const AffineChart chart = AffineChart::for_instance(inst);
      return NestedInstance::make(inner_points(inst, chart).points,
                                  outer_polygon(inst, chart).polygon);
    }
    if (in.contains("inner") && in.contains("outer"))
      return NestedInstance::make(points_from_json(in["inner"]),
                                  Polygon2::from_ccw_convex(points_from_json(in["outer"])));
    throw std::invalid_argument(
        "cli: input needs \"alpha\" or \"inner\"/\"outer\" (points as [\"p/q\", \"p/q\"])");
  }();

  const NestedCertificate cert = min_nested_polygon(ni);
  Json report = certificate_to_json(cert);
  const bool check_ok = check_nested(cert, ni);
  report["check"] = check_ok;

  bool agrees = true;
  if (o.oracle) {
    if (ni.outer.size() > 12)
      throw std::invalid_argument("cli: oracle cross-check is limited to outer size <= 12");
    const std::size_t ok = testsupport::NestedOracle(ni.inner, ni.outer).solve();
    agrees = ok == cert.k;
    report["oracle"] = Json{{"k", ok}, {"agrees", agrees}};
  }
  emit(g, envelope("nested solve", std::move(config), std::move(report)).dump(2));
  return agrees && check_ok ? 0 : kExitCheckFailed;
}

// ---- nmf search ------------------------------------------------------------

struct NmfOpts {
  std::string target;
  std::size_t r = 0;
  std::size_t seeds = 16;
  std::size_t iters = 2000;
  double tol = 1e-6;
};

int run_nmf_search(const NmfOpts& o, const GlobalOpts& g) {
  Json config{{"subcommand", "nmf search"}, {"target", o.target},   {"r", o.r},
              {"seeds", o.seeds},           {"iters", o.iters},     {"tol", o.tol},
              {"seed", g.seed}};
  const Json in = read_json_file(o.target);
  const DMatrix target = in.is_array()          ? dmatrix_from_json(in)
                         : in.contains("Dprime") ? dmatrix_from_json(in["Dprime"])
                         : in.contains("D")      ? dmatrix_from_json(in["D"])
                                                 : throw std::invalid_argument(
                                                       "cli: target needs a matrix, \"Dprime\", or \"D\"");

  const auto found = nmf_search(target, o.r, o.seeds, o.iters, o.tol, g.seed);
  Json report;
  report["rows"] = target.rows();
  report["cols"] = target.cols();
  report["r"] = o.r;
  report["found"] = found.has_value();
  if (found) report["factorization"] = factorization_to_json(*found);
  emit(g, envelope("nmf search", std::move(config), std::move(report)).dump(2));
  if (!found) {
    std::cerr << "nmf search: no factorization within tolerance " << o.tol << " after "
              << o.seeds << " seeds\n";
    return kExitInfeasible;
  }
  return 0;
}

// ---- bounds bracket --------------------------------------------------------

struct BoundsOpts {
  std::string input;
  std::size_t seeds = 8;
  std::size_t iters = 500;
  double tol = 1e-9;
};

int run_bounds_bracket(const BoundsOpts& o, const GlobalOpts& g) {
  Json config{{"subcommand", "bounds bracket"},
              {"input", o.input},
              {"seeds", o.seeds},
              {"iters", o.iters},
              {"tol", o.tol},
              {"seed", g.seed}};
  const EdmInstance inst = instance_from_json(read_json_file(o.input));
  const RankBracket b = bracket_rank_plus(inst, o.seeds, o.iters, o.tol, g.seed);
  emit(g, envelope("bounds bracket", std::move(config), bracket_to_json(b)).dump(2));
  return 0;
}

// ---- protocol simulate -----------------------------------------------------

struct ProtocolOpts {
  std::string factorization;
  std::string cell;
  std::size_t trials = 100000;
};

int run_protocol_simulate(const ProtocolOpts& o, const GlobalOpts& g) {
  Json config{{"subcommand", "protocol simulate"},
              {"factorization", o.factorization},
              {"cell", o.cell},
              {"trials", o.trials},
              {"seed", g.seed}};
  const auto cell = parse_size_list(o.cell);
  if (cell.size() != 2)
    throw std::invalid_argument("cli: --cell wants two zero-based indices \"i,j\"");
  Json fj = read_json_file(o.factorization);
  if (fj.contains("factorization")) fj = fj["factorization"];
  const Factorization f = factorization_from_json(fj);
  const ExpectationProtocol p = protocol_from_factorization(f);
  const SimulationResult sim = simulate(p, cell[0], cell[1], o.trials, g.seed);

  Json report;
  report["cell"] = Json::array({cell[0], cell[1]});
  report["exact"] = sim.exact.str();
  report["empirical"] = sim.empirical;
  report["stderr"] = sim.stderr_est;
  report["bits"] = sim.bits;
  report["trials"] = sim.trials;
  emit(g, envelope("protocol simulate", std::move(config), std::move(report)).dump(2));
  return 0;
}

// ---- sweep -----------------------------------------------------------------

struct SweepOpts {
  std::string n_list;
  long denom_bound = 50;
};

int run_sweep(const SweepOpts& o, const GlobalOpts& g) {
  Json config{{"subcommand", "sweep"},
              {"n_list", o.n_list},
              {"denom_bound", o.denom_bound},
              {"seed", g.seed},
              {"format", g.format}};
  const std::vector<std::size_t> ns = parse_size_list(o.n_list);

  Json rows = Json::array();
  for (const std::size_t n : ns) {
    if (n < 3) throw std::invalid_argument("cli: sweep needs n >= 3");
    const AlphaVector alpha = random_alpha(n, g.seed + n, o.denom_bound);
    const EdmInstance inst = EdmInstance::from_alpha(alpha);
    const RankBracket b = bracket_rank_plus(inst, 0);
    const QuantumSize qs = quantum_size(inst.edm, inst.alpha);
    const Json bj = bracket_to_json(b);
    rows.push_back(Json{{"n", n},
                        {"rank", classical_rank_check(inst.edm, inst.alpha)},
                        {"lower", b.lower},
                        {"upper", b.upper},
                        {"conditional_floor", bj["conditional_lower"]["floor"]},
                        {"conditional_ceil", bj["conditional_lower"]["ceil"]},
                        {"psd_qubits", qs.qubits},
                        {"classical_bits_trivial", ceil_log2(n)}});
  }

  if (g.format == "csv") {
    std::ostringstream csv;
    csv << "# version=" << kVersion << "\n";
    csv << "# config=" << config.dump() << "\n";
    csv << "# config_hash=" << config_hash(config) << "\n";
    csv << "n,rank,lower,upper,conditional_floor,conditional_ceil,psd_qubits,"
           "classical_bits_trivial\n";
    for (const Json& r : rows) {
      csv << r["n"] << "," << r["rank"] << "," << r["lower"] << "," << r["upper"] << ","
          << r["conditional_floor"] << "," << r["conditional_ceil"] << "," << r["psd_qubits"]
          << "," << r["classical_bits_trivial"] << "\n";
    }
    std::string text = csv.str();
    text.pop_back();
    emit(g, text);
    return 0;
  }
  emit(g, envelope("sweep", std::move(config), Json{{"rows", std::move(rows)}}).dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact distance-matrix geometry, nested polygons, and rank brackets"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for all randomized steps");
  app.add_option("--out", g.out, "write the report here instead of stdout");
  app.add_option("--format", g.format, "json|csv (csv for sweep only)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--symbolic-limit", g.symbolic_limit,
                 "largest n for symbolic identity checks");

  auto* edm = app.add_subcommand("edm", "distance matrix construction");
  auto* edm_gen = edm->add_subcommand("gen", "generate an instance");
  GenOpts gen_o;
  edm_gen->add_option("--alpha", gen_o.alpha, "comma-separated rationals, e.g. 0,1/2,2");
  edm_gen->add_option("--random", gen_o.random_n, "draw this many random entries");
  edm_gen->add_option("--denom-bound", gen_o.denom_bound, "bound on random numerators/denominators");

  auto* claims = app.add_subcommand("claims", "claim-by-claim verification");
  auto* claims_verify = claims->add_subcommand("verify", "check the construction claims");
  ClaimsOpts claims_o;
  claims_verify->add_option("--alpha", claims_o.alpha, "comma-separated rationals");
  claims_verify->add_option("--n", claims_o.n, "random instance size");
  claims_verify->add_flag("--symbolic", claims_o.force_symbolic,
                          "insist on the symbolic identity check (error past the limit)");

  auto* nested = app.add_subcommand("nested", "minimum nested polygon");
  auto* nested_solve = nested->add_subcommand("solve", "solve an instance file");
  NestedOpts nested_o;
  nested_solve->add_option("--input", nested_o.input, "instance JSON")->required();
  nested_solve->add_flag("--oracle", nested_o.oracle, "cross-check with the exhaustive method");

  auto* nmf = app.add_subcommand("nmf", "nonnegative factorization search");
  auto* nmf_search_cmd = nmf->add_subcommand("search", "multiplicative-update descent");
  NmfOpts nmf_o;
  nmf_search_cmd->add_option("--target", nmf_o.target, "target matrix JSON")->required();
  nmf_search_cmd->add_option("--r", nmf_o.r, "number of terms")->required();
  nmf_search_cmd->add_option("--seeds", nmf_o.seeds, "random restarts");
  nmf_search_cmd->add_option("--iters", nmf_o.iters, "iterations per restart");
  nmf_search_cmd->add_option("--tol", nmf_o.tol, "max-abs residual to accept");

  auto* bounds = app.add_subcommand("bounds", "rank bracketing");
  auto* bounds_bracket = bounds->add_subcommand("bracket", "bracket the nonnegative rank");
  BoundsOpts bounds_o;
  bounds_bracket->add_option("--input", bounds_o.input, "instance JSON")->required();
  bounds_bracket->add_option("--seeds", bounds_o.seeds, "descent restarts (0 disables)");
  bounds_bracket->add_option("--iters", bounds_o.iters, "iterations per restart");
  bounds_bracket->add_option("--tol", bounds_o.tol, "descent acceptance residual");

  auto* protocol = app.add_subcommand("protocol", "expectation protocols");
  auto* protocol_sim = protocol->add_subcommand("simulate", "Monte Carlo one cell");
  ProtocolOpts protocol_o;
  protocol_sim->add_option("--factorization", protocol_o.factorization, "factorization JSON")
      ->required();
  protocol_sim->add_option("--cell", protocol_o.cell, "zero-based \"i,j\"")->required();
  protocol_sim->add_option("--trials", protocol_o.trials, "sample count");

  auto* sweep = app.add_subcommand("sweep", "bracket a list of random instances");
  SweepOpts sweep_o;
  sweep->add_option("--n-list", sweep_o.n_list, "comma-separated sizes, e.g. 4,8,16")->required();
  sweep->add_option("--denom-bound", sweep_o.denom_bound, "bound on random numerators/denominators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (g.format == "csv" && !sweep->parsed()) {
    std::cerr << "error: --format csv is only available for sweep\n";
    return kExitUsage;
  }

  try {
    if (edm_gen->parsed()) {
      if (gen_o.alpha.empty() == (gen_o.random_n == 0)) {
        std::cerr << "error: edm gen wants exactly one of --alpha or --random\n";
        return kExitUsage;
      }
      return run_edm_gen(gen_o, g);
    }
    if (claims_verify->parsed()) {
      if (claims_o.alpha.empty() && claims_o.n == 0) {
        std::cerr << "error: claims verify wants --alpha or --n\n";
        return kExitUsage;
      }
      return run_claims_verify(claims_o, g);
    }
    if (nested_solve->parsed()) return run_nested_solve(nested_o, g);
    if (nmf_search_cmd->parsed()) return run_nmf_search(nmf_o, g);
    if (bounds_bracket->parsed()) return run_bounds_bracket(bounds_o, g);
    if (protocol_sim->parsed()) return run_protocol_simulate(protocol_o, g);
    if (sweep->parsed()) return run_sweep(sweep_o, g);
    std::cerr << "error: missing subcommand\n";
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "error (infeasible): " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const SymbolicLimitError& e) {
    std::cerr << "error (symbolic limit): " << e.what() << "\n";
    return kExitSymbolicLimit;
  } catch (const Json::exception& e) {
    std::cerr << "error (malformed input): " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (malformed input): " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::domain_error& e) {
    std::cerr << "error (malformed input): " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error (internal): " << e.what() << "\n";
    return kExitInternal;
  }
}
