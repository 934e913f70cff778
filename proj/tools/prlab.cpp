#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "prlab/bounds.hpp"
#include "prlab/errors.hpp"
#include "prlab/field.hpp"
#include "prlab/indicator.hpp"
#include "prlab/json_io.hpp"
#include "prlab/lattice.hpp"
#include "prlab/partition.hpp"
#include "prlab/search.hpp"
#include "prlab/selftest.hpp"
#include "prlab/verify.hpp"

namespace {

using prlab::Json;

constexpr const char* kVersion = "1.0.0";

struct GlobalOpts {
  bool human = false;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

// Inline JSON, or @path to read a file.
Json parse_json_arg(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw prlab::invalid_config("cannot read config file " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const std::exception& e) {
    throw prlab::invalid_config(std::string("config is not valid JSON: ") + e.what());
  }
}

std::uint64_t env_budget(std::uint64_t fallback) {
  const char* env = std::getenv("PRLAB_BUDGET");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0' || v == 0)
    throw prlab::invalid_config("PRLAB_BUDGET must be a positive integer");
  return static_cast<std::uint64_t>(v);
}

std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << v;
  return ss.str();
}

// The digest covers the result text alone, so replays can be compared even
// though the manifest carries wall-clock timing.
int emit(const std::string& command, const Json& config_echo, const Json& result,
         const GlobalOpts& g, std::chrono::steady_clock::time_point start) {
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json manifest{{"command", command},
                {"config", config_echo},
                {"version", kVersion},
                {"seed", g.seed},
                {"threads", g.threads},
                {"elapsed_seconds", elapsed},
                {"digest", "fnv1a64:" + hex64(prlab::fnv1a64(result.dump()))}};
  Json envelope{{"manifest", manifest}, {"result", result}};
  std::cout << (g.human ? envelope.dump(2) : envelope.dump()) << "\n";
  return prlab::exit_ok;
}

prlab::FieldSpec prime_spec(std::uint32_t p, std::uint32_t ell) {
  prlab::FieldSpec spec;
  spec.p = p;
  spec.ell = ell;
  return spec;
}

// ---- subcommand handlers ----

int run_lattice(int k, const std::string& a_text, const std::string& b_text,
                const GlobalOpts& g, std::chrono::steady_clock::time_point start) {
  prlab::PartitionLattice lat(k);
  Json result{{"k", k},
              {"size", lat.size()},
              {"bell", prlab::json_of(prlab::bell(k))},
              {"has_tables", lat.has_tables()},
              {"mu_bottom_top", prlab::json_of(prlab::Int(lat.mobius(lat.bottom(), lat.top())))}};
  Json ranks = Json::array();
  for (int r = 0; r <= k - 1; ++r) ranks.push_back(lat.rank_end(r) - lat.rank_begin(r));
  result["rank_counts"] = ranks;
  if (!a_text.empty() || !b_text.empty()) {
    if (a_text.empty() || b_text.empty())
      throw prlab::invalid_config("--a and --b must be given together");
    std::size_t a = lat.index_of(prlab::parse_partition(a_text, k));
    std::size_t b = lat.index_of(prlab::parse_partition(b_text, k));
    result["pair"] = Json{{"a", prlab::format_partition(lat.partition(a))},
                          {"b", prlab::format_partition(lat.partition(b))},
                          {"leq", lat.leq(a, b)},
                          {"mobius", lat.mobius(a, b)},
                          {"mobius_closed", prlab::json_of(prlab::mobius_closed_form(
                                                lat.partition(a), lat.partition(b)))},
                          {"mobius_recursive",
                           prlab::json_of(prlab::mobius_recursive(lat, a, b))}};
  }
  Json echo{{"k", k}};
  if (!a_text.empty()) echo["a"] = a_text;
  if (!b_text.empty()) echo["b"] = b_text;
  return emit("lattice", echo, result, g, start);
}

int run_indicator(int k, const std::string& generator, int rank, const std::string& f_text,
                  std::uint32_t p, std::uint32_t harmonic_p, const GlobalOpts& g,
                  std::chrono::steady_clock::time_point start) {
  if (harmonic_p != 0) {
    prlab::HarmonicRecoveryReport rep = prlab::harmonic_sum_recovery(harmonic_p);
    return emit("indicator", Json{{"harmonic_p", harmonic_p}}, prlab::json_of(rep), g, start);
  }
  prlab::PartitionLattice lat(k);
  prlab::PartitionFunction f;
  Json echo{{"k", k}};
  if (!f_text.empty()) {
    Json jf = parse_json_arg(f_text);
    f = prlab::partition_function_from(lat, jf);
    echo["f"] = jf;
  } else if (generator == "distinctness") {
    f = prlab::distinctness_generator(lat);
    echo["generator"] = generator;
  } else if (generator == "rank") {
    f = prlab::rank_generator(lat, rank);
    echo["generator"] = generator;
    echo["rank"] = rank;
  } else {
    throw prlab::invalid_config("give --f or --generator distinctness|rank");
  }
  auto coeffs = prlab::indicator_coefficients(lat, f);
  Json jc = Json::object();
  for (std::size_t t = 0; t + 1 < lat.size(); ++t)
    if (coeffs[t] != 0)
      jc[prlab::format_partition(lat.partition(t))] = prlab::json_of(coeffs[t]);
  Json result{{"f", prlab::json_of(lat, f)},
              {"coefficients", jc},
              {"diagonal", prlab::json_of(prlab::diagonal_value(lat, f))}};
  if (p != 0) {
    prlab::Field fld(prime_spec(p, 1));
    result["diagonal_mod_p"] =
        static_cast<std::uint64_t>(prlab::reduce_mod(fld, prlab::diagonal_value(lat, f)));
    echo["p"] = p;
  }
  return emit("indicator", echo, result, g, start);
}

int run_verify(const std::string& mode, const std::string& config_text, const GlobalOpts& g,
               std::chrono::steady_clock::time_point start) {
  Json config = parse_json_arg(config_text);
  prlab::PropertySpec prop = prlab::property_spec_from(config.at("property"));
  prlab::Field fld(prop.field);
  std::uint64_t budget = config.contains("budget")
                             ? config.at("budget").get<std::uint64_t>()
                             : env_budget(1'000'000);

  Json result;
  if (mode == "semantics") {
    prlab::VerifyMode vm = prlab::VerifyMode::exhaustive;
    if (config.value("verify_mode", std::string("exhaustive")) == "sampled")
      vm = prlab::VerifyMode::sampled;
    std::uint64_t samples = config.value("samples", std::uint64_t{2000});
    std::uint64_t seed = g.seed_given ? g.seed : config.value("seed", std::uint64_t{0});
    result = prlab::json_of(fld, prlab::verify_tensor_semantics(prop, fld, vm, budget, seed,
                                                                samples));
  } else if (mode == "decomposition" || mode == "diagonalization") {
    prlab::PartitionLattice lat(prop.k);
    prlab::PartitionFunction f = prlab::partition_function_from(lat, config.at("f"));
    std::vector<prlab::Vec> pts = prlab::vecs_from(fld, config.at("points"), prop.n);
    if (mode == "decomposition")
      result = prlab::json_of(fld, prlab::verify_decomposition(lat, f, prop, fld, pts, budget));
    else
      result = prlab::json_of(fld, prlab::verify_diagonalization(lat, f, prop, fld, pts, budget));
  } else {
    throw prlab::invalid_config("verify mode must be semantics|decomposition|diagonalization");
  }
  Json echo{{"mode", mode}, {"config", config}};
  return emit("verify", echo, result, g, start);
}

int run_bound(const std::string& name, int n, std::uint64_t q, std::uint32_t p, int k, int m,
              long long deg, int r, long long d, const std::string& x_text,
              const GlobalOpts& g, std::chrono::steady_clock::time_point start) {
  Json echo{{"name", name}, {"n", n}, {"q", q}, {"p", p},
            {"k", k},       {"m", m}, {"deg", deg}, {"r", r}};
  Json result;
  if (name == "obtuse") {
    result = prlab::json_of(prlab::bound_obtuse(n, q));
  } else if (name == "linear-equation") {
    result = prlab::json_of(prlab::bound_linear_equation(n, p, k, m));
  } else if (name == "prank-linear") {
    result = Json{{"value", prlab::json_of(prlab::partition_rank_upper_bound_linear(n, p, k, m))}};
  } else if (name == "prank-poly") {
    result = prlab::json_of(prlab::partition_rank_upper_bound_polynomial(n, k, m, deg, q));
  } else if (name == "exponent") {
    result = prlab::json_of(prlab::gamma_exponent_identifier(k, m, deg, q));
  } else if (name == "poset-lemma") {
    if (p != 0) {
      prlab::Field fld(prime_spec(p, 1));
      result = prlab::json_of(prlab::verify_poset_lemma(k, r, &fld));
    } else {
      result = prlab::json_of(prlab::verify_poset_lemma(k, r));
    }
  } else if (name == "monomial-count") {
    echo["d"] = d;
    result = Json{{"value", prlab::json_of(prlab::exact_bounded_monomial_count(n, p, d))}};
  } else if (name == "markov") {
    echo["x"] = x_text;
    prlab::Rat x = prlab::rat_from(Json(x_text));
    result = Json{{"value", prlab::json_of(prlab::markov_bound(n, p, m, x))}};
  } else {
    throw prlab::invalid_config("unknown bound name: " + name);
  }
  return emit("bound", echo, result, g, start);
}

std::vector<std::uint32_t> parse_u32_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  return out;
}

int run_gamma(std::uint32_t p, int m, const std::string& tol_text, const std::string& ps_text,
              const std::string& ms_text, const GlobalOpts& g,
              std::chrono::steady_clock::time_point start) {
  if (!ps_text.empty() || !ms_text.empty()) {
    if (ps_text.empty() || ms_text.empty())
      throw prlab::invalid_config("--ps and --ms must be given together");
    auto ps = parse_u32_list(ps_text);
    std::vector<int> ms;
    for (auto v : parse_u32_list(ms_text)) ms.push_back(static_cast<int>(v));
    Json echo{{"ps", ps_text}, {"ms", ms_text}};
    return emit("gamma", echo, prlab::json_of(prlab::gamma_range_check(ps, ms)), g, start);
  }
  prlab::Rat tol = prlab::rat_from(Json(tol_text));
  Json echo{{"p", p}, {"m", m}, {"tol", tol_text}};
  return emit("gamma", echo, prlab::json_of(prlab::gamma_minimum(p, m, tol)), g, start);
}

prlab::SearchConfig load_search_config(const Json& config, const GlobalOpts& g) {
  prlab::SearchConfig sc = prlab::search_config_from(config);
  if (g.threads != 0) sc.threads = g.threads;
  if (g.seed_given) sc.seed = g.seed;
  if (!config.contains("node_budget")) sc.node_budget = env_budget(sc.node_budget);
  return sc;
}

int run_search(const std::string& config_text, bool naive, const GlobalOpts& g,
               std::chrono::steady_clock::time_point start) {
  Json config = parse_json_arg(config_text);
  prlab::SearchConfig sc = load_search_config(config, g);
  prlab::Field fld(sc.field);
  prlab::SearchResult res =
      naive ? prlab::max_avoiding_set_naive(sc) : prlab::max_avoiding_set(sc);
  Json echo = prlab::json_of(sc);
  echo["naive"] = naive;
  return emit("search", echo, prlab::json_of(fld, res), g, start);
}

int run_sandwich(const std::string& config_text, const GlobalOpts& g,
                 std::chrono::steady_clock::time_point start) {
  Json config = parse_json_arg(config_text);
  prlab::SearchConfig sc = load_search_config(config, g);
  prlab::Field fld(sc.field);
  prlab::BoundReport bound;
  switch (sc.property.kind) {
    case prlab::PropertyKind::balanced_linear_equation: {
      int m = sc.property.max_distinct == 0 ? sc.property.k : sc.property.max_distinct;
      bound = prlab::bound_linear_equation(sc.n, fld.p(), sc.property.k, m);
      break;
    }
    case prlab::PropertyKind::acute_angle:
    case prlab::PropertyKind::obtuse_angle:
      bound = prlab::bound_obtuse(sc.n, fld.q());
      break;
    default:
      throw prlab::invalid_config("no analytic bound catalogued for kind " +
                                  prlab::kind_name(sc.property.kind));
  }
  prlab::SandwichReport rep = prlab::sandwich_report(sc, bound);
  Json result = prlab::json_of(fld, rep);
  result["bound"] = prlab::json_of(bound);
  return emit("sandwich", prlab::json_of(sc), result, g, start);
}

int run_selftest(bool full, const std::string& fault_text, const GlobalOpts& g,
                 std::chrono::steady_clock::time_point start) {
  prlab::FaultTarget fault = prlab::fault_from_name(fault_text);
  prlab::SelftestReport rep = prlab::run_selftest(full, fault);
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back(Json{{"id", c.id},
                          {"pass", c.pass},
                          {"detail", c.detail},
                          {"seconds", c.seconds}});
  Json result{{"level", rep.level},
              {"fault", rep.fault},
              {"checks", checks},
              {"failed", rep.failed},
              {"pass", rep.pass}};
  Json echo{{"level", rep.level}, {"fault", rep.fault}};
  emit("selftest", echo, result, g, start);
  return rep.pass ? prlab::exit_ok : prlab::exit_check_failure;
}

}  // namespace

int main(int argc, char** argv) {
  auto start = std::chrono::steady_clock::now();
  CLI::App app{"partition-rank toolkit"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_flag("--human", g.human, "pretty-print the JSON envelope");
  app.add_option("--threads", g.threads, "worker threads (0 = available parallelism)");
  auto* seed_opt = app.add_option("--seed", g.seed, "seed for sampled/randomized operations");

  auto* lattice = app.add_subcommand("lattice", "partition lattice summaries and pair queries");
  int lat_k = 4;
  std::string lat_a, lat_b;
  lattice->add_option("--k", lat_k, "ground set size")->required();
  lattice->add_option("--a", lat_a, "partition string, e.g. '12|3'");
  lattice->add_option("--b", lat_b, "partition string");

  auto* indicator = app.add_subcommand("indicator", "partition functions and indicators");
  int ind_k = 3, ind_rank = 0;
  std::string ind_gen, ind_f;
  std::uint32_t ind_p = 0, ind_harmonic = 0;
  indicator->add_option("--k", ind_k, "ground set size");
  indicator->add_option("--generator", ind_gen, "distinctness|rank");
  indicator->add_option("--rank", ind_rank, "rank for --generator rank");
  indicator->add_option("--f", ind_f, "partition function as JSON (or @file)");
  indicator->add_option("--p", ind_p, "also reduce mod p");
  indicator->add_option("--recover-harmonic", ind_harmonic,
                        "run the harmonic-inverse recovery for this prime");

  auto* verify = app.add_subcommand("verify", "tensor semantics and indicator identities");
  std::string ver_mode, ver_config;
  verify->add_option("--mode", ver_mode, "semantics|decomposition|diagonalization")->required();
  verify->add_option("--config", ver_config, "JSON config (or @file)")->required();

  auto* bound = app.add_subcommand("bound", "closed-form bounds and their cross-checks");
  std::string bound_name, bound_x = "1/2";
  int b_n = 1, b_k = 3, b_m = 3, b_r = 0;
  long long b_deg = 2, b_d = 0;
  std::uint64_t b_q = 3;
  std::uint32_t b_p = 0;
  bound->add_option("--name", bound_name)->required();
  bound->add_option("--n", b_n);
  bound->add_option("--q", b_q);
  bound->add_option("--p", b_p);
  bound->add_option("--k", b_k);
  bound->add_option("--m", b_m);
  bound->add_option("--deg", b_deg);
  bound->add_option("--r", b_r);
  bound->add_option("--d", b_d);
  bound->add_option("--x", bound_x, "evaluation point as a rational string");

  auto* gamma = app.add_subcommand("gamma", "certified minima of the exponential base");
  std::uint32_t gam_p = 3;
  int gam_m = 3;
  std::string gam_tol = "1/1000000000", gam_ps, gam_ms;
  gamma->add_option("--p", gam_p);
  gamma->add_option("--m", gam_m);
  gamma->add_option("--tol", gam_tol, "bracket width as a rational string");
  gamma->add_option("--ps", gam_ps, "comma list for the range check");
  gamma->add_option("--ms", gam_ms, "comma list for the range check");

  auto* search = app.add_subcommand("search", "maximum property-avoiding sets");
  std::string search_config;
  bool search_naive = false;
  search->add_option("--config", search_config, "SearchConfig JSON (or @file)")->required();
  search->add_flag("--naive", search_naive, "complete all-subsets oracle");

  auto* sandwich = app.add_subcommand("sandwich", "search maximum against the analytic bound");
  std::string sandwich_config;
  sandwich->add_option("--config", sandwich_config, "SearchConfig JSON (or @file)")->required();

  auto* selftest = app.add_subcommand("selftest", "identity inventory");
  bool st_full = false;
  std::string st_fault;
  selftest->add_flag("--full", st_full, "run the heavy exhaustive suites too");
  selftest->add_option("--inject-fault", st_fault, "mobius|order|stirling|bell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? prlab::exit_ok : prlab::exit_invalid_config;
  }

  g.seed_given = seed_opt->count() > 0;
  try {
    if (*lattice) return run_lattice(lat_k, lat_a, lat_b, g, start);
    if (*indicator)
      return run_indicator(ind_k, ind_gen, ind_rank, ind_f, ind_p, ind_harmonic, g, start);
    if (*verify) return run_verify(ver_mode, ver_config, g, start);
    if (*bound)
      return run_bound(bound_name, b_n, b_q, b_p, b_k, b_m, b_deg, b_r, b_d, bound_x, g, start);
    if (*gamma) return run_gamma(gam_p, gam_m, gam_tol, gam_ps, gam_ms, g, start);
    if (*search) return run_search(search_config, search_naive, g, start);
    if (*sandwich) return run_sandwich(sandwich_config, g, start);
    if (*selftest) return run_selftest(st_full, st_fault, g, start);
  } catch (const prlab::error& e) {
    std::cerr << Json{{"error", e.what()}, {"exit_code", e.exit_code()}}.dump() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}, {"exit_code", prlab::exit_check_failure}}.dump()
              << "\n";
    return prlab::exit_check_failure;
  }
  return prlab::exit_invalid_config;
}
