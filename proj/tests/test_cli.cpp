#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <sstream>
#include <string>

#include "prlab/json_io.hpp"

using prlab::Json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the installed binary through /bin/sh, capturing stdout only.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + PRLAB_BIN + std::string(" ") + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

Json envelope_of(const RunResult& res) {
  REQUIRE(res.code == 0);
  Json j = Json::parse(res.out);
  REQUIRE(j.contains("manifest"));
  REQUIRE(j.contains("result"));
  return j;
}

const char* kCapConfig =
    R"('{"property":{"kind":"balanced_linear_equation","k":3,"coeffs":[1,1,-2],"field":{"p":3},"n":1}}')";

const char* kVerifyConfig =
    R"('{"property":{"kind":"balanced_linear_equation","k":3,"coeffs":[1,1,-2],"field":{"p":5},"n":2}}')";

}  // namespace

TEST_CASE("lattice envelope: manifest fields, counts, verifiable digest") {
  Json j = envelope_of(run_cli("lattice --k 4"));
  const Json& man = j["manifest"];
  CHECK(man["command"] == "lattice");
  CHECK(man["version"] == "1.0.0");
  CHECK(man["threads"].is_number());
  CHECK(man["elapsed_seconds"].is_number());

  const Json& result = j["result"];
  CHECK(result["size"] == 15);
  CHECK(result["bell"] == "15");
  CHECK(result["has_tables"] == true);
  CHECK(result["mu_bottom_top"] == "-6");
  Json ranks = Json::array({1, 6, 7, 1});
  CHECK(result["rank_counts"] == ranks);

  // The digest is FNV-1a over the serialized result, recomputable by anyone.
  std::string digest = man["digest"].get<std::string>();
  REQUIRE(digest.rfind("fnv1a64:", 0) == 0);
  std::ostringstream want;
  want << std::hex << prlab::fnv1a64(result.dump());
  CHECK(digest.substr(8) == want.str());
}

TEST_CASE("identical invocations replay to identical results and digests") {
  Json a = envelope_of(run_cli("lattice --k 5"));
  Json b = envelope_of(run_cli("lattice --k 5"));
  CHECK(a["result"] == b["result"]);
  CHECK(a["manifest"]["digest"] == b["manifest"]["digest"]);
}

TEST_CASE("lattice pair query agrees across all three mobius routes") {
  Json j = envelope_of(run_cli("lattice --k 4 --a '12|3|4' --b '12|34'"));
  const Json& pair = j["result"]["pair"];
  CHECK(pair["leq"] == true);
  CHECK(pair["mobius"] == -1);
  CHECK(pair["mobius_closed"] == "-1");
  CHECK(pair["mobius_recursive"] == "-1");
}

TEST_CASE("indicator generator output carries coefficients and diagonal") {
  Json j = envelope_of(run_cli("indicator --k 3 --generator distinctness --p 5"));
  const Json& result = j["result"];
  CHECK(result["diagonal"] == "-2");
  CHECK(result["diagonal_mod_p"] == 3);
  CHECK(result["coefficients"].size() == 4);  // mu(bottom, .) below the top of Pi_3
}

TEST_CASE("search subcommand finds the scalar cap maximum") {
  Json j = envelope_of(run_cli(std::string("search --config ") + kCapConfig));
  const Json& result = j["result"];
  CHECK(result["size"] == 2);
  CHECK(result["proof_status"] == "exact-optimal");
  CHECK(result["witness_check"] == "pass");
}

TEST_CASE("sandwich subcommand pairs the search with the catalogued bound") {
  Json j = envelope_of(run_cli(std::string("sandwich --config ") + kCapConfig));
  const Json& result = j["result"];
  CHECK(result["consistent"] == true);
  CHECK(result["bound_name"] == "balanced_equation_solution_free_bound");
  CHECK(result["search"]["size"] == 2);
}

TEST_CASE("usage errors exit with the invalid-config code") {
  CHECK(run_cli("frobnicate").code == 4);
  CHECK(run_cli("").code == 4);  // a subcommand is required
  CHECK(run_cli("bound --name nope").code == 4);
  CHECK(run_cli("verify --mode semantics --config not-json").code == 4);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("PRLAB_BUDGET caps defaulted budgets but never explicit ones") {
  RunResult starved =
      run_cli(std::string("verify --mode semantics --config ") + kVerifyConfig,
              "PRLAB_BUDGET=10 ");
  CHECK(starved.code == 3);  // 15625 tuples against a ceiling of 10

  std::string explicit_cfg = kVerifyConfig;
  explicit_cfg.insert(explicit_cfg.find("}'"), R"(,"budget":1000000)");
  RunResult ok = run_cli("verify --mode semantics --config " + explicit_cfg,
                         "PRLAB_BUDGET=10 ");
  CHECK(ok.code == 0);
  Json j = Json::parse(ok.out);
  CHECK(j["result"]["pass"] == true);

  CHECK(run_cli(std::string("verify --mode semantics --config ") + kVerifyConfig,
                "PRLAB_BUDGET=abc ")
            .code == 4);
}

TEST_CASE("quick selftest passes clean and reports every check") {
  Json j = envelope_of(run_cli("selftest"));
  const Json& result = j["result"];
  CHECK(result["level"] == "quick");
  CHECK(result["fault"] == "none");
  CHECK(result["pass"] == true);
  CHECK(result["failed"].empty());
  CHECK(result["checks"].size() >= 40);
  for (const Json& c : result["checks"]) {
    CHECK(c.contains("id"));
    CHECK(c["pass"] == true);
  }
}

TEST_CASE("fault injection trips exactly the identities that watch for it") {
  struct Case {
    const char* fault;
    const char* expected_failure;
  };
  const Case cases[] = {
      {"mobius", "zeta_mobius_identity"},
      {"order", "refinement_order_axioms"},
      {"bell", "lattice_size_matches_bell"},
      {"stirling", "rank_counts_match_stirling"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.fault);
    RunResult res = run_cli(std::string("selftest --inject-fault ") + c.fault);
    CHECK(res.code == 2);
    Json j = Json::parse(res.out);
    CHECK(j["result"]["fault"] == c.fault);
    CHECK(j["result"]["pass"] == false);
    bool named = false;
    for (const Json& id : j["result"]["failed"])
      if (id == c.expected_failure) named = true;
    CHECK(named);
  }
  CHECK(run_cli("selftest --inject-fault gremlin").code == 4);
}

TEST_CASE("human-readable mode still emits parseable JSON") {
  RunResult res = run_cli("--human lattice --k 3");
  Json j = envelope_of(res);
  CHECK(j["manifest"]["command"] == "lattice");
  CHECK(res.out.find('\n') != std::string::npos);
}
