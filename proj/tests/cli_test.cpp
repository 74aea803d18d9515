#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "matchbound/bounds.hpp"
#include "matchbound/constructions.hpp"
#include "matchbound/verify.hpp"
#include "oracles.hpp"

using nlohmann::json;
using namespace matchbound;

namespace {

std::string binary() {
  const char* env = std::getenv("MATCHBOUND_BIN");
  return env ? env : "build/tools/matchbound";
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the tool with stderr folded in only when asked; stdout captured.
CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd =
      "'" + binary() + "' " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args) {
  const CliResult r = run_cli(args);
  REQUIRE(r.exit_code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("count command emits decimal-string counts and digests") {
  const json rep = run_json("count transversals --cayley 5");
  CHECK(rep["command"] == "matchbound count transversals --cayley 5");
  CHECK(rep["results"]["count"] == "15");
  CHECK(rep["results"]["ln_count"].get<double>() ==
        doctest::Approx(std::log(15.0)).epsilon(1e-10));
  CHECK(rep["results"]["nodes_visited"].get<std::uint64_t>() > 0);
  const std::string digest = rep["inputs"]["cayley:5"];
  CHECK(digest.rfind("fnv1a64:", 0) == 0);
  CHECK(digest.size() == 8 + 16);
  CHECK(rep["seed"] == 0);
  CHECK(rep["versions"].contains("matchbound"));
  CHECK_FALSE(rep.contains("elapsed_seconds"));
}

TEST_CASE("file inputs are digested and routed to the parser") {
  const json rep = run_json("count matchings --square fixtures/z3.ls");
  CHECK(rep["results"]["count"] == "3");
  CHECK(rep["inputs"].contains("fixtures/z3.ls"));

  const json direct = run_json("count matchings --hypergraph fixtures/ht.bh");
  CHECK(direct["results"]["count"] == "2");
}

TEST_CASE("bound output matches the library call") {
  const json rep = run_json("bound finite --square fixtures/z3.ls");
  const BoundReport want =
      finite_matching_bound(bound_parameters(ls_to_hypergraph(cayley_cyclic(3))));
  CHECK(rep["results"]["ln_bound"].get<double>() ==
        doctest::Approx(want.ln_bound).epsilon(1e-11));
  CHECK(rep["results"]["method"] == "closed_form_k2");
  CHECK(rep["results"]["parameters"]["rho"] == 2.0);

  const json env = run_json("bound transversal-envelope --n 600");
  CHECK(env["results"]["ln_bound_2117"].get<double>() ==
        doctest::Approx(transversal_bound_ln(600)).epsilon(1e-11));
  CHECK(env["results"]["ln_envelope_e2"].get<double>() ==
        doctest::Approx(reference_envelope_ln(600)).epsilon(1e-11));
}

TEST_CASE("verify output matches the library call") {
  const json rep = run_json("verify lemma31 --square fixtures/z3.ls");
  const Lemma31Report want = verify_lemma31(ls_to_hypergraph(cayley_cyclic(3)));
  CHECK(rep["results"]["lhs_bits"].get<double>() ==
        doctest::Approx(want.lhs_bits).epsilon(1e-11));
  CHECK(rep["results"]["rhs_bits"].get<double>() ==
        doctest::Approx(want.rhs_bits).epsilon(1e-11));
  CHECK(rep["results"]["matching_count"] == "3");
  CHECK(rep["results"]["pass"] == true);

  const json dom = run_json("verify dominance --cayley 5");
  const DominanceReport dwant = verify_bound_dominance(ls_to_hypergraph(cayley_cyclic(5)));
  CHECK(dom["results"]["gap_per_a"].get<double>() ==
        doctest::Approx(dwant.gap_per_a).epsilon(1e-9));
  CHECK(dom["results"]["pass"] == true);
}

TEST_CASE("analyze runs are byte-identical") {
  const CliResult a = run_cli("analyze square --square fixtures/z5.ls");
  const CliResult b = run_cli("analyze square --square fixtures/z5.ls");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());

  const json rep = json::parse(a.out);
  CHECK(rep["results"]["count"] == "15");
  CHECK(rep["results"]["stats"]["q_avg"] == "5");
  CHECK(rep["results"]["dominance"]["pass"] == true);
}

TEST_CASE("seeded sampling is reproducible through the CLI") {
  const CliResult a = run_cli("verify sampler --cayley 5 --seed 17 --trials 1200");
  const CliResult b = run_cli("verify sampler --cayley 5 --seed 17 --trials 1200");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json rep = json::parse(a.out);
  CHECK(rep["seed"] == 17);
  CHECK(rep["results"]["dof"] == 14);
}

TEST_CASE("csv format flattens the report") {
  const CliResult r = run_cli("count transversals --cayley 3 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("results.count,3\n") != std::string::npos);
  CHECK(r.out.find("command,matchbound count transversals --cayley 3 --format csv\n") !=
        std::string::npos);
  CHECK(r.out.find("versions.matchbound,1.0.0\n") != std::string::npos);
}

TEST_CASE("timing is opt-in") {
  const json rep = run_json("count transversals --cayley 3 --timing");
  CHECK(rep.contains("elapsed_seconds"));
}

TEST_CASE("exit codes distinguish usage from domain errors") {
  CHECK(run_cli("count nonsense").exit_code == 2);
  CHECK(run_cli("count transversals").exit_code == 2);  // missing source
  CHECK(run_cli("count transversals --cayley 3 --square fixtures/z3.ls").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("count matchings --hypergraph no/such/file.bh").exit_code == 1);
  CHECK(run_cli("verify lemma31 --cayley 2").exit_code == 1);  // no matchings
  CHECK(run_cli("count transversals --cayley 9 --max-nodes 5").exit_code == 1);

  const CliResult err = run_cli("count matchings --hypergraph no/such/file.bh", true);
  CHECK(err.out.find("no/such/file.bh") != std::string::npos);
}

TEST_CASE("generation and encoding round-trip through files") {
  const std::string dir = "/tmp/matchbound_cli_test";
  REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);

  const json gen = run_json("gen cayley --n 4 --out " + dir + "/z4.ls");
  CHECK(gen["results"]["order"] == 4);
  CHECK(gen["results"]["path"] == dir + "/z4.ls");

  const json enc = run_json("encode square --square " + dir + "/z4.ls --pruned");
  CHECK(enc["results"]["edge_count"] == 0);
  CHECK(enc["results"]["excluded_cells"].size() == 16);

  const json kdd = run_json("gen kdd --d 2 --copies 2 --out " + dir + "/g.uh");
  CHECK(kdd["results"]["vertices"] == 8);
  CHECK(kdd["results"]["edge_count"] == 8);
  const json col = run_json("count colorings --graph " + dir + "/g.uh --q 2 --direct");
  CHECK(col["results"]["count"] == "4");
  CHECK(col["results"]["method"] == "direct");

  const json inc = run_json("encode incidence --graph " + dir + "/g.uh --q 2 --out " + dir +
                            "/g.bh");
  const json cnt = run_json("count matchings --hypergraph " + dir + "/g.bh");
  CHECK(cnt["results"]["count"] == "4");
  CHECK(std::system(("rm -rf " + dir).c_str()) == 0);
}

TEST_CASE("per-entry command reports the cell matrix") {
  const json rep = run_json("count per-entry --cayley 3");
  CHECK(rep["results"]["total"] == "3");
  CHECK(rep["results"]["cells"][0][0] == "1");
  CHECK(rep["results"]["cells"].size() == 3);
  CHECK(run_cli("count per-entry --cayley 13").exit_code == 1);
  CHECK(run_cli("count per-entry --cayley 13 --max-order 1").exit_code == 1);
}

TEST_CASE("thread count does not change the report") {
  const CliResult a = run_cli("count transversals --cayley 7 --threads 1");
  const CliResult b = run_cli("count transversals --cayley 7 --threads 4");
  const json ja = json::parse(a.out);
  const json jb = json::parse(b.out);
  CHECK(ja["results"] == jb["results"]);
  CHECK(ja["results"]["count"] == "133");
}
