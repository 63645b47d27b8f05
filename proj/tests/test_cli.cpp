#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "relq/cli.hpp"
#include "relq/extension.hpp"
#include "relq/urel.hpp"

using namespace relq;

namespace {

std::pair<int, std::string> run_bin(const std::string& args,
                                    const std::string& env = "") {
  const char* exe = std::getenv("RELQ_CLI");
  REQUIRE_MESSAGE(exe != nullptr, "RELQ_CLI must point at the binary");
  std::string cmd = env + "\"" + std::string(exe) + "\" " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

void put_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  REQUIRE(f.good());
  f << text;
}

std::vector<std::string> failing_laws(const LawReport& rep) {
  std::vector<std::string> out;
  for (const LawResult& r : rep.results)
    if (r.status == "fail") out.push_back(r.law);
  std::sort(out.begin(), out.end());
  return out;
}

const LaxExtension& kl_pow() {
  static LaxExtension E = kleisli_extension(enriched_powerset());
  return E;
}

}  // namespace

TEST_CASE("quantale spec text round-trips through parse and echo") {
  for (const char* name : {"two", "chain_min(3)", "pow_monoid"}) {
    QPtr Q = builtin_quantale(name);
    QuantaleSpec spec = parse_quantale_text(quantale_text(Q));
    QPtr R = make_quantale(spec, "roundtrip");
    CHECK(R->labels == Q->labels);
    CHECK(R->unit == Q->unit);
    CHECK(R->leq_ == Q->leq_);
    CHECK(R->tensor_ == Q->tensor_);
  }
}

TEST_CASE("quantale spec parsing reports malformed input by line") {
  CHECK_THROWS_AS(parse_quantale_text("unit e\n"), UsageError);
  const std::string head = "elements 0 1\nunit 1\n";
  const std::string full =
      "tensor 0 0 0\ntensor 0 1 0\ntensor 1 0 0\ntensor 1 1 1\n";
  CHECK_NOTHROW(parse_quantale_text(head + full));
  // missing unit, unknown labels, arity, conflicts, gaps, duplicates
  CHECK_THROWS_WITH(parse_quantale_text("elements 0 1\n" + full),
                    doctest::Contains("missing unit"));
  CHECK_THROWS_WITH(parse_quantale_text(head + full + "leq 0 2\n"),
                    doctest::Contains("line 7"));
  CHECK_THROWS_WITH(parse_quantale_text(head + full + "leq 0\n"),
                    doctest::Contains("two labels"));
  CHECK_THROWS_WITH(parse_quantale_text(head + full + "tensor 1 1 0\n"),
                    doctest::Contains("conflicting tensor"));
  CHECK_THROWS_WITH(parse_quantale_text(head + "tensor 0 0 0\n"),
                    doctest::Contains("tensor undefined at (0,1)"));
  CHECK_THROWS_WITH(parse_quantale_text("elements 0 0\nunit 0\n"),
                    doctest::Contains("duplicate label"));
  CHECK_THROWS_WITH(parse_quantale_text(head + full + "frob 1\n"),
                    doctest::Contains("unknown keyword"));
  // comments and blank lines are ignored
  CHECK_NOTHROW(parse_quantale_text("# c\n\n" + head + "# mid\n" + full));
}

TEST_CASE("relation spec text round-trips and omits bottom entries") {
  QPtr V = builtin_quantale("chain_min(3)");
  FinSet X = make_finset({"a", "b"});
  FinSet Y = make_finset({"c", "d", "e"});
  VRel r = make_vrel(V, X, Y);
  r.m = {0, 1, 2, 2, 0, 1};
  std::string text = relation_text(r);
  CHECK(text.find("entry a c") == std::string::npos);
  VRel back = parse_relation_text(text, V);
  CHECK(rel_eq(back, r));
  // a file with no entry lines is the bottom relation
  VRel bot = parse_relation_text("source a b\ntarget c d e\n", V);
  CHECK(rel_eq(bot, make_vrel(V, X, Y)));
  // `entries` is accepted as the keyword
  VRel one = parse_relation_text("source a\ntarget c\nentries a c 2\n", V);
  CHECK(one.at(0, 0) == 2);
}

TEST_CASE("relation spec parsing rejects bad labels and duplicates") {
  QPtr V = builtin_quantale("two");
  CHECK_THROWS_WITH(parse_relation_text("source a\nentry a a 1\n", V),
                    doctest::Contains("missing target"));
  CHECK_THROWS_WITH(
      parse_relation_text("source a\ntarget b\nentry a c 1\n", V),
      doctest::Contains("unknown target element c"));
  CHECK_THROWS_WITH(
      parse_relation_text("source a\ntarget b\nentry a b 7\n", V),
      doctest::Contains("unknown value 7"));
  CHECK_THROWS_WITH(
      parse_relation_text("source a\ntarget b\nentry a b 1\nentry a b 0\n", V),
      doctest::Contains("duplicate entry"));
  CHECK_THROWS_WITH(
      parse_relation_text("source a\ntarget b\nsource a\nentry a b 1\n", V),
      doctest::Contains("duplicate source"));
}

TEST_CASE("swapped residual tables fail the adjunction laws") {
  QPtr Q = mutate_swap_residuals(builtin_quantale("pow_monoid"));
  LawReport rep = check_residual_tables(Q);
  CHECK(failing_laws(rep) ==
        std::vector<std::string>{"left-adjunction", "right-adjunction"});
  CHECK(!rep.find("left-adjunction")->witness.empty());
  // invisible on commutative quantales, so refused there
  CHECK_THROWS_AS(mutate_swap_residuals(builtin_quantale("two")), UsageError);
}

TEST_CASE("a rerouted mult image fails naturality of the flattening") {
  LawReport rep =
      check_monad_laws(mutate_corrupt_mult(powerset_monad()),
                       default_test_sets(2), {});
  CHECK(failing_laws(rep) ==
        std::vector<std::string>{"mult-assoc", "mult-natural"});
  CHECK(!rep.find("mult-natural")->witness.empty());
}

TEST_CASE("a scrambled comparison fails its naturality law") {
  MonadMorphism tau =
      mutate_scramble_tau(builtin_tau("two_iso", builtin_quantale("two")));
  LawReport rep = check_monad_morphism(tau, default_test_sets(2), {});
  CHECK(failing_laws(rep) == std::vector<std::string>{"mult", "natural"});
  CHECK(!rep.find("natural")->witness.empty());
  CHECK(rep.find("unit")->status == "pass");
}

TEST_CASE("transposed extension outputs fail the cograph condition") {
  LawReport rep = check_lax_extension(mutate_transpose(kl_pow()), {1, 2}, {});
  CHECK(failing_laws(rep) ==
        std::vector<std::string>{"cond2-graph", "cond3-cograph-whisker",
                                 "cond4-compose", "cond5-mult", "cond6-unit"});
  CHECK(!rep.find("cond3-cograph-whisker")->witness.empty());
}

TEST_CASE("dropping the unit bootstrap fails the convolution unit law") {
  LawReport rep = check_urel_laws(mutate_drop_unit(kl_pow()), {1, 2}, {});
  CHECK(failing_laws(rep) ==
        std::vector<std::string>{"hom-unit", "sharp-unitary", "unit-right",
                                 "unitary-two-forms"});
  CHECK(!rep.find("unit-right")->witness.empty());
}

TEST_CASE("run executes a configuration against stream sinks") {
  std::ostringstream out, err;
  RunConfig cfg;
  cfg.group = "laws";
  cfg.action = "quantale";
  cfg.name = "chain_min(3)";
  CHECK(run(cfg, out, err) == 0);
  CHECK(out.str().find("left-adjunction\tpass") != std::string::npos);
  CHECK(err.str().empty());

  RunConfig bad = cfg;
  bad.name = "nope";
  std::ostringstream o2, e2;
  CHECK(run(bad, o2, e2) == 2);
  CHECK(e2.str().find("unknown quantale") != std::string::npos);

  RunConfig mut;
  mut.group = "laws";
  mut.action = "extension";
  mut.quantale = "two";
  mut.monad = "powerset";
  mut.tau = "two_iso";
  mut.mutate = "transpose";
  std::ostringstream o3, e3;
  CHECK(run(mut, o3, e3) == 1);
  CHECK(o3.str().find("cond3-cograph-whisker\tfail\t") != std::string::npos);
}

TEST_CASE("the binary passes the pinned command lines") {
  auto [rc1, out1] = run_bin("laws quantale --name 'chain_min(3)'");
  CHECK(rc1 == 0);
  CHECK(out1.find("18 passed, 0 failed") != std::string::npos);

  auto [rc2, out2] = run_bin(
      "check adjunction --monad powerset --tau two_iso --quantale two "
      "--sizes 1");
  CHECK(rc2 == 0);
  CHECK(out2.find("\tfail\t") == std::string::npos);

  auto [rc3, out3] = run_bin(
      "laws extension --monad powerset --tau two_iso --quantale two "
      "--mutate transpose");
  CHECK(rc3 == 1);
  CHECK(out3.find("cond3-cograph-whisker\tfail\t") != std::string::npos);
  // the failing record carries a usable witness between status and duration
  auto at = out3.find("cond3-cograph-whisker\tfail\t");
  auto rest = out3.substr(at);
  CHECK(rest.substr(0, rest.find('\n')).find("r#") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs with one seed") {
  const std::string cmd =
      "laws extension --quantale 'chain_min(3)' --sizes 1,2 --seed 5";
  auto a = run_bin(cmd);
  auto b = run_bin(cmd);
  CHECK(a.first == 0);
  CHECK(a.second == b.second);
  auto c = run_bin("crosscheck top-preorder --size 2");
  auto d = run_bin("crosscheck top-preorder --size 2");
  CHECK(c.first == 0);
  CHECK(c.second == d.second);
}

TEST_CASE("environment variables stand in for flags and flags win") {
  // popen goes through sh, so assignments can prefix the command
  auto [rc1, out1] = run_bin("laws extension --sizes 1", "RELQ_QUANTALE=two ");
  (void)out1;
  CHECK(rc1 == 0);
  auto [rc2, out2] = run_bin("laws extension --quantale two --sizes 1",
                             "RELQ_QUANTALE=nope ");
  CHECK(rc2 == 0);
  auto [rc3, out3] = run_bin("laws extension --sizes 1");
  CHECK(rc3 == 2);
  CHECK(out3.find("quantale is required") != std::string::npos);
}

TEST_CASE("compute pipes relation files through an operation") {
  put_file("tmp_cli_a.rel", "source c\ntarget d\nentry c d 1\n");
  put_file("tmp_cli_b.rel", "source a b\ntarget c\nentry a c 1\n");
  auto [rc, out] =
      run_bin("compute compose tmp_cli_a.rel tmp_cli_b.rel --quantale two");
  CHECK(rc == 0);
  CHECK(out == "source a b\ntarget d\nentry a d 1\n");
  auto [rc2, out2] =
      run_bin("compute opposite tmp_cli_a.rel --quantale two");
  CHECK(rc2 == 0);
  CHECK(out2 == "source d\ntarget c\nentry d c 1\n");
  // boundary mismatches are configuration errors
  auto [rc3, out3] =
      run_bin("compute compose tmp_cli_b.rel tmp_cli_a.rel --quantale two");
  CHECK(rc3 == 2);
  CHECK(out3.find("boundary mismatch") != std::string::npos);
  std::remove("tmp_cli_a.rel");
  std::remove("tmp_cli_b.rel");
}

TEST_CASE("the out flag captures exactly the machine records") {
  auto [rc, out] = run_bin(
      "check adjunction --monad powerset --tau two_iso --quantale two "
      "--sizes 1 --out tmp_cli_mach.txt");
  CHECK(rc == 0);
  std::ifstream f("tmp_cli_mach.txt", std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream fs;
  fs << f.rdbuf();
  const std::string mach = fs.str();
  CHECK(!mach.empty());
  CHECK(out.substr(0, mach.size()) == mach);
  for (std::size_t pos = mach.find('\n'), prev = 0; prev < mach.size();
       prev = pos + 1, pos = mach.find('\n', prev)) {
    if (pos == std::string::npos) break;
    CHECK(std::count(mach.begin() + prev, mach.begin() + pos, '\t') == 4);
  }
  std::remove("tmp_cli_mach.txt");
}

TEST_CASE("oversized enumerations exit with the cap status and estimate") {
  auto [rc, out] = run_bin(
      "enumerate algebras --extension kleisli --monad 'pv(chain_min(3))' "
      "--quantale 'chain_min(3)' --sizes 1,2");
  CHECK(rc == 3);
  CHECK(out.find("size 1: 1") != std::string::npos);
  CHECK(out.find("requires 387420489") != std::string::npos);
}

TEST_CASE("structure checks read files and print hand-checkable failures") {
  put_file("tmp_cli_pre.rel",
           "source a b\ntarget a b\nentry a a 1\nentry a b 1\nentry b b 1\n");
  put_file("tmp_cli_bad.rel", "source a b\ntarget a b\nentry a a 1\n");
  auto [rc, out] = run_bin("check vcat tmp_cli_pre.rel --quantale two");
  CHECK(rc == 0);
  auto [rc2, out2] = run_bin("check vcat tmp_cli_bad.rel --quantale two");
  CHECK(rc2 == 1);
  CHECK(out2.find("FAIL vcat :: reflexive :: unit !<= a(b,b)") !=
        std::string::npos);
  CHECK(out2.find("structure:\nsource a b") != std::string::npos);
  auto [rc3, out3] = run_bin(
      "check vfunctor tmp_cli_pre.rel tmp_cli_pre.rel --map b,a "
      "--quantale two");
  CHECK(rc3 == 1);
  CHECK(out3.find("a(a,b) = 1 !<= b(b,a) = 0") != std::string::npos);
  auto [rc4, out4] = run_bin(
      "check vfunctor tmp_cli_pre.rel tmp_cli_pre.rel --map a,b "
      "--quantale two");
  CHECK(rc4 == 0);
  (void)out;
  (void)out4;
  std::remove("tmp_cli_pre.rel");
  std::remove("tmp_cli_bad.rel");
}

TEST_CASE("quantale files validate, echo normalized tables and run laws") {
  put_file("tmp_cli_q.qnt",
           "elements 0 1\nunit 1\nleq 0 1\n"
           "tensor 0 0 0\ntensor 0 1 0\ntensor 1 0 0\ntensor 1 1 1\n");
  auto [rc, out] = run_bin("laws quantale --file tmp_cli_q.qnt");
  CHECK(rc == 0);
  CHECK(out.find("normalized form:\nelements 0 1\nunit 1\n") !=
        std::string::npos);
  CHECK(out.find("leq 0 0\n") != std::string::npos);
  // a non-associative tensor is a law failure, not a parse error
  put_file("tmp_cli_qbad.qnt",
           "elements 0 1\nunit 1\nleq 0 1\n"
           "tensor 0 0 1\ntensor 0 1 0\ntensor 1 0 0\ntensor 1 1 1\n");
  auto [rc2, out2] = run_bin("laws quantale --file tmp_cli_qbad.qnt");
  CHECK(rc2 == 1);
  CHECK(out2.find("\tfail\t") != std::string::npos);
  std::remove("tmp_cli_q.qnt");
  std::remove("tmp_cli_qbad.qnt");
}

TEST_CASE("enumerations and the crosscheck print count tables") {
  auto [rc, out] = run_bin(
      "enumerate presheaf --monad powerset --tau two_iso --quantale two "
      "--set-size 1");
  CHECK(rc == 0);
  CHECK(out.find("|PiX| = 2") != std::string::npos);
  CHECK(out.find("p:1 {}=1 {x1}=0") != std::string::npos);
  auto [rc2, out2] =
      run_bin("enumerate algebras --extension identity --quantale two");
  CHECK(rc2 == 0);
  CHECK(out2.find("size 2: 4") != std::string::npos);
  CHECK(out2.find("fingerprint identity,two,") != std::string::npos);
  auto [rc3, out3] = run_bin(
      "enumerate monoids --monad filter --tau principal --quantale two "
      "--sizes 2");
  CHECK(rc3 == 0);
  CHECK(out3.find("size 2: 4") != std::string::npos);
  auto [rc4, out4] = run_bin("crosscheck top-preorder --size 2");
  CHECK(rc4 == 0);
  CHECK(out4.find("preorders 4") != std::string::npos);
  CHECK(out4.find("topologies 4") != std::string::npos);
  CHECK(out4.find("kleisli-monoids filter 4") != std::string::npos);
}

TEST_CASE("help output names every command group") {
  auto [rc, out] = run_bin("--help");
  CHECK(rc == 0);
  for (const char* w : {"laws", "compute", "enumerate", "check", "crosscheck"})
    CHECK(out.find(w) != std::string::npos);
}
