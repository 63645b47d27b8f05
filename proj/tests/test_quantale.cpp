#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "relq/quantale.hpp"

using namespace relq;

namespace {

// Independent residual computation straight from the definition.
Elem brute_lres(const Quantale& V, Elem b, Elem a) {
  std::vector<Elem> ok;
  for (Elem v = 0; v < V.n; ++v)
    if (V.leq(V.tensor(v, a), b)) ok.push_back(v);
  return V.join(ok);
}

Elem brute_rres(const Quantale& V, Elem a, Elem b) {
  std::vector<Elem> ok;
  for (Elem v = 0; v < V.n; ++v)
    if (V.leq(V.tensor(a, v), b)) ok.push_back(v);
  return V.join(ok);
}

}  // namespace

TEST_CASE("catalog instances satisfy every law") {
  for (const std::string name :
       {"two", "chain_min(3)", "chain_min(4)", "trop(3)", "pow_monoid"}) {
    QPtr Q = builtin_quantale(name);
    LawReport rep = check_quantale_laws(Q);
    CHECK_MESSAGE(rep.all_pass(), name, ": ", rep.human_summary());
    CHECK(rep.fail_count() == 0);
    CHECK(check_residual_tables(Q).all_pass());
  }
}

TEST_CASE("residual tables match the adjunction definitions") {
  for (const std::string name :
       {"two", "chain_min(3)", "trop(2)", "pow_monoid"}) {
    QPtr Q = builtin_quantale(name);
    for (Elem a = 0; a < Q->n; ++a)
      for (Elem b = 0; b < Q->n; ++b) {
        CHECK(Q->lres(b, a) == brute_lres(*Q, b, a));
        CHECK(Q->rres(a, b) == brute_rres(*Q, a, b));
        for (Elem v = 0; v < Q->n; ++v) {
          CHECK(Q->leq(Q->tensor(v, a), b) == Q->leq(v, Q->lres(b, a)));
          CHECK(Q->leq(Q->tensor(a, v), b) == Q->leq(v, Q->rres(a, b)));
        }
      }
  }
}

TEST_CASE("three-chain residuals take pinned values") {
  QPtr Q = builtin_quantale("chain_min(3)");
  Elem m = Q->index_of("1"), top = Q->index_of("2");
  CHECK(Q->lres(m, m) == top);
  CHECK(Q->lres(m, top) == m);
  CHECK(Q->rres(m, m) == top);
  CHECK(Q->rres(top, m) == m);
  CHECK(Q->commutative);
}

TEST_CASE("two-element quantale residual is implication") {
  QPtr Q = builtin_quantale("two");
  for (Elem a = 0; a < 2; ++a)
    for (Elem b = 0; b < 2; ++b) {
      Elem expect = (a <= b) ? Q->top : Q->bot;
      CHECK(Q->lres(b, a) == expect);
      CHECK(Q->rres(a, b) == expect);
    }
}

TEST_CASE("truncated addition saturates") {
  QPtr Q = builtin_quantale("trop(2)");
  Elem one = Q->index_of("1"), two = Q->index_of("2"),
       inf = Q->index_of("inf");
  CHECK(Q->tensor(one, two) == inf);
  CHECK(Q->tensor(one, one) == two);
  CHECK(Q->tensor(inf, Q->index_of("0")) == inf);
  CHECK(Q->unit == Q->index_of("0"));
  CHECK(Q->top == Q->index_of("0"));
  CHECK(Q->bot == inf);
  CHECK(Q->leq(inf, one));
  CHECK_FALSE(Q->leq(one, inf));
}

TEST_CASE("noncommutative powerset quantale separates the residuals") {
  QPtr Q = builtin_quantale("pow_monoid");
  CHECK_FALSE(Q->commutative);
  Elem a = Q->index_of("{a}");
  CHECK(Q->lres(a, a) == Q->index_of("{e,a}"));
  CHECK(Q->rres(a, a) == Q->index_of("{e,a,b}"));
  bool asym = false;
  for (Elem x = 0; x < Q->n && !asym; ++x)
    for (Elem y = 0; y < Q->n; ++y)
      if (Q->lres(y, x) != Q->rres(x, y)) {
        asym = true;
        break;
      }
  CHECK(asym);
}

TEST_CASE("unit at bottom breaks the unit law with a top witness") {
  QuantaleSpec s;
  s.labels = {"0", "1"};
  s.leq = {1, 1, 0, 1};
  s.tensor = {0, 0, 0, 1};
  s.unit = 0;  // bottom, so 0 (x) 1 = 0 != 1
  LawReport rep = check_quantale_laws(s);
  CHECK_FALSE(rep.all_pass());
  const LawResult* r = rep.find("unit-left");
  REQUIRE(r != nullptr);
  CHECK(r->status == "fail");
  CHECK(r->witness == "a=1");
  CHECK_THROWS_AS(make_quantale(s, "bad"), UsageError);
}

TEST_CASE("malformed tables are usage errors, not law failures") {
  QuantaleSpec s;
  s.labels = {"0", "1"};
  s.leq = {1, 1, 0};  // wrong size
  s.tensor = {0, 0, 0, 1};
  s.unit = 1;
  CHECK_THROWS_AS(check_quantale_laws(s), UsageError);

  QuantaleSpec dup;
  dup.labels = {"x", "x"};
  dup.leq = {1, 1, 0, 1};
  dup.tensor = {0, 0, 0, 1};
  dup.unit = 1;
  CHECK_THROWS_AS(check_quantale_laws(dup), UsageError);

  QuantaleSpec oob;
  oob.labels = {"0", "1"};
  oob.leq = {1, 1, 0, 1};
  oob.tensor = {0, 0, 0, 7};  // out of range
  oob.unit = 1;
  CHECK_THROWS_AS(check_quantale_laws(oob), UsageError);

  QuantaleSpec nonrefl;
  nonrefl.labels = {"0", "1"};
  nonrefl.leq = {0, 1, 0, 1};  // not reflexive: a law failure
  nonrefl.tensor = {0, 0, 0, 1};
  nonrefl.unit = 1;
  LawReport rep = check_quantale_laws(nonrefl);
  REQUIRE(rep.find("order-reflexive") != nullptr);
  CHECK(rep.find("order-reflexive")->status == "fail");
}

TEST_CASE("subset completeness checks are skipped past the size bound") {
  QPtr big = builtin_quantale("chain_min(13)");
  LawReport rep = check_quantale_laws(big);
  const LawResult* r = rep.find("completeness-all-subsets");
  REQUIRE(r != nullptr);
  CHECK(r->status == "skip");
  CHECK(rep.all_pass());

  QPtr small = builtin_quantale("chain_min(4)");
  const LawResult* rs = check_quantale_laws(small).find(
      "completeness-all-subsets");
  REQUIRE(rs != nullptr);
  CHECK(rs->status == "pass");
}

TEST_CASE("bad catalog parameters are rejected") {
  CHECK_THROWS_AS(builtin_quantale("chain_min(0)"), UsageError);
  CHECK_THROWS_AS(builtin_quantale("trop(0)"), UsageError);
  CHECK_THROWS_AS(builtin_quantale("chain_min(x)"), UsageError);
  CHECK_THROWS_AS(builtin_quantale("nope"), UsageError);
}

TEST_CASE("catalog instances are cached") {
  CHECK(builtin_quantale("two") == builtin_quantale("two"));
  CHECK(builtin_quantale("two") != builtin_quantale("chain_min(2)"));
  QPtr a = builtin_quantale("two"), b = builtin_quantale("chain_min(2)");
  CHECK(a->leq_ == b->leq_);
  CHECK(a->tensor_ == b->tensor_);
  CHECK(a->unit == b->unit);
}

TEST_CASE("canonical embedding of two is a lax homomorphism") {
  for (const std::string name :
       {"two", "chain_min(3)", "trop(3)", "pow_monoid"}) {
    LaxHom h = canonical_two_embedding(builtin_quantale(name));
    LawReport rep = check_lax_hom(h);
    CHECK_MESSAGE(rep.all_pass(), name, ": ", rep.human_summary());
  }
}

TEST_CASE("lax homomorphism checks separate candidates") {
  QPtr c3 = builtin_quantale("chain_min(3)");
  QPtr two = builtin_quantale("two");
  // Monotone collapse keeping the top: lax.
  LaxHom h{c3, two, {0, 0, 1}};
  CHECK(check_lax_hom(h).all_pass());
  // Swapping 1 and 2 breaks monotonicity.
  LaxHom bad{c3, two, {0, 1, 0}};
  LawReport rep = check_lax_hom(bad);
  REQUIRE(rep.find("monotone") != nullptr);
  CHECK(rep.find("monotone")->status == "fail");
}

TEST_CASE("law reports serialize deterministically") {
  LawReport a = check_quantale_laws(builtin_quantale("trop(3)"));
  LawReport b = check_quantale_laws(builtin_quantale("trop(3)"));
  CHECK(a.machine_lines() == b.machine_lines());
  CHECK(a.machine_lines().find('\t') != std::string::npos);
}
