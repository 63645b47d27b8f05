#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "relq/finmonad.hpp"

using namespace relq;

TEST_CASE("catalog monads satisfy the monad laws") {
  for (const std::string name : {"identity", "powerset", "pv(two)",
                                 "pv(chain_min(3))", "filter", "ultrafilter"}) {
    FinMonad T = builtin_monad(name);
    LawReport rep = check_monad_laws(T);
    CHECK_MESSAGE(rep.all_pass(), name, ": ", rep.human_summary());
  }
}

TEST_CASE("tuple codes round-trip") {
  QPtr V = builtin_quantale("chain_min(3)");
  for (std::uint64_t code = 0; code < 27; ++code) {
    std::vector<Elem> t = decode_tuple(V, code, 3);
    CHECK(encode_tuple(V, t) == code);
  }
  CHECK(encode_tuple(V, {2, 0, 1}) == 2 + 0 * 3 + 1 * 9);
}

TEST_CASE("carrier sizes and labels are deterministic") {
  FinSet X = standard_set(2);
  CHECK(powerset_monad()->obj(X)->size() == 4);
  CHECK(filter_monad()->obj(X)->size() == 4);
  CHECK(ultrafilter_monad()->obj(X)->size() == 2);
  CHECK(pv_monad(builtin_quantale("chain_min(3)"))->obj(X)->size() == 9);
  CHECK(powerset_monad()->obj(X)->labels[0] == "{}");
  CHECK(powerset_monad()->obj(X)->labels[3] == "{x1,x2}");
  CHECK(filter_monad()->obj(X)->labels[0] == "up{}");
  CHECK(ultrafilter_monad()->obj(X)->labels[1] == "u(x2)");
  // repeated calls share the carrier
  CHECK(powerset_monad()->obj(X) == powerset_monad()->obj(standard_set(2)));
}

TEST_CASE("the ultrafilter monad on finite sets is the identity in disguise") {
  FinMonad U = ultrafilter_monad(), I = identity_monad();
  std::vector<FinSet> sets = default_test_sets(3);
  MonadMorphism down{"u_to_id", U, I, [&](const FinSet& X) {
                       FinSet UX = ultrafilter_monad()->obj(X);
                       std::vector<int> img(UX->size());
                       for (int i = 0; i < UX->size(); ++i) img[i] = i;
                       return make_finmap(UX, X, std::move(img));
                     }};
  CHECK(check_monad_morphism(down, sets, {}).all_pass());
  for (const FinSet& X : sets) CHECK(U->obj(X)->size() == X->size());
}

TEST_CASE("two-valued tuples are subsets") {
  QPtr V = builtin_quantale("two");
  MonadMorphism iso = builtin_tau("two_iso", V);
  CHECK(check_monad_morphism(iso, default_test_sets(3), {}).all_pass());
  // codes agree: digit x of a tuple is bit x of the subset
  FinSet X = standard_set(2);
  FinMap at = iso.at(X);
  for (int i = 0; i < 4; ++i) CHECK(at.img[i] == i);
  // and the inverse direction is also a morphism
  FinMonad P2 = pv_monad(V), Pw = powerset_monad();
  MonadMorphism back{"powerset_to_pv", Pw, P2, [&](const FinSet& Y) {
                       FinSet A = Pw->obj(Y), B = P2->obj(Y);
                       std::vector<int> img(A->size());
                       for (int i = 0; i < A->size(); ++i) img[i] = i;
                       return make_finmap(A, B, std::move(img));
                     }};
  CHECK(check_monad_morphism(back, default_test_sets(2), {}).all_pass());
}

TEST_CASE("principal filters and the up-set embedding are morphisms") {
  QPtr V = builtin_quantale("two");
  CHECK(check_monad_morphism(builtin_tau("principal", V),
                             default_test_sets(2), {})
            .all_pass());
  CHECK(check_monad_morphism(up_embedding(), default_test_sets(2), {})
            .all_pass());
  MonadMorphism comp = compose_morphisms(up_embedding(),
                                         builtin_tau("two_iso", V));
  CHECK(check_monad_morphism(comp, default_test_sets(2), {}).all_pass());
  // principal = up_embedding . two_iso componentwise
  FinSet X = standard_set(2);
  CHECK(same_map(comp.at(X), builtin_tau("principal", V).at(X)));
}

TEST_CASE("no morphism into the identity monad") {
  QPtr V = builtin_quantale("two");
  CHECK_THROWS_AS(builtin_tau("to_identity", V), UsageError);
  CHECK_THROWS_AS(
      make_enriched(identity_monad(), builtin_tau("identity", V), V, {}),
      UsageError);
}

TEST_CASE("enrichment constructor rejects unfit morphisms") {
  QPtr V = builtin_quantale("two");
  // tau must start from the V-powerset monad
  CHECK_THROWS_AS(
      make_enriched(filter_monad(), up_embedding(), V, {}), UsageError);
  // tau must target the given monad
  CHECK_THROWS_AS(
      make_enriched(filter_monad(), builtin_tau("two_iso", V), V, {}),
      UsageError);
  // a corrupted component fails the morphism laws
  MonadMorphism bad = builtin_tau("two_iso", V);
  auto orig = bad.at;
  bad.at = [orig](const FinSet& X) {
    FinMap f = orig(X);
    if (f.src->size() == 4) std::swap(f.img[1], f.img[2]);
    return f;
  };
  CHECK_THROWS_AS(make_enriched(powerset_monad(), bad, V, {}), UsageError);
}

TEST_CASE("enriched catalog passes the enrichment laws") {
  std::vector<FinSet> sets = default_test_sets(2);
  for (const EnrichedMonad& em :
       {enriched_pv(builtin_quantale("two")),
        enriched_pv(builtin_quantale("chain_min(3)")), enriched_powerset(),
        enriched_filter()}) {
    LawReport rep = check_enrichment(em, sets, {});
    CHECK_MESSAGE(rep.all_pass(), em.name, ": ", rep.human_summary());
    CHECK(check_power_enriched(em, sets, {}));
  }
}

TEST_CASE("resolver wires names to catalog contexts") {
  QPtr two = builtin_quantale("two"), c3 = builtin_quantale("chain_min(3)");
  CHECK(resolve_enriched("powerset", "two_iso", two, {}).name ==
        "powerset/two_iso/two");
  CHECK(resolve_enriched("pv(chain_min(3))", "identity", c3, {}).T->name ==
        "pv(chain_min(3))");
  CHECK(resolve_enriched("filter", "principal", two, {}).T->name == "filter");
  CHECK_THROWS_AS(resolve_enriched("pv(two)", "identity", c3, {}),
                  UsageError);
  CHECK_THROWS_AS(resolve_enriched("identity", "identity", two, {}),
                  UsageError);
}

TEST_CASE("powerset action restricted to a subset keeps or drops it") {
  EnrichedMonad em = enriched_powerset();
  FinSet X = standard_set(2);
  VAction act = action_from_tau(em, X);
  FinSet TX = em.T->obj(X);
  for (int A = 0; A < TX->size(); ++A) {
    CHECK(act.act(A, em.V->unit) == A);
    CHECK(act.act(A, em.V->bot) == 0);  // the empty set
  }
}

TEST_CASE("free tuple action tensors pointwise") {
  QPtr V = builtin_quantale("chain_min(3)");
  EnrichedMonad em = enriched_pv(V);
  FinSet X = standard_set(2);
  VAction act = action_from_tau(em, X);
  for (std::uint64_t code = 0; code < 9; ++code)
    for (Elem v = 0; v < 3; ++v) {
      std::vector<Elem> t = decode_tuple(V, code, 2);
      for (Elem& e : t) e = V->tensor(e, v);
      CHECK(act.act(static_cast<int>(code), v) ==
            static_cast<int>(encode_tuple(V, t)));
    }
}

TEST_CASE("internal hom closed forms match the enumeration") {
  std::vector<FinSet> sets = default_test_sets(2);
  for (const EnrichedMonad& em :
       {enriched_pv(builtin_quantale("two")),
        enriched_pv(builtin_quantale("chain_min(3)")), enriched_powerset(),
        enriched_filter()})
    for (const FinSet& X : sets)
      CHECK(rel_eq(hom_TX(em, X, {}), internal_hom_TX(em, X, {})));
}

TEST_CASE("powerset internal hom is inclusion") {
  EnrichedMonad em = enriched_powerset();
  FinSet X = standard_set(2);
  VRel hom = hom_TX(em, X, {});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(hom.at(i, j) == ((i & ~j) == 0 ? em.V->unit : em.V->bot));
}

TEST_CASE("free internal hom is the residual of tuples") {
  QPtr V = builtin_quantale("chain_min(3)");
  EnrichedMonad em = enriched_pv(V);
  FinSet X = standard_set(2);
  VRel hom = hom_TX(em, X, {});
  for (std::uint64_t i = 0; i < 9; ++i)
    for (std::uint64_t j = 0; j < 9; ++j) {
      std::vector<Elem> r = decode_tuple(V, i, 2), s = decode_tuple(V, j, 2);
      Elem expect = V->top;
      for (int z = 0; z < 2; ++z)
        expect = V->meet2(expect, V->rres(r[z], s[z]));
      CHECK(hom.at(static_cast<int>(i), static_cast<int>(j)) == expect);
    }
}

TEST_CASE("the hom order agrees with the pairing criterion") {
  // x below y iff the algebra map collapses the pair tuple {x, y} to y.
  std::vector<FinSet> sets = default_test_sets(2);
  for (const EnrichedMonad& em :
       {enriched_pv(builtin_quantale("chain_min(3)")), enriched_powerset(),
        enriched_filter()})
    for (const FinSet& X : sets) {
      FinSet TX = em.T->obj(X);
      FinMap a = algebra_map(em, X);
      std::vector<char> ord = induced_order_TX(em, X, {});
      const int N = TX->size();
      for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
          std::vector<Elem> chi(N, em.V->bot);
          chi[x] = em.V->unit;
          chi[y] = em.V->unit;
          bool below = a.img[encode_tuple(em.V, chi)] == y;
          CHECK((ord[x * N + y] != 0) == below);
        }
    }
}

TEST_CASE("relation transport squares with its generic construction") {
  std::vector<FinSet> sets = default_test_sets(2);
  for (const EnrichedMonad& em :
       {enriched_pv(builtin_quantale("chain_min(3)")), enriched_powerset(),
        enriched_filter()}) {
    EnrichedMonad generic = em;
    generic.rtau_at = nullptr;
    Rng rng(13);
    for (const FinSet& X : sets)
      for (const FinSet& Y : sets)
        for (int trial = 0; trial < 10; ++trial) {
          VRel r = random_vrel(em.V, X, Y, rng);
          CHECK(same_map(rtau_map(em, r, {}), rtau_map(generic, r, {})));
        }
  }
}

TEST_CASE("relation transport of a graph is the lifted map") {
  // For r the opposite graph of g: X -> Y the transport is T(g).
  EnrichedMonad em = enriched_powerset();
  FinSet X = standard_set(2), Y = standard_set(2, "y");
  for (const FinMap& g : all_finmaps(X, Y)) {
    VRel r = opposite(graph(em.V, g));  // Y -*-> X
    FinMap t = rtau_map(em, r, {});
    CHECK(same_map(t, em.T->map(g)));
  }
}

TEST_CASE("tau correspondence laws hold across the catalog") {
  std::vector<FinSet> sets = default_test_sets(2);
  for (const EnrichedMonad& em :
       {enriched_pv(builtin_quantale("two")),
        enriched_pv(builtin_quantale("chain_min(3)")), enriched_powerset(),
        enriched_filter()}) {
    LawReport rep = check_tau_correspondences(em, sets, {});
    CHECK_MESSAGE(rep.all_pass(), em.name, ": ", rep.human_summary());
  }
}

TEST_CASE("mate of a relation fixes columns") {
  QPtr V = builtin_quantale("chain_min(3)");
  FinSet X = standard_set(2), Y = standard_set(2, "y");
  Rng rng(4);
  VRel r = random_vrel(V, X, Y, rng);
  FinMap mate = rel_mate(V, r);
  CHECK(same_set(mate.src, Y));
  for (int y = 0; y < 2; ++y) {
    std::vector<Elem> col = decode_tuple(V, mate.img[y], 2);
    for (int x = 0; x < 2; ++x) CHECK(col[x] == r.at(x, y));
  }
}

TEST_CASE("monad law checker flags a corrupted mult") {
  FinMonad P = powerset_monad();
  auto bad = std::make_shared<FinMonadData>(*P);
  bad->name = "powerset*";
  auto orig_mult = P->mult;
  bad->mult = [orig_mult](const FinSet& X) {
    FinMap m = orig_mult(X);
    if (X->size() == 2) {
      // reroute the family {{}, {x1}} to {x1, x2} instead of {x1}
      std::vector<int> img = m.img;
      img[3] = 3;
      return make_finmap(m.src, m.tgt, std::move(img));
    }
    return m;
  };
  LawReport rep = check_monad_laws(bad, default_test_sets(2), {});
  CHECK_FALSE(rep.all_pass());
  const LawResult* r = rep.find("mult-natural");
  REQUIRE(r != nullptr);
  CHECK(r->status == "fail");
  CHECK_FALSE(r->witness.empty());
}
