#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "relq/laxalg.hpp"
#include "relq/vcat.hpp"

using namespace relq;

namespace {

const QPtr& two() {
  static const QPtr v = builtin_quantale("two");
  return v;
}

const QPtr& chain3() {
  static const QPtr v = builtin_quantale("chain_min(3)");
  return v;
}

const LaxExtension& kl_pow() {
  static const LaxExtension e = kleisli_extension(enriched_powerset());
  return e;
}

const LaxExtension& kl_pv3() {
  static const LaxExtension e = kleisli_extension(enriched_pv(chain3()));
  return e;
}

const LaxExtension& id_two() {
  static const LaxExtension e = identity_extension(two());
  return e;
}

const LaxExtension& barr_two() {
  static const LaxExtension e = barr_ultrafilter_extension(two());
  return e;
}

bool no_fail(const LawReport& rep) { return rep.fail_count() == 0; }

bool law_passes(const LawReport& rep, const std::string& law) {
  const LawResult* r = rep.find(law);
  return r && r->status == "pass";
}

// The displayed algebra conditions with the unit as a bare cograph
// instead of its sharp.
bool algebra_reduced_form(const TVRel& a) {
  VRel e = cograph(a.ctx->V, a.ctx->T->unit(a.src));
  return rel_le(e, a.r) && tv_le(kleisli_convolution(a, a), a);
}

}  // namespace

TEST_CASE("discrete structures are lax algebras in every context") {
  for (const LaxExtension& E : {id_two(), kl_pow(), kl_pv3(), barr_two()}) {
    for (int n : {0, 1, 2}) {
      FinSet X = standard_set(n);
      TVRel d = unit_sharp(E, X);
      CHECK(is_lax_algebra(d));
      CHECK(is_tv_functor(identity_map(X), d, d));
    }
  }
}

TEST_CASE("identity-context lax algebras on two points are the preorders") {
  FinSet X = standard_set(2);
  std::vector<LaxAlgebra> as = enumerate_lax_algebras(id_two(), X);
  CHECK(as.size() == 4);
  CHECK(count_preorders(2) == 4);
  for (const LaxAlgebra& alg : as) {
    std::vector<char> m(4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i * 2 + j] = alg.a.r.at(i, j) != 0;
    CHECK(is_preorder(m, 2));
  }
}

TEST_CASE("structure enumeration is deterministic and covers the empty set") {
  FinSet X = standard_set(2);
  std::vector<std::uint64_t> first, second;
  for (const LaxAlgebra& a : enumerate_lax_algebras(kl_pow(), X))
    first.push_back(index_of_vrel(a.a.r));
  for (const LaxAlgebra& a : enumerate_lax_algebras(kl_pow(), X))
    second.push_back(index_of_vrel(a.a.r));
  CHECK(first == second);
  CHECK(std::is_sorted(first.begin(), first.end()));

  FinSet E0 = standard_set(0);
  for (const LaxExtension& E : {id_two(), kl_pow(), barr_two(), kl_pv3()})
    CHECK(enumerate_lax_algebras(E, E0).size() == 1);
}

TEST_CASE("the ultrafilter context on two points also counts preorders") {
  CHECK(enumerate_lax_algebras(barr_two(), standard_set(2)).size() == 4);
}

TEST_CASE("both shapes of the algebra conditions accept the same relations") {
  for (const LaxExtension& E : {id_two(), kl_pow()}) {
    for (int n : {1, 2}) {
      FinSet X = standard_set(n);
      FinSet TX = E->T->obj(X);
      std::uint64_t total = count_vrels(E->V, TX, X);
      for (std::uint64_t i = 0; i < total; ++i) {
        TVRel a = make_tvrel(E, X, X, vrel_from_index(E->V, TX, X, i));
        CHECK(is_lax_algebra(a) == algebra_reduced_form(a));
      }
    }
  }
}

TEST_CASE("functor conditions agree between the mate and convolution forms") {
  for (int nx : {1, 2}) {
    for (int ny : {1, 2}) {
      FinSet X = standard_set(nx), Y = standard_set(ny);
      std::vector<LaxAlgebra> ax = enumerate_lax_algebras(kl_pow(), X);
      std::vector<LaxAlgebra> ay = enumerate_lax_algebras(kl_pow(), Y);
      for (const FinMap& f : all_finmaps(X, Y)) {
        TVRel fs = map_sharp(kl_pow(), f);
        for (const LaxAlgebra& a : ax)
          for (const LaxAlgebra& b : ay) {
            bool conv_form = tv_le(kleisli_convolution(a.a, fs),
                                   kleisli_convolution(fs, b.a));
            CHECK(is_tv_functor(f, a.a, b.a) == conv_form);
          }
      }
    }
  }
}

TEST_CASE("powerset kleisli monoids are the up-set maps of preorders") {
  EnrichedMonad em = enriched_powerset();
  for (int n : {1, 2, 3}) {
    FinSet X = standard_set(n);
    std::vector<KleisliMonoid> ms = enumerate_kleisli_monoids(em, X);
    CHECK(ms.size() == count_preorders(n));

    std::vector<std::vector<int>> got, want;
    for (const KleisliMonoid& m : ms) got.push_back(m.nu.img);
    for (std::uint64_t bits = 0; bits < (1ull << (n * n)); ++bits) {
      std::vector<char> m(static_cast<size_t>(n) * n);
      for (int k = 0; k < n * n; ++k) m[k] = (bits >> k) & 1;
      if (!is_preorder(m, n)) continue;
      std::vector<int> img(n, 0);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (m[x * n + y]) img[x] |= 1 << y;
      want.push_back(img);
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("filter kleisli monoids count the topologies") {
  EnrichedMonad em = enriched_filter();
  CHECK(enumerate_kleisli_monoids(em, standard_set(1)).size() ==
        count_topologies(1));
  CHECK(enumerate_kleisli_monoids(em, standard_set(2)).size() == 4);
  CHECK(enumerate_kleisli_monoids(em, standard_set(3)).size() ==
        count_topologies(3));
}

TEST_CASE("unit maps are always kleisli monoids") {
  for (const EnrichedMonad& em :
       {enriched_powerset(), enriched_filter(), enriched_pv(chain3())}) {
    for (int n : {0, 1, 2}) {
      FinSet X = standard_set(n);
      CHECK(is_kleisli_monoid(em, em.T->unit(X)));
      CHECK(is_monoid_hom(em, identity_map(X), em.T->unit(X),
                          em.T->unit(X)));
    }
  }
}

TEST_CASE("monoid hom condition matches its kleisli form") {
  EnrichedMonad em = enriched_powerset();
  for (int nx : {1, 2}) {
    for (int ny : {1, 2}) {
      FinSet X = standard_set(nx), Y = standard_set(ny);
      FinSet TY = em.T->obj(Y);
      std::vector<KleisliMonoid> mx = enumerate_kleisli_monoids(em, X);
      std::vector<KleisliMonoid> my = enumerate_kleisli_monoids(em, Y);
      FinMap mY = em.T->mult(Y);
      std::vector<char> ord = induced_order_TX(em, Y);
      for (const FinMap& f : all_finmaps(X, Y)) {
        FinMap fnat = compose(em.T->unit(Y), f);
        for (const KleisliMonoid& a : mx)
          for (const KleisliMonoid& b : my) {
            FinMap lhs = compose(mY, compose(em.T->map(fnat), a.nu));
            FinMap rhs = compose(mY, compose(em.T->map(b.nu), fnat));
            bool kleisli_form = true;
            for (int x = 0; x < nx; ++x)
              if (!ord[lhs.img[x] * TY->size() + rhs.img[x]])
                kleisli_form = false;
            CHECK(is_monoid_hom(em, f, a.nu, b.nu) == kleisli_form);
          }
      }
    }
  }
}

TEST_CASE("lax algebras correspond to presheaf monoids") {
  LawReport rep = check_cats_mons_iso(id_two(), {0, 1, 2});
  CHECK(no_fail(rep));
  CHECK(law_passes(rep, "counts-equal"));
  CHECK(law_passes(rep, "to-monoid"));
  CHECK(law_passes(rep, "from-monoid"));
  CHECK(law_passes(rep, "round-trip"));
  CHECK(law_passes(rep, "implied-idempotent-unitary"));
  CHECK(law_passes(rep, "morphism-correspondence"));
}

TEST_CASE("the correspondence holds over the kleisli contexts") {
  LawReport pw = check_cats_mons_iso(kl_pow(), {1, 2});
  CHECK(no_fail(pw));
  CHECK(law_passes(pw, "morphism-correspondence"));
  LawReport pv = check_cats_mons_iso(kl_pv3(), {1});
  CHECK(no_fail(pv));
  CHECK(law_passes(pv, "counts-equal"));
}

TEST_CASE("re-enriching along the identity fixes every algebra") {
  EnrichedMonad em = enriched_powerset();
  MonadMorphism id = identity_morphism(pv_monad(two()));
  LawReport rep = check_change_of_enrichment(em, two(), id, {1, 2});
  CHECK(no_fail(rep));
  CHECK(law_passes(rep, "w-enriched"));
  CHECK(law_passes(rep, "order-agrees"));
  CHECK(law_passes(rep, "forward-bijection"));

  EnrichedMonad emW =
      make_enriched(em.T, compose_morphisms(em.tau, id), two());
  LaxExtension EV = kl_pow();
  LaxExtension EW = kleisli_extension(emW);
  FinSet X = standard_set(2);
  for (const LaxAlgebra& a : enumerate_lax_algebras(EV, X))
    CHECK(rel_eq(conv(EW, X, nbhd(a.a)).r, a.a.r));
}

TEST_CASE("the two-chain embedding changes enrichment without loss") {
  EnrichedMonad em = enriched_pv(chain3());
  MonadMorphism kappa = pv_hom_morphism(canonical_two_embedding(chain3()));
  LawReport rep = check_change_of_enrichment(em, two(), kappa, {1});
  CHECK(no_fail(rep));
  CHECK(law_passes(rep, "w-enriched"));
  CHECK(law_passes(rep, "order-agrees"));
  CHECK(law_passes(rep, "counts-equal"));
  CHECK(law_passes(rep, "forward-bijection"));
  CHECK(law_passes(rep, "round-trip"));
  CHECK(enumerate_lax_algebras(kl_pv3(), standard_set(1)).size() == 1);
}

TEST_CASE("invalid enrichment changes are refused") {
  CHECK_THROWS_AS(pv_hom_morphism(LaxHom{chain3(), two(), {1, 1, 0}}),
                  UsageError);
  CHECK_THROWS_AS(pv_hom_morphism(LaxHom{two(), chain3(), {0, 1}}),
                  UsageError);

  EnrichedMonad em = enriched_pv(chain3());
  MonadMorphism good = pv_hom_morphism(canonical_two_embedding(chain3()));
  MonadMorphism bad = good;
  bad.at = [good](const FinSet& X) {
    FinMap f = good.at(X);
    if (X->size() == 2) std::swap(f.img[1], f.img[2]);
    return f;
  };
  CHECK_THROWS_AS(check_change_of_enrichment(em, two(), bad, {1}),
                  UsageError);
  CHECK_THROWS_AS(
      check_change_of_enrichment(enriched_powerset(), two(), up_embedding(),
                                 {1}),
      MismatchError);
}

TEST_CASE("topology and preorder censuses match the known counts") {
  CHECK(count_preorders(0) == 1);
  CHECK(count_preorders(1) == 1);
  CHECK(count_preorders(2) == 4);
  CHECK(count_preorders(3) == 29);
  CHECK(count_preorders(4) == 355);
  CHECK(count_topologies(0) == 1);
  CHECK(count_topologies(1) == 1);
  CHECK(count_topologies(2) == 4);
  CHECK(count_topologies(3) == 29);
  CHECK(count_topologies(4) == 355);
  CHECK_THROWS_AS(count_topologies(5), CapExceeded);
  CHECK_THROWS_AS(count_preorders(5), CapExceeded);
}

TEST_CASE("the counting crosscheck ties every formalism together") {
  for (int n : {0, 1, 2, 3}) {
    LawReport rep = check_top_preorder_crosscheck(n);
    CHECK(no_fail(rep));
    CHECK(law_passes(rep, "oracle-agree"));
    CHECK(law_passes(rep, "identity-context"));
    CHECK(law_passes(rep, "barr-ultrafilter"));
    CHECK(law_passes(rep, "powerset-monoids"));
    CHECK(law_passes(rep, "filter-monoids"));
  }
}

TEST_CASE("enumeration caps are reported rather than attempted") {
  CHECK_THROWS_AS(enumerate_lax_algebras(kl_pv3(), standard_set(2)),
                  CapExceeded);
}

TEST_CASE("context fingerprints are stable and discriminating") {
  std::string a = context_fingerprint(kl_pow());
  std::string b = context_fingerprint(kleisli_extension(enriched_powerset()));
  CHECK(a == b);
  CHECK(a != context_fingerprint(id_two()));
  CHECK(a != context_fingerprint(kl_pv3()));
}

TEST_CASE("mismatched inputs are refused") {
  FinSet X = standard_set(2), Y = standard_set(1, "y");
  TVRel r = make_tvrel(id_two(), X, Y, make_vrel(two(), X, Y));
  CHECK_THROWS_AS(is_lax_algebra(r), MismatchError);

  TVRel a = unit_sharp(id_two(), X);
  TVRel b = unit_sharp(kl_pow(), X);
  CHECK_THROWS_AS(is_tv_functor(identity_map(X), a, b), MismatchError);

  EnrichedMonad em = enriched_powerset();
  CHECK_THROWS_AS(is_kleisli_monoid(em, identity_map(X)), MismatchError);

  auto d = std::make_shared<LaxExtensionData>(*id_two());
  d->associative = false;
  LaxExtension broken = d;
  TVRel c = make_tvrel(broken, X, X, identity_rel(two(), X));
  CHECK_THROWS_AS(is_lax_algebra(c), UsageError);
  CHECK_THROWS_AS(enumerate_lax_algebras(broken, X), UsageError);
}
