#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relq/urel.hpp"

namespace relq {

// A lax algebra in an associative context: a relation a: X ⇀ X with
// 1# <= a and a after a <= a. These force a to be unitary and
// idempotent, which is re-checked whenever the predicate accepts.
struct LaxAlgebra {
  FinSet carrier;
  TVRel a;
};

// A Kleisli monoid over an enriched monad: a map nu: X -> TX with
// e_X <= nu and m_X . T(nu) . nu <= nu, both in the pointwise order
// that the enrichment induces on maps into TX.
struct KleisliMonoid {
  FinSet carrier;
  FinMap nu;
};

// a: X ⇀ X must be an endo-relation in an associative context
// (UsageError otherwise; MismatchError when src and tgt differ). On
// acceptance the implied identities a after a = a and is_unitary(a)
// are verified and their failure raises Error, since it would mean
// the context violates the extension laws.
bool is_lax_algebra(const TVRel& a);

// f: X -> Y between lax algebras (X,a) and (Y,b), checked in the mate
// form a <= f° . b . Tf. Both relations must live in the same context
// instance.
bool is_tv_functor(const FinMap& f, const TVRel& a, const TVRel& b);

// nu: X -> TX against the unit and Kleisli-composition inequalities.
bool is_kleisli_monoid(const EnrichedMonad& em, const FinMap& nu,
                       const CheckOptions& opts = {});

// f: X -> Y between monoids (X,nu) and (Y,xi), checked in the form
// Tf . nu <= xi . f pointwise in the order on TY.
bool is_monoid_hom(const EnrichedMonad& em, const FinMap& f,
                   const FinMap& nu, const FinMap& xi,
                   const CheckOptions& opts = {});

// All lax algebra structures on X, in matrix-encoding order (the order
// of all_vrels on T(X) -*-> X). CapExceeded when the candidate count
// outruns opts.cap.
std::vector<LaxAlgebra> enumerate_lax_algebras(const LaxExtension& E,
                                               const FinSet& X,
                                               const CheckOptions& opts = {});

// All Kleisli monoid structures on X, in the order of all_finmaps.
std::vector<KleisliMonoid> enumerate_kleisli_monoids(
    const EnrichedMonad& em, const FinSet& X, const CheckOptions& opts = {});

// "monad,quantale,hash" where the hash mixes the extension of an
// identity relation at the largest probe size the context can afford.
// Stable across runs; reported next to enumeration counts so that two
// counts are only ever compared within the same context.
std::string context_fingerprint(const LaxExtension& E);

// The passage between lax algebras over E and Kleisli monoids of the
// presheaf monad of E: a structure relation corresponds to the map
// sending a point to its column presheaf. Laws: counts-equal,
// to-monoid, from-monoid, round-trip, implied-idempotent-unitary, and
// morphism-correspondence (functors match monoid homs on all maps
// between the given sizes).
LawReport check_cats_mons_iso(const LaxExtension& E,
                              const std::vector<int>& sizes,
                              const CheckOptions& opts = {});

// The morphism of V-powerset monads induced by a quantale lax
// homomorphism, acting on tuples elementwise. Refused (UsageError)
// when the homomorphism laws fail.
MonadMorphism pv_hom_morphism(const LaxHom& h);

// For kappa: P_W -> P_V and an enriched monad (T, tau, V): the monad
// (T, tau . kappa) is W-enriched, and the Kleisli contexts over V and
// over W carry the same lax algebras. kappa is validated first and an
// invalid one is refused (UsageError). Laws: w-enriched, order-agrees
// (both enrichments induce the same order on TX), counts-equal,
// forward-bijection (nbhd over V then conv over W lands in the W-side
// enumeration, injectively), round-trip.
LawReport check_change_of_enrichment(const EnrichedMonad& em, const QPtr& W,
                                     const MonadMorphism& kappa,
                                     const std::vector<int>& sizes,
                                     const CheckOptions& opts = {});

// Independent censuses used to cross-check enumeration counts.
// Topologies on n points are counted as families of subsets containing
// the empty and full sets and closed under binary union and
// intersection; preorders as reflexive transitive relation matrices.
// Both are exhaustive over 2^(2^n) resp. 2^(n*n) candidates and raise
// CapExceeded for n > 4.
std::uint64_t count_topologies(int n);
std::uint64_t count_preorders(int n);

// The counting cross-check at one size: topology and preorder censuses
// agree, lax algebra counts over the identity and ultrafilter contexts
// (V = two) match the preorder census, powerset Kleisli monoids match
// the preorder census, and filter Kleisli monoids match the topology
// census. Laws: oracle-agree, identity-context, barr-ultrafilter,
// powerset-monoids, filter-monoids.
LawReport check_top_preorder_crosscheck(int n, const CheckOptions& opts = {});

}  // namespace relq
