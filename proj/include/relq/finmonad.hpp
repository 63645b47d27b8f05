#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relq/vrel.hpp"

namespace relq {

// A monad on finite sets given by computable components. apply_obj uses a
// canonical deterministic labeling so iterated carriers (TTX and beyond)
// agree across calls; components are memoized internally.
//
// Carriers of the built-ins are enumerated so that an element's index is
// its numeric encoding: subsets by bitmask (bit i = element i of X),
// V-valued tuples little-endian base |V| (digit i = value at element i),
// filters by the bitmask of their generating set.
struct FinMonadData {
  std::string name;
  std::function<FinSet(const FinSet&)> obj;
  std::function<FinMap(const FinMap&)> map;
  std::function<FinMap(const FinSet&)> unit;  // X -> TX
  std::function<FinMap(const FinSet&)> mult;  // TTX -> TX
};
using FinMonad = std::shared_ptr<const FinMonadData>;

// Functor and monad laws plus naturality of unit and mult, on the given
// test sets and all maps between them (maps sampled when too many).
// Checks whose iterated carriers exceed opts.cap are reported as skipped.
LawReport check_monad_laws(const FinMonad& T, const std::vector<FinSet>& sets,
                           const CheckOptions& opts = {});
// Default family: all standard sets of size 0..2.
LawReport check_monad_laws(const FinMonad& T, const CheckOptions& opts = {});
std::vector<FinSet> default_test_sets(int max_size = 2);

// Catalog: "identity", "powerset", "pv(<quantale>)", "filter",
// "ultrafilter". Filters on a finite set are the principal up-sets
// (including the improper one generated by the empty set), so the filter
// carrier is order-isomorphic to the powerset; ultrafilters are principal
// and the ultrafilter monad is carried by X itself.
FinMonad builtin_monad(const std::string& name);
FinMonad identity_monad();
FinMonad powerset_monad();
FinMonad pv_monad(const QPtr& V);
FinMonad filter_monad();
FinMonad ultrafilter_monad();

struct MonadMorphism {
  std::string name;
  FinMonad S, T;
  std::function<FinMap(const FinSet&)> at;  // SX -> TX
};

// Naturality plus compatibility with units and multiplications.
LawReport check_monad_morphism(const MonadMorphism& a,
                               const std::vector<FinSet>& sets,
                               const CheckOptions& opts = {});

MonadMorphism identity_morphism(const FinMonad& T);
MonadMorphism compose_morphisms(const MonadMorphism& b,
                                const MonadMorphism& a);  // b after a

// Catalog of morphisms out of a V-powerset monad:
//   "identity"  P_V -> P_V  (any V)
//   "two_iso"   P_2 -> powerset, the tuple/subset bijection
//   "principal" P_2 -> filter, A |-> the up-set generated by A
// Requesting a morphism into the identity monad is refused: P_V(empty)
// is a point while the identity monad has an empty carrier there, and
// for |V| > 1 unit compatibility fails on singletons as well.
MonadMorphism builtin_tau(const std::string& name, const QPtr& V);

// Monad morphism powerset -> filter sending a subset to the up-set it
// generates (used as a change-of-monad example).
MonadMorphism up_embedding();

// A monad equipped with an algebra-like structure map a = mult . tau on
// every carrier TX, giving TX the structure of a V-category with a
// right V-action. tau must be a morphism out of pv_monad(V).
//
// hom_at/rtau_at are optional closed forms (indices are the numeric
// encodings described above); when absent, generic enumeration is used
// and caps apply.
struct EnrichedMonad {
  std::string name;
  FinMonad T;
  MonadMorphism tau;
  QPtr V;
  // hom on T(applied to Z): value of (j over i) given |Z|.
  std::function<Elem(const FinSet& Z, std::uint64_t i, std::uint64_t j)>
      hom_at;
  // r^tau: T(target of r) -> T(source of r), evaluated at one element.
  std::function<std::uint64_t(const VRel& r, std::uint64_t y)> rtau_at;
};

// Validates tau (shape: source is pv_monad(V); laws: check_monad_morphism
// on sets of size <= 2) and rejects enrichments of the identity monad for
// nontrivial V. No closed forms are attached.
EnrichedMonad make_enriched(FinMonad T, MonadMorphism tau, QPtr V,
                            const CheckOptions& opts = {});

// Built-in enriched monads with closed-form hom/rtau:
EnrichedMonad enriched_pv(const QPtr& V);     // tau = identity
EnrichedMonad enriched_powerset();            // V = two, tau = two_iso
EnrichedMonad enriched_filter();              // V = two, tau = principal
// By catalog names; falls back to make_enriched for other combinations.
EnrichedMonad resolve_enriched(const std::string& monad,
                               const std::string& tau, const QPtr& V,
                               const CheckOptions& opts = {});

// a = mult_X . tau_TX: P_V(TX) -> TX as an explicit table.
FinMap algebra_map(const EnrichedMonad& em, const FinSet& X);

// Right action of V on TX: x * v = a(point mass at x tensored with v).
struct VAction {
  FinSet carrier;
  QPtr V;
  std::function<int(int, Elem)> act;
};
VAction action_from_tau(const EnrichedMonad& em, const FinSet& X);

// The V-category structure on TX: hom(x,y) = join of phi(x) over all
// phi in V^{TX} with a(phi) = y. Generic enumeration; CapExceeded when
// |V|^|TX| exceeds opts.cap.
VRel internal_hom_TX(const EnrichedMonad& em, const FinSet& X,
                     const CheckOptions& opts = {});
// Same through the closed form when the monad carries one.
VRel hom_TX(const EnrichedMonad& em, const FinSet& X,
            const CheckOptions& opts = {});
// x <= y iff unit <= hom(x,y).
std::vector<char> induced_order_TX(const EnrichedMonad& em, const FinSet& X,
                                   const CheckOptions& opts = {});

// r^tau = mult . T(tau . mate of r): T(target) -> T(source), as a table.
FinMap rtau_map(const EnrichedMonad& em, const VRel& r,
                const CheckOptions& opts = {});

// Left adjoint of the algebra map at X: TX -> P_V(TX),
// x |-> join of all phi with a(phi) <= x in the induced order.
// Enumerates V^{TX}; CapExceeded when that exceeds opts.cap.
FinMap algebra_adjoint(const EnrichedMonad& em, const FinSet& X,
                       const CheckOptions& opts = {});

// The mate of r: X -*-> Y as a map Y -> P_V(X), y |-> r(-, y).
FinMap rel_mate(const QPtr& V, const VRel& r);
// Encoding helpers for V-valued tuples (little-endian base |V|).
std::uint64_t encode_tuple(const QPtr& V, const std::vector<Elem>& t);
std::vector<Elem> decode_tuple(const QPtr& V, std::uint64_t code, int len);

// Enrichment law suite: algebra laws of a, the adjoint retract of a,
// the hom adjunction x*v <= y iff v <= hom(x,y), recovery of y from the
// hom, V-category laws of the hom, action laws, and monotonicity of
// f |-> mult . Tf. Carrier-bound checks are skipped above opts.cap.
LawReport check_enrichment(const EnrichedMonad& em,
                           const std::vector<FinSet>& sets,
                           const CheckOptions& opts = {});
bool check_power_enriched(const EnrichedMonad& em,
                          const std::vector<FinSet>& sets,
                          const CheckOptions& opts = {});

// The two transports of tau: E sends r: X -*-> Y to a Kleisli map
// Y -> TX, L sends f: X -> TY to mult . Tf (the base set Y is passed
// alongside f since it cannot be recovered from the carrier TY).
struct TauCorrespondences {
  std::function<FinMap(const VRel&)> E;
  std::function<FinMap(const FinMap&, const FinSet&)> L;
};
TauCorrespondences tau_correspondences(const EnrichedMonad& em);
LawReport check_tau_correspondences(const EnrichedMonad& em,
                                    const std::vector<FinSet>& sets,
                                    const CheckOptions& opts = {});

}  // namespace relq
