#pragma once

#include "relq/finmonad.hpp"

namespace relq {

// A lax extension of a set monad to V-valued relations: a function
// sending r: X -*-> Y to ext(r): TX -*-> TY, subject to six conditions
// (monotonicity, graph and cograph compatibility, lax functoriality,
// lax naturality of mult and unit cographs) verified by
// check_lax_extension. Constructed values carry the report of a small
// construction-time check; consumers that require an associative
// extension look at the `associative` flag instead of re-deriving it.
struct LaxExtensionData {
  std::string name;
  FinMonad T;
  QPtr V;
  std::function<VRel(const VRel&)> ext;

  // Optional per-entry evaluation ext_at(q, i, j) = ext(q)(i, j), used
  // by the checks when a full matrix over a double carrier does not
  // fit in memory. Present when the context admits closed forms.
  std::function<Elem(const VRel& q, int i, int j)> ext_at;

  // Set when built by kleisli_extension; carries tau and the closed
  // forms of the enrichment.
  bool kleisli = false;
  EnrichedMonad em;

  // Construction-time check results at small sizes.
  LawReport birth_laws;
  bool associative = false;
};
using LaxExtension = std::shared_ptr<const LaxExtensionData>;

// The six lax-extension conditions over all relations (exhaustive per
// hom-set up to 256 relations, seeded samples of opts.samples beyond)
// at the given set sizes. Laws: cond1-monotone, cond2-graph,
// cond3-cograph-whisker, cond4-compose, cond5-mult, cond6-unit.
LawReport check_lax_extension(const LaxExtension& E,
                              const std::vector<int>& sizes,
                              const CheckOptions& opts = {});

// Equality forms of conditions (4) and (5): assoc-cond4-eq,
// assoc-cond5-eq.
LawReport check_associative(const LaxExtension& E,
                            const std::vector<int>& sizes,
                            const CheckOptions& opts = {});

// The identity monad extended by the identity functor on relations.
LaxExtension identity_extension(const QPtr& V);

// Ultrafilter extension on finite sets, where every ultrafilter is
// principal: ext(r)(x., y.) distributes the classical formula
// meet over A in x., B in y. of join over a in A, b in B of r(a, b).
LaxExtension barr_ultrafilter_extension(const QPtr& V);

// Kleisli extension of a V-power-enriched monad:
//   ext(r)(t, u) = hom_TX(t, transport(r)(u)).
// Refused (UsageError) when the enrichment laws fail at sizes <= 2.
LaxExtension kleisli_extension(const EnrichedMonad& em,
                               const CheckOptions& opts = {});
LaxExtension kleisli_extension(const FinMonad& T, const MonadMorphism& tau,
                               const QPtr& V, const CheckOptions& opts = {});

// Pointwise identity between the mate of an extended relation and the
// adjoint of the algebra map composed with the transport; the shape
// that justifies computing extensions through the internal hom.
// Law: decomposition.
LawReport check_kleisli_decomposition(const EnrichedMonad& em,
                                      const std::vector<int>& sizes,
                                      const CheckOptions& opts = {});

}  // namespace relq
