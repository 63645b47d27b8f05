#pragma once

#include <cstdint>

#include "relq/extension.hpp"

namespace relq {

// A relation X ⇀ Y relative to a lax extension: a V-relation TX -*-> Y
// together with the context it lives in. The base sets are kept
// alongside the matrix since X is not recoverable from TX. Binary
// operations require the same context instance; mixing contexts raises
// MismatchError rather than silently composing incompatible data.
struct TVRel {
  LaxExtension ctx;
  FinSet src, tgt;  // X and Y
  VRel r;           // over (T(src), tgt)
};

// Validates boundaries: r must be a V-relation T(X) -*-> Y over ctx's
// quantale.
TVRel make_tvrel(const LaxExtension& ctx, const FinSet& X, const FinSet& Y,
                 VRel r);

bool tv_eq(const TVRel& a, const TVRel& b);
bool tv_le(const TVRel& a, const TVRel& b);
TVRel tv_meet2(const TVRel& a, const TVRel& b);
TVRel tv_join2(const TVRel& a, const TVRel& b);

// s after r: for r: X ⇀ Y and s: Y ⇀ Z the composite s . Er . m_X°.
// Associative on unitary relations exactly when the context extension
// is associative; over the identity-monad context it is plain relational
// composition.
TVRel kleisli_convolution(const TVRel& s, const TVRel& r);

// e_X° . E(1_X), the unit for convolution on unitary relations.
TVRel unit_sharp(const LaxExtension& ctx, const FinSet& X);

// For f: X -> Y the relation f# = e_X° . E(f°): Y ⇀ X. Contravariant:
// f# after g# equals (g . f)#, and unit_sharp is identity_map#.
TVRel map_sharp(const LaxExtension& ctx, const FinMap& f);

// r . E(1) = r together with e° . Er . m° = r. Equivalent to the two
// convolution unit equations, and to all point restrictions y° after r
// being unitary.
bool is_unitary(const TVRel& r);

// Right adjoint to convolution: the largest gamma: Y ⇀ Z with
// gamma after phi <= psi, for phi: X ⇀ Y and psi: X ⇀ Z. Computed as
// the residual of psi along E(phi) . m_X°. Unitary whenever psi is;
// for non-unitary psi the result is still the residual but carries no
// guarantee (callers that need one should test is_unitary first).
TVRel unitary_extension(const TVRel& psi, const TVRel& phi);

// Elements of the presheaf carrier at X, as little-endian base-|V|
// encodings of tuples over TX, ascending. The carrier is the set of
// unitary relations X ⇀ 1; labels are "p:" + code. Enumerates V^|TX|
// and filters; when that is out of reach but the context is a Kleisli
// extension, the carrier is read off as the columns of E(1_X) instead.
std::vector<std::uint64_t> presheaf_codes(const LaxExtension& E,
                                          const FinSet& X,
                                          const CheckOptions& opts = {});

// The discrete presheaf monad of an associative context: carrier the
// unitary relations X ⇀ 1, map by convolution with f#, unit x |-> x#,
// mult by convolution with the evaluation relation X ⇀ PiX. Refused
// (UsageError) when the context's construction-time associativity
// check failed; carriers out of reach raise CapExceeded with the
// required size.
FinMonad presheaf_monad(const LaxExtension& E, const CheckOptions& opts = {});

// pi_X: P_V X -> Pi X, phi |-> e_1° . E(phi). A monad morphism making
// the presheaf monad power-enriched.
MonadMorphism pi_morphism(const LaxExtension& E, const CheckOptions& opts = {});

// y_X: TX -> Pi X, x |-> x° . E(1_X) (the columns of E(1_X)).
MonadMorphism yoneda_embedding(const LaxExtension& E,
                               const CheckOptions& opts = {});

// The Kleisli extension of (presheaf_monad, pi_morphism), with closed
// forms: hom on Pi X is the pointwise residual meet, and r^pi sends a
// presheaf to its precomposite with E(r).
LaxExtension pi_extension(const LaxExtension& E, const CheckOptions& opts = {});

// For a Kleisli context, the mutually inverse passages between
// relations X ⇀ Y and maps Y -> TX: nbhd(r) = (m_X . tau_TX) . mate(r)
// and conv(f) = f° . E(1_X). Both refuse (UsageError) contexts that do
// not carry an enrichment.
FinMap nbhd(const TVRel& r);
TVRel conv(const LaxExtension& ctx, const FinSet& X, const FinMap& f);

// Convolution monoid and hom laws over the given base sizes:
//   unit-left, unit-right   1# after r = r = r after 1# (unitary r)
//   assoc-unitary           associativity on unitary triples
//   sharp-compose           f# after g# = (g . f)#
//   sharp-absorb            f# after phi = f° . phi
//   sharp-unitary           1# and f# are unitary
//   unitary-two-forms       reduced equations match the unit equations
//   pointwise-unitary       unitary iff all point restrictions are
//   inf-closed              binary meets of unitaries are unitary
//   hom-adjunction          gamma after phi <= psi iff gamma <= ext
//   hom-unit                ext of psi along 1# is psi
//   hom-unitary             ext of unitary psi is unitary
LawReport check_urel_laws(const LaxExtension& ctx,
                          const std::vector<int>& sizes,
                          const CheckOptions& opts = {});

// nbhd/conv round trips, monotonicity in both directions, unit images
// (nbhd of 1# is e_X), and contravariant functoriality of nbhd into
// Kleisli composition. Kleisli contexts only.
LawReport check_nbhd_conv(const LaxExtension& ctx,
                          const std::vector<int>& sizes,
                          const CheckOptions& opts = {});

// theta-naturality of a monad morphism between two contexts over the
// same quantale: with theta_X = (m_X . T alpha_X)° . T^(1_X), requires
// T^(S^ r) . theta_X = theta_Y . T^ r for all r, plus the pointwise
// inequality S^ r (x,y) <= T^ r (alpha x, alpha y) when both
// extensions are Kleisli. Both extensions must have passed their
// construction-time associativity checks.
LawReport check_laxext_morphism(const MonadMorphism& alpha,
                                const LaxExtension& SE,
                                const LaxExtension& TE,
                                const std::vector<int>& sizes,
                                const CheckOptions& opts = {});

// The presheaf functor on a morphism alpha: S -> T of contexts:
// component at X sends a unitary psi: X ⇀ 1 over S to
// e_1° . T^(psi) . (m_X . T alpha_X)° . T^(1_X), a unitary relation
// over T. A monad morphism Pi_S -> Pi_T.
MonadMorphism functor_F_on_morphism(const MonadMorphism& alpha,
                                    const LaxExtension& SE,
                                    const LaxExtension& TE,
                                    const CheckOptions& opts = {});

// Checks the functor image: monad-morphism laws of F(alpha),
// preservation of f# and of convolution.
LawReport check_functor_F(const MonadMorphism& alpha, const LaxExtension& SE,
                          const LaxExtension& TE,
                          const std::vector<int>& sizes,
                          const CheckOptions& opts = {});

// Yoneda structure of a context:
//   lemma             hom(psi over x#) = psi(x)
//   extension-agree   E r (x,y) = Pi^ r (x#, y#)
//   monad-morphism    y: T -> Pi is a monad morphism
//   laxext-morphism   theta-naturality of y between E and pi_extension
//   pi-enriched       (Pi, pi) passes the power-enrichment suite
//   pi-pointwise-order  induced order on Pi X is the pointwise order
// Sizes whose second-level carriers are out of reach are skipped with
// the required size in the witness.
LawReport check_yoneda(const LaxExtension& E, const std::vector<int>& sizes,
                       const CheckOptions& opts = {});

// The comparison kappa_X = m_X . tau_TX restricted to the presheaf
// carrier, for an enriched monad whose Kleisli extension is the
// context:
//   pi-carrier-size    |Pi X| = |TX|
//   kappa-bijective    kappa_X is a bijection Pi X -> TX
//   kappa-monad-morphism  kappa: Pi -> T is a monad morphism
//   kappa-pi-tau       kappa_X . pi_X = tau_X
//   triangle-unit      kappa_X . y_X = id on TX
//   triangle-counit    kappa^Pi_X . F(y)_X = id on Pi X
LawReport check_adjunction(const EnrichedMonad& em,
                           const std::vector<int>& sizes,
                           const CheckOptions& opts = {});

}  // namespace relq
