#pragma once

#include <memory>
#include <string>
#include <vector>

#include "relq/report.hpp"

namespace relq {

// Element of a quantale, an index into its carrier.
using Elem = int;

// Raw tables as read from a file or builder, prior to any validation.
// leq and tensor are n*n row-major: leq[a*n+b] says a <= b,
// tensor[a*n+b] = a (x) b.
struct QuantaleSpec {
  std::vector<std::string> labels;
  std::vector<char> leq;
  std::vector<Elem> tensor;
  Elem unit = 0;

  int size() const { return static_cast<int>(labels.size()); }
};

// A finite, unital quantale: complete lattice with a sup-preserving
// associative tensor. Instances are produced by make_quantale, which
// verifies every law first, so a constructed value is trusted downstream.
//
// Residual tables satisfy, for all v:
//   v (x) a <= b  iff  v <= lres(b, a)        (b "over" a)
//   a (x) v <= b  iff  v <= rres(a, b)        (a "under" b)
// The two coincide exactly when the tensor is commutative.
class Quantale {
 public:
  std::string name;
  int n = 0;
  std::vector<std::string> labels;
  Elem unit = 0;
  Elem bot = 0;
  Elem top = 0;
  bool commutative = false;

  bool leq(Elem a, Elem b) const { return leq_[a * n + b] != 0; }
  Elem tensor(Elem a, Elem b) const { return tensor_[a * n + b]; }
  Elem join2(Elem a, Elem b) const { return join2_[a * n + b]; }
  Elem meet2(Elem a, Elem b) const { return meet2_[a * n + b]; }
  Elem lres(Elem b, Elem a) const { return lres_[b * n + a]; }
  Elem rres(Elem a, Elem b) const { return rres_[a * n + b]; }

  Elem join(const std::vector<Elem>& xs) const;
  Elem meet(const std::vector<Elem>& xs) const;

  const std::string& label(Elem a) const { return labels[a]; }
  Elem index_of(const std::string& label) const;  // UsageError if unknown

  QuantaleSpec spec() const;

  // Internal use; populated by make_quantale.
  std::vector<char> leq_;
  std::vector<Elem> tensor_, join2_, meet2_, lres_, rres_;
};

using QPtr = std::shared_ptr<const Quantale>;

// Runs every law against the raw tables: order axioms, lattice
// completeness, associativity, unit, distributivity of the tensor over
// joins. Exhaustive subset checks run only while 2^n stays within
// opts.cap and n <= 12; beyond that they are reported as skipped
// (binary joins plus bottom already force completeness on a finite
// carrier). Malformed tables raise UsageError instead of failing laws.
LawReport check_quantale_laws(const QuantaleSpec& spec,
                              const CheckOptions& opts = {});
LawReport check_quantale_laws(const QPtr& Q, const CheckOptions& opts = {});

// Validates the spec (throwing UsageError on the first broken law) and
// precomputes join/meet/residual tables.
QPtr make_quantale(const QuantaleSpec& spec, const std::string& name);

// Catalog: "two", "chain_min(n)" (n-chain, tensor = min, unit = top),
// "trop(n)" (carrier 0..n plus inf under reversed numeric order, tensor =
// truncated addition, unit = 0), "pow_monoid" (powerset of the 3-element
// monoid {e,a,b} with xy = x for x != e, under complex multiplication).
// Instances are cached; repeated calls return the same pointer, and
// relation operations require operands built over the same instance.
QPtr builtin_quantale(const std::string& name);
std::vector<std::string> builtin_quantale_names();

// Powerset-of-monoid quantale for an explicit monoid table; mult is
// m*m row-major, monoid element 0 is the monoid unit.
QuantaleSpec pow_monoid_spec(const std::vector<std::string>& monoid_labels,
                             const std::vector<int>& mult);

// Lax homomorphism f: src -> dst: monotone, f(a)(x)f(b) <= f(a(x)b),
// and unit_dst <= f(unit_src).
struct LaxHom {
  QPtr src;
  QPtr dst;
  std::vector<Elem> map;
};

LawReport check_lax_hom(const LaxHom& h);

// Verifies the residual tables of a constructed quantale against their
// adjunctions; catches tables corrupted after construction.
LawReport check_residual_tables(const QPtr& Q);

// The unique candidate two -> Q sending 0 to bottom and 1 to the unit.
LaxHom canonical_two_embedding(const QPtr& Q);

}  // namespace relq
