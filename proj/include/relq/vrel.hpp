#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "relq/quantale.hpp"
#include "relq/report.hpp"

namespace relq {

struct FinSetData {
  std::vector<std::string> labels;
  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;  // UsageError if unknown
};

using FinSet = std::shared_ptr<const FinSetData>;

FinSet make_finset(std::vector<std::string> labels);
FinSet standard_set(int n, const std::string& prefix = "x");  // x1..xn
FinSet one_set();  // the shared singleton {*}

// Carriers compare by label sequence, so independently materialized
// copies of the same set are interchangeable.
bool same_set(const FinSet& a, const FinSet& b);

struct FinMap {
  FinSet src, tgt;
  std::vector<int> img;
  int operator()(int x) const { return img[x]; }
};

FinMap make_finmap(FinSet src, FinSet tgt, std::vector<int> img);
FinMap identity_map(const FinSet& X);
FinMap compose(const FinMap& g, const FinMap& f);
bool same_map(const FinMap& f, const FinMap& g);

// All maps X -> Y in a fixed order (img enumerated little-endian).
std::vector<FinMap> all_finmaps(const FinSet& X, const FinSet& Y,
                                std::uint64_t cap = 1ull << 20);

// A relation X -*-> Y valued in a quantale: a dense |X| x |Y| matrix.
// Binary operations require both operands to carry the same quantale
// instance and structurally equal boundaries, else MismatchError.
struct VRel {
  QPtr V;
  FinSet src, tgt;
  std::vector<Elem> m;

  Elem at(int x, int y) const { return m[x * tgt->size() + y]; }
  Elem& at(int x, int y) { return m[x * tgt->size() + y]; }
};

VRel make_vrel(QPtr V, FinSet src, FinSet tgt);  // filled with bottom
VRel make_vrel(QPtr V, FinSet src, FinSet tgt, Elem fill);
VRel identity_rel(const QPtr& V, const FinSet& X);

// (s . r)(x,z) = join_y r(x,y) (x) s(y,z), for r: X -*-> Y, s: Y -*-> Z.
VRel compose(const VRel& s, const VRel& r);

bool rel_le(const VRel& r, const VRel& s);
bool rel_eq(const VRel& r, const VRel& s);
VRel rel_join(const QPtr& V, const FinSet& X, const FinSet& Y,
              const std::vector<VRel>& family);
VRel rel_meet(const QPtr& V, const FinSet& X, const FinSet& Y,
              const std::vector<VRel>& family);
VRel rel_join2(const VRel& r, const VRel& s);
VRel rel_tensor(const VRel& r, Elem v);  // entrywise r(x,y) (x) v

// Largest t: Y -*-> Z with t . r <= s, for r: X -*-> Y, s: X -*-> Z:
// (s over r)(y,z) = meet_x rres(r(x,y), s(x,z)).
VRel extension(const VRel& s, const VRel& r);

// Largest u: Y -*-> Z with t . u <= s, for t: Z -*-> W, s: Y -*-> W:
// (t under s)(y,z) = meet_w lres(s(y,w), t(z,w)).
VRel lifting(const VRel& t, const VRel& s);

VRel opposite(const VRel& r);

VRel graph(const QPtr& V, const FinMap& f);    // f(x)=y gets unit, else bottom
VRel cograph(const QPtr& V, const FinMap& f);  // opposite of graph

// Contravariant action on V-valued tuples, held as relations into the
// one-point set: for r: X -*-> Y and s: Y -*-> 1 the result is s . r,
// that is x |-> join_y r(x,y) (x) s(y).
VRel pv_apply(const VRel& r, const VRel& s);

// Enumeration of all relations X -*-> Y in a fixed order: cell (x,y) is
// digit x*|Y|+y of a little-endian base-|V| counter.
std::uint64_t count_vrels(const QPtr& V, const FinSet& X, const FinSet& Y);
VRel vrel_from_index(const QPtr& V, const FinSet& X, const FinSet& Y,
                     std::uint64_t idx);
std::uint64_t index_of_vrel(const VRel& r);
std::vector<VRel> all_vrels(const QPtr& V, const FinSet& X, const FinSet& Y,
                            std::uint64_t cap = 1ull << 20);
VRel random_vrel(const QPtr& V, const FinSet& X, const FinSet& Y, Rng& rng);

std::string show_rel(const VRel& r);  // one line per nonbottom entry

// The point y as a tuple over Y: a relation Y -*-> 1 with unit at y and
// bottom elsewhere.
VRel point_rel(const QPtr& V, const FinSet& Y, int y);

}  // namespace relq
