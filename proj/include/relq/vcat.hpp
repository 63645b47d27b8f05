#pragma once

#include "relq/vrel.hpp"

namespace relq {

// A set with a reflexive transitive V-valued structure relation.
struct VCat {
  FinSet X;
  VRel a;  // X -*-> X
};

VCat make_vcat(FinSet X, VRel a);  // boundary shape only; laws via check_vcat

// 1_X <= a and a.a <= a.
bool check_vcat(const VRel& a);

// a(x,y) <= b(f(x), f(y)) for all x,y.
bool check_vfunctor(const FinMap& f, const VCat& A, const VCat& B);

// x <= y iff unit <= a(x,y); requires check_vcat(a), else UsageError.
// Returned matrix is |X| x |X| row-major.
std::vector<char> induced_order(const VCat& A);

bool is_preorder(const std::vector<char>& m, int n);

// A relation absorbing the category structures on both sides, with
// equality: r.a = r and b.r = r for r: (X,a) -*-> (Y,b).
struct VMod {
  VCat src, tgt;
  VRel r;
};

bool check_vmodule(const VMod& m);

// f^* = f-cograph composed after b, a module (Y,b) -*-> (X,a) for a
// V-functor f: (X,a) -> (Y,b). Contravariant: identity maps to the
// structure relation itself, composites reverse.
VMod module_of_functor(const FinMap& f, const VCat& A, const VCat& B);

// Every structure relation on X making it a V-category, in enumeration
// order of all_vrels.
std::vector<VRel> all_vcat_structures(const QPtr& V, const FinSet& X,
                                      std::uint64_t cap = 1ull << 20);

}  // namespace relq
