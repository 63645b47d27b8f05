#include "relq/vcat.hpp"

namespace relq {

VCat make_vcat(FinSet X, VRel a) {
  if (!same_set(a.src, X) || !same_set(a.tgt, X))
    throw MismatchError("category structure must be an endo-relation on X");
  return {std::move(X), std::move(a)};
}

bool check_vcat(const VRel& a) {
  if (!same_set(a.src, a.tgt))
    throw MismatchError("category structure must be an endo-relation");
  return rel_le(identity_rel(a.V, a.src), a) && rel_le(compose(a, a), a);
}

bool check_vfunctor(const FinMap& f, const VCat& A, const VCat& B) {
  if (!same_set(f.src, A.X) || !same_set(f.tgt, B.X))
    throw MismatchError("functor boundary mismatch");
  const Quantale& V = *A.a.V;
  if (A.a.V != B.a.V)
    throw MismatchError("categories over different quantales");
  for (int x = 0; x < A.X->size(); ++x)
    for (int y = 0; y < A.X->size(); ++y)
      if (!V.leq(A.a.at(x, y), B.a.at(f(x), f(y)))) return false;
  return true;
}

std::vector<char> induced_order(const VCat& A) {
  if (!check_vcat(A.a))
    throw UsageError("structure relation is not reflexive and transitive");
  const int n = A.X->size();
  std::vector<char> m(n * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      m[x * n + y] = A.a.V->leq(A.a.V->unit, A.a.at(x, y));
  return m;
}

bool is_preorder(const std::vector<char>& m, int n) {
  for (int x = 0; x < n; ++x)
    if (!m[x * n + x]) return false;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (m[x * n + y] && m[y * n + z] && !m[x * n + z]) return false;
  return true;
}

bool check_vmodule(const VMod& m) {
  if (!same_set(m.r.src, m.src.X) || !same_set(m.r.tgt, m.tgt.X))
    throw MismatchError("module boundary mismatch");
  return rel_eq(compose(m.r, m.src.a), m.r) &&
         rel_eq(compose(m.tgt.a, m.r), m.r);
}

VMod module_of_functor(const FinMap& f, const VCat& A, const VCat& B) {
  VRel fstar = compose(cograph(A.a.V, f), B.a);
  return {B, A, fstar};
}

std::vector<VRel> all_vcat_structures(const QPtr& V, const FinSet& X,
                                      std::uint64_t cap) {
  std::vector<VRel> out;
  for (const VRel& a : all_vrels(V, X, X, cap))
    if (check_vcat(a)) out.push_back(a);
  return out;
}

}  // namespace relq
