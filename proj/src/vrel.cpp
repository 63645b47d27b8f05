#include "relq/vrel.hpp"

#include <algorithm>
#include <sstream>

namespace relq {

int FinSetData::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  throw UsageError("unknown set element: " + label);
}

FinSet make_finset(std::vector<std::string> labels) {
  std::vector<const std::string*> seen;
  seen.reserve(labels.size());
  for (const std::string& l : labels) seen.push_back(&l);
  std::sort(seen.begin(), seen.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (*seen[i - 1] == *seen[i])
      throw UsageError("duplicate set element label: " + *seen[i]);
  auto d = std::make_shared<FinSetData>();
  d->labels = std::move(labels);
  return d;
}

FinSet standard_set(int n, const std::string& prefix) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(prefix + std::to_string(i));
  return make_finset(std::move(labels));
}

FinSet one_set() {
  static FinSet one = make_finset({"*"});
  return one;
}

bool same_set(const FinSet& a, const FinSet& b) {
  return a == b || a->labels == b->labels;
}

FinMap make_finmap(FinSet src, FinSet tgt, std::vector<int> img) {
  if (img.size() != static_cast<std::size_t>(src->size()))
    throw UsageError("map is not total");
  for (int v : img)
    if (v < 0 || v >= tgt->size()) throw UsageError("map image out of range");
  return {std::move(src), std::move(tgt), std::move(img)};
}

FinMap identity_map(const FinSet& X) {
  std::vector<int> img(X->size());
  for (int i = 0; i < X->size(); ++i) img[i] = i;
  return {X, X, std::move(img)};
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (!same_set(g.src, f.tgt))
    throw MismatchError("map composition boundary mismatch");
  std::vector<int> img(f.src->size());
  for (int i = 0; i < f.src->size(); ++i) img[i] = g.img[f.img[i]];
  return {f.src, g.tgt, std::move(img)};
}

bool same_map(const FinMap& f, const FinMap& g) {
  return same_set(f.src, g.src) && same_set(f.tgt, g.tgt) && f.img == g.img;
}

std::vector<FinMap> all_finmaps(const FinSet& X, const FinSet& Y,
                                std::uint64_t cap) {
  const int nx = X->size(), ny = Y->size();
  const std::uint64_t total =
      checked_pow(static_cast<std::uint64_t>(ny), static_cast<std::uint64_t>(nx));
  if (nx > 0 && ny == 0) return {};
  if (total > cap)
    throw CapExceeded("too many maps to enumerate", total);
  std::vector<FinMap> out;
  std::vector<int> img(nx, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t t = k;
    for (int i = 0; i < nx; ++i) {
      img[i] = static_cast<int>(t % ny);
      t /= ny;
    }
    out.push_back({X, Y, img});
  }
  return out;
}

namespace {

void require_same_v(const VRel& r, const VRel& s) {
  if (r.V != s.V)
    throw MismatchError("relations carry different quantale instances: " +
                        r.V->name + " vs " + s.V->name);
}

void require_same_boundaries(const VRel& r, const VRel& s) {
  require_same_v(r, s);
  if (!same_set(r.src, s.src) || !same_set(r.tgt, s.tgt))
    throw MismatchError("relation boundary mismatch");
}

}  // namespace

VRel make_vrel(QPtr V, FinSet src, FinSet tgt) {
  Elem b = V->bot;
  return make_vrel(std::move(V), std::move(src), std::move(tgt), b);
}

VRel make_vrel(QPtr V, FinSet src, FinSet tgt, Elem fill) {
  VRel r{std::move(V), std::move(src), std::move(tgt), {}};
  r.m.assign(static_cast<std::size_t>(r.src->size()) * r.tgt->size(), fill);
  return r;
}

VRel identity_rel(const QPtr& V, const FinSet& X) {
  VRel r = make_vrel(V, X, X);
  for (int i = 0; i < X->size(); ++i) r.at(i, i) = V->unit;
  return r;
}

VRel compose(const VRel& s, const VRel& r) {
  require_same_v(r, s);
  if (!same_set(s.src, r.tgt))
    throw MismatchError("composition boundary mismatch");
  const Quantale& V = *r.V;
  VRel out = make_vrel(r.V, r.src, s.tgt);
  for (int x = 0; x < r.src->size(); ++x)
    for (int z = 0; z < s.tgt->size(); ++z) {
      Elem acc = V.bot;
      for (int y = 0; y < r.tgt->size(); ++y)
        acc = V.join2(acc, V.tensor(r.at(x, y), s.at(y, z)));
      out.at(x, z) = acc;
    }
  return out;
}

bool rel_le(const VRel& r, const VRel& s) {
  require_same_boundaries(r, s);
  for (std::size_t i = 0; i < r.m.size(); ++i)
    if (!r.V->leq(r.m[i], s.m[i])) return false;
  return true;
}

bool rel_eq(const VRel& r, const VRel& s) {
  require_same_boundaries(r, s);
  return r.m == s.m;
}

VRel rel_join(const QPtr& V, const FinSet& X, const FinSet& Y,
              const std::vector<VRel>& family) {
  VRel out = make_vrel(V, X, Y);
  for (const VRel& r : family) {
    require_same_boundaries(out, r);
    for (std::size_t i = 0; i < out.m.size(); ++i)
      out.m[i] = V->join2(out.m[i], r.m[i]);
  }
  return out;
}

VRel rel_meet(const QPtr& V, const FinSet& X, const FinSet& Y,
              const std::vector<VRel>& family) {
  VRel out = make_vrel(V, X, Y, V->top);
  for (const VRel& r : family) {
    require_same_boundaries(out, r);
    for (std::size_t i = 0; i < out.m.size(); ++i)
      out.m[i] = V->meet2(out.m[i], r.m[i]);
  }
  return out;
}

VRel rel_join2(const VRel& r, const VRel& s) {
  return rel_join(r.V, r.src, r.tgt, {r, s});
}

VRel rel_tensor(const VRel& r, Elem v) {
  VRel out = r;
  for (Elem& e : out.m) e = r.V->tensor(e, v);
  return out;
}

VRel extension(const VRel& s, const VRel& r) {
  require_same_v(r, s);
  if (!same_set(s.src, r.src))
    throw MismatchError("extension requires a shared source");
  const Quantale& V = *r.V;
  VRel out = make_vrel(r.V, r.tgt, s.tgt);
  for (int y = 0; y < r.tgt->size(); ++y)
    for (int z = 0; z < s.tgt->size(); ++z) {
      Elem acc = V.top;
      for (int x = 0; x < r.src->size(); ++x)
        acc = V.meet2(acc, V.rres(r.at(x, y), s.at(x, z)));
      out.at(y, z) = acc;
    }
  return out;
}

VRel lifting(const VRel& t, const VRel& s) {
  require_same_v(t, s);
  if (!same_set(t.tgt, s.tgt))
    throw MismatchError("lifting requires a shared target");
  const Quantale& V = *t.V;
  VRel out = make_vrel(t.V, s.src, t.src);
  for (int y = 0; y < s.src->size(); ++y)
    for (int z = 0; z < t.src->size(); ++z) {
      Elem acc = V.top;
      for (int w = 0; w < t.tgt->size(); ++w)
        acc = V.meet2(acc, V.lres(s.at(y, w), t.at(z, w)));
      out.at(y, z) = acc;
    }
  return out;
}

VRel opposite(const VRel& r) {
  VRel out = make_vrel(r.V, r.tgt, r.src);
  for (int x = 0; x < r.src->size(); ++x)
    for (int y = 0; y < r.tgt->size(); ++y) out.at(y, x) = r.at(x, y);
  return out;
}

VRel graph(const QPtr& V, const FinMap& f) {
  VRel out = make_vrel(V, f.src, f.tgt);
  for (int x = 0; x < f.src->size(); ++x) out.at(x, f.img[x]) = V->unit;
  return out;
}

VRel cograph(const QPtr& V, const FinMap& f) { return opposite(graph(V, f)); }

VRel pv_apply(const VRel& r, const VRel& s) {
  if (!same_set(s.tgt, one_set()))
    throw MismatchError("tuple argument must target the one-point set");
  return compose(s, r);
}

std::uint64_t count_vrels(const QPtr& V, const FinSet& X, const FinSet& Y) {
  return checked_pow(static_cast<std::uint64_t>(V->n),
                     static_cast<std::uint64_t>(X->size()) * Y->size());
}

VRel vrel_from_index(const QPtr& V, const FinSet& X, const FinSet& Y,
                     std::uint64_t idx) {
  VRel r = make_vrel(V, X, Y);
  const std::uint64_t base = static_cast<std::uint64_t>(V->n);
  for (std::size_t i = 0; i < r.m.size(); ++i) {
    r.m[i] = static_cast<Elem>(idx % base);
    idx /= base;
  }
  return r;
}

std::uint64_t index_of_vrel(const VRel& r) {
  const std::uint64_t base = static_cast<std::uint64_t>(r.V->n);
  std::uint64_t idx = 0, place = 1;
  for (std::size_t i = 0; i < r.m.size(); ++i) {
    idx += place * static_cast<std::uint64_t>(r.m[i]);
    place *= base;
  }
  return idx;
}

std::vector<VRel> all_vrels(const QPtr& V, const FinSet& X, const FinSet& Y,
                            std::uint64_t cap) {
  const std::uint64_t total = count_vrels(V, X, Y);
  if (total > cap)
    throw CapExceeded("too many relations to enumerate", total);
  std::vector<VRel> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i)
    out.push_back(vrel_from_index(V, X, Y, i));
  return out;
}

VRel random_vrel(const QPtr& V, const FinSet& X, const FinSet& Y, Rng& rng) {
  VRel r = make_vrel(V, X, Y);
  for (Elem& e : r.m)
    e = static_cast<Elem>(rng.below(static_cast<std::uint32_t>(V->n)));
  return r;
}

std::string show_rel(const VRel& r) {
  std::ostringstream os;
  bool any = false;
  for (int x = 0; x < r.src->size(); ++x)
    for (int y = 0; y < r.tgt->size(); ++y)
      if (r.at(x, y) != r.V->bot) {
        os << r.src->labels[x] << "," << r.tgt->labels[y] << ","
           << r.V->labels[r.at(x, y)] << "\n";
        any = true;
      }
  if (!any) os << "(bottom)\n";
  return os.str();
}

VRel point_rel(const QPtr& V, const FinSet& Y, int y) {
  VRel r = make_vrel(V, Y, one_set());
  r.at(y, 0) = V->unit;
  return r;
}

}  // namespace relq
