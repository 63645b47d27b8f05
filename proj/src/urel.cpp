#include "relq/urel.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace relq {

namespace {

std::string sname(const FinSet& X) {
  std::string s = "{";
  for (int i = 0; i < X->size(); ++i) {
    if (i) s += ",";
    s += X->labels[i];
  }
  return s + "}";
}

std::string shape(const VRel& r) {
  return sname(r.src) + "-*->" + sname(r.tgt);
}

std::string twit(const TVRel& r) {
  return "r#" + std::to_string(index_of_vrel(r.r));
}

std::string loc2(const FinSet& X, const FinSet& Y) {
  return "X=" + sname(X) + ",Y=" + sname(Y);
}

constexpr std::uint64_t kExhaustRels = 256;
constexpr std::uint64_t kExhaustPairs = 1ull << 12;
constexpr std::uint64_t kExhaustTriples = 1ull << 17;
// Bound on (carrier size) x (double carrier size) below which presheaf
// carriers are enumerated and filtered rather than read off E(1).
constexpr std::uint64_t kBruteWork = 1ull << 24;

std::uint64_t law_salt(int tag, int nx, int ny, int nz = 0) {
  return (static_cast<std::uint64_t>(tag) << 48) ^
         (static_cast<std::uint64_t>(nx) << 32) ^
         (static_cast<std::uint64_t>(ny) << 16) ^
         static_cast<std::uint64_t>(nz);
}

FinSet uset(int flavor, int n) {
  static const char* pref[4] = {"x", "y", "z", "w"};
  return standard_set(n, pref[flavor]);
}

void need_ctx(const LaxExtension& ctx, const char* who) {
  if (!ctx || !ctx->ext || !ctx->T || !ctx->V)
    throw UsageError(std::string(who) + ": empty context");
}

void need_same_ctx(const TVRel& a, const TVRel& b, const char* who) {
  if (a.ctx.get() != b.ctx.get())
    throw MismatchError(std::string(who) + ": operands live in contexts " +
                        a.ctx->name + " and " + b.ctx->name);
}

void validate_sizes(const char* who, const std::vector<int>& sizes) {
  if (sizes.empty()) throw UsageError(std::string(who) + ": no sizes given");
  for (int n : sizes)
    if (n < 0 || n > 12)
      throw UsageError(std::string(who) + ": size " + std::to_string(n) +
                       " out of range");
}

// A tuple over TX as a relation TX -*-> 1.
VRel tuple_rel(const QPtr& V, const FinSet& TX, std::uint64_t code) {
  std::vector<Elem> t = decode_tuple(V, code, TX->size());
  VRel phi = make_vrel(V, TX, one_set());
  for (int i = 0; i < TX->size(); ++i) phi.at(i, 0) = t[i];
  return phi;
}

std::uint64_t column_code(const QPtr& V, const VRel& r, int j) {
  std::vector<Elem> t(static_cast<std::size_t>(r.src->size()));
  for (int i = 0; i < r.src->size(); ++i) t[static_cast<std::size_t>(i)] = r.at(i, j);
  return encode_tuple(V, t);
}

// The presheaf carrier at one base set, plus the tuple encodings of its
// elements in ascending order.
struct PiCarrier {
  FinSet set;
  FinSet TX;
  std::vector<std::uint64_t> codes;

  int index_of(std::uint64_t code, const char* who) const {
    auto it = std::lower_bound(codes.begin(), codes.end(), code);
    if (it == codes.end() || *it != code)
      throw Error(std::string(who) + ": tuple with code " +
                  std::to_string(code) + " is not unitary over " + sname(TX));
    return static_cast<int>(it - codes.begin());
  }

  std::vector<Elem> tuple(const QPtr& V, int i) const {
    return decode_tuple(V, codes[static_cast<std::size_t>(i)], TX->size());
  }
};

// Shared state for all presheaf structure built over one context: the
// carriers, the cached extensions of identities and evaluation
// relations, and the memoized monad components. Keyed per context
// instance and cap; contexts entering the cache are pinned for the
// lifetime of the process so pointer keys stay unambiguous.
struct PiState {
  LaxExtension ctx;
  CheckOptions opts;
  std::map<std::vector<std::string>, PiCarrier> carriers;
  std::map<std::vector<std::string>, VRel> ones;
  std::map<std::vector<std::string>, VRel> eps;
  std::map<std::tuple<std::vector<std::string>, std::vector<std::string>,
                      std::vector<int>>,
           FinMap>
      maps;
  std::map<std::vector<std::string>, FinMap> units, mults;
  FinMonad monad;
  LaxExtension pext;
};

std::shared_ptr<PiState> pi_state(const LaxExtension& E,
                                  const CheckOptions& opts) {
  static std::map<std::pair<const LaxExtensionData*, std::uint64_t>,
                  std::shared_ptr<PiState>>
      cache;
  auto key = std::make_pair(E.get(), opts.cap);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto st = std::make_shared<PiState>();
    st->ctx = E;
    st->opts = opts;
    it = cache.emplace(key, std::move(st)).first;
  }
  return it->second;
}

const VRel& one_ext(PiState& st, const FinSet& X) {
  auto it = st.ones.find(X->labels);
  if (it == st.ones.end())
    it = st.ones.emplace(X->labels, st.ctx->ext(identity_rel(st.ctx->V, X)))
             .first;
  return it->second;
}

const PiCarrier& carrier(PiState& st, const FinSet& X) {
  auto it = st.carriers.find(X->labels);
  if (it != st.carriers.end()) return it->second;
  const LaxExtensionData& E = *st.ctx;
  const QPtr& V = E.V;
  FinSet TX = E.T->obj(X);
  const std::uint64_t total = checked_pow(
      static_cast<std::uint64_t>(V->n), static_cast<std::uint64_t>(TX->size()));
  PiCarrier c;
  c.TX = TX;
  bool brute = false;
  if (total <= st.opts.cap) {
    std::uint64_t work = ~0ull;
    try {
      FinSet TTX = E.T->obj(TX);
      work = total * static_cast<std::uint64_t>(TTX->size());
    } catch (const CapExceeded&) {
    }
    brute = work <= kBruteWork;
  }
  if (brute) {
    VRel e1 = E.ext(identity_rel(V, X));          // TX -*-> TX
    VRel m0 = cograph(V, E.T->mult(X));           // TX -*-> TTX
    VRel e10 = cograph(V, E.T->unit(one_set()));  // T1 -*-> 1
    for (std::uint64_t code = 0; code < total; ++code) {
      VRel phi = tuple_rel(V, TX, code);
      if (!rel_eq(compose(phi, e1), phi)) continue;
      VRel ephi = E.ext(phi);  // TTX -*-> T1
      if (!rel_eq(compose(e10, compose(ephi, m0)), phi)) continue;
      c.codes.push_back(code);
    }
  } else if (E.kleisli) {
    // Columns of E(1_X) are exactly the unitary tuples here, and there
    // are |TX| of them; this skips the |V|^|TX| sweep.
    const VRel& e1 = one_ext(st, X);
    for (int j = 0; j < TX->size(); ++j) c.codes.push_back(column_code(V, e1, j));
    std::sort(c.codes.begin(), c.codes.end());
    if (std::adjacent_find(c.codes.begin(), c.codes.end()) != c.codes.end())
      throw Error("presheaf carrier at X=" + sname(X) +
                  ": repeated column of E(1)");
  } else {
    throw CapExceeded("presheaf carrier at X=" + sname(X) + " needs |V|^" +
                          std::to_string(TX->size()) + " unitarity tests",
                      total);
  }
  std::vector<std::string> labels;
  labels.reserve(c.codes.size());
  for (std::uint64_t code : c.codes) labels.push_back("p:" + std::to_string(code));
  c.set = make_finset(std::move(labels));
  return st.carriers.emplace(X->labels, std::move(c)).first->second;
}

// E(eps_X) . m_X° where eps_X: TX -*-> PiX is evaluation; convolution
// with a second-level presheaf against this gives the multiplication.
const VRel& eps_ext(PiState& st, const FinSet& X) {
  auto it = st.eps.find(X->labels);
  if (it != st.eps.end()) return it->second;
  const LaxExtensionData& E = *st.ctx;
  const QPtr& V = E.V;
  const PiCarrier& cx = carrier(st, X);
  VRel eps = make_vrel(V, cx.TX, cx.set);
  for (int j = 0; j < cx.set->size(); ++j) {
    std::vector<Elem> t = cx.tuple(V, j);
    for (int x = 0; x < cx.TX->size(); ++x) eps.at(x, j) = t[static_cast<std::size_t>(x)];
  }
  VRel q = compose(E.ext(eps), cograph(V, E.T->mult(X)));  // TX -*-> T(PiX)
  return st.eps.emplace(X->labels, std::move(q)).first->second;
}

struct TVFam {
  std::vector<TVRel> rels;
  bool exhaustive = true;
};

TVFam plain_fam(const LaxExtension& ctx, const FinSet& X, const FinSet& Y,
                const CheckOptions& opts, std::uint64_t salt, int max_samples) {
  const QPtr& V = ctx->V;
  FinSet TX = ctx->T->obj(X);
  TVFam out;
  if (count_vrels(V, TX, Y) <= kExhaustRels) {
    for (VRel& r : all_vrels(V, TX, Y))
      out.rels.push_back(make_tvrel(ctx, X, Y, std::move(r)));
    return out;
  }
  out.exhaustive = false;
  Rng rng(opts.seed ^ salt);
  for (int i = 0; i < max_samples; ++i)
    out.rels.push_back(make_tvrel(ctx, X, Y, random_vrel(V, TX, Y, rng)));
  return out;
}

// Unitary relations X ⇀ Y. Exhaustive filtering when the ambient
// hom-set is small; otherwise sampled as tuples of presheaf elements
// (columns determine unitarity, which the pointwise law re-checks on
// the exhaustive ranges).
TVFam unitary_fam(const LaxExtension& ctx, const FinSet& X, const FinSet& Y,
                  const CheckOptions& opts, std::uint64_t salt,
                  int max_samples) {
  const QPtr& V = ctx->V;
  FinSet TX = ctx->T->obj(X);
  TVFam out;
  if (count_vrels(V, TX, Y) <= 4 * kExhaustRels) {
    for (VRel& r : all_vrels(V, TX, Y)) {
      TVRel t = make_tvrel(ctx, X, Y, std::move(r));
      if (is_unitary(t)) out.rels.push_back(std::move(t));
    }
    return out;
  }
  out.exhaustive = false;
  auto st = pi_state(ctx, opts);
  const PiCarrier& c = carrier(*st, X);
  Rng rng(opts.seed ^ salt);
  for (int i = 0; i < max_samples; ++i) {
    VRel r = make_vrel(V, TX, Y);
    for (int y = 0; y < Y->size(); ++y) {
      std::vector<Elem> t =
          c.tuple(V, static_cast<int>(rng.below(static_cast<std::uint32_t>(c.set->size()))));
      for (int x = 0; x < TX->size(); ++x) r.at(x, y) = t[static_cast<std::size_t>(x)];
    }
    out.rels.push_back(make_tvrel(ctx, X, Y, std::move(r)));
  }
  return out;
}

std::vector<FinMap> map_fam(const FinSet& X, const FinSet& Y,
                            const CheckOptions& opts, std::uint64_t salt) {
  const std::uint64_t cnt = checked_pow(
      static_cast<std::uint64_t>(Y->size()), static_cast<std::uint64_t>(X->size()));
  if (cnt <= kExhaustRels) return all_finmaps(X, Y);
  Rng rng(opts.seed ^ salt);
  std::vector<FinMap> out;
  for (int i = 0; i < 32; ++i) {
    std::vector<int> img(static_cast<std::size_t>(X->size()));
    for (int x = 0; x < X->size(); ++x)
      img[static_cast<std::size_t>(x)] =
          static_cast<int>(rng.below(static_cast<std::uint32_t>(Y->size())));
    out.push_back(make_finmap(X, Y, std::move(img)));
  }
  return out;
}

// Rewrites a sub-report's rows under the given suite, prefixing law
// names, so umbrella checks stay transparent about what ran inside.
void absorb(LawReport& rep, const std::string& suite, const std::string& prefix,
            const LawReport& sub) {
  for (const LawResult& row : sub.results) {
    LawResult out = row;
    out.suite = suite;
    out.law = prefix + "/" + row.law;
    rep.results.push_back(std::move(out));
  }
}

// General component of the presheaf functor on a context morphism:
// r: X ⇀ Y over the source context is sent to
// e_Y° . T^(r) . (m_X . T alpha_X)° . T^(1_X) over the target one.
TVRel functor_image(const MonadMorphism& alpha, const LaxExtension& TE,
                    const TVRel& r) {
  const QPtr& V = TE->V;
  FinMap aX = alpha.at(r.src);
  FinMap g = compose(TE->T->mult(r.src), TE->T->map(aX));  // T(SX) -> TX
  VRel pre = compose(cograph(V, g), TE->ext(identity_rel(V, r.src)));
  VRel tr = TE->ext(r.r);  // T(SX) -*-> TY
  VRel out = compose(cograph(V, TE->T->unit(r.tgt)), compose(tr, pre));
  return make_tvrel(TE, r.src, r.tgt, std::move(out));
}

}  // namespace

TVRel make_tvrel(const LaxExtension& ctx, const FinSet& X, const FinSet& Y,
                 VRel r) {
  need_ctx(ctx, "make_tvrel");
  if (r.V != ctx->V)
    throw MismatchError("make_tvrel: relation and context quantales differ");
  if (!same_set(r.src, ctx->T->obj(X)) || !same_set(r.tgt, Y))
    throw MismatchError("make_tvrel: relation " + shape(r) + " does not fit T" +
                        sname(X) + " -*-> " + sname(Y));
  return TVRel{ctx, X, Y, std::move(r)};
}

bool tv_eq(const TVRel& a, const TVRel& b) {
  need_same_ctx(a, b, "tv_eq");
  return rel_eq(a.r, b.r);
}

bool tv_le(const TVRel& a, const TVRel& b) {
  need_same_ctx(a, b, "tv_le");
  return rel_le(a.r, b.r);
}

TVRel tv_meet2(const TVRel& a, const TVRel& b) {
  need_same_ctx(a, b, "tv_meet2");
  return TVRel{a.ctx, a.src, a.tgt, rel_meet(a.r.V, a.r.src, a.r.tgt, {a.r, b.r})};
}

TVRel tv_join2(const TVRel& a, const TVRel& b) {
  need_same_ctx(a, b, "tv_join2");
  return TVRel{a.ctx, a.src, a.tgt, rel_join2(a.r, b.r)};
}

TVRel kleisli_convolution(const TVRel& s, const TVRel& r) {
  need_same_ctx(s, r, "kleisli_convolution");
  if (!same_set(s.src, r.tgt))
    throw MismatchError("kleisli_convolution: middle sets " + sname(s.src) +
                        " and " + sname(r.tgt) + " differ");
  const LaxExtensionData& E = *r.ctx;
  VRel er = E.ext(r.r);                        // T(TX) -*-> TY
  VRel m0 = cograph(E.V, E.T->mult(r.src));    // TX -*-> T(TX)
  return TVRel{r.ctx, r.src, s.tgt, compose(s.r, compose(er, m0))};
}

TVRel unit_sharp(const LaxExtension& ctx, const FinSet& X) {
  need_ctx(ctx, "unit_sharp");
  VRel e1 = ctx->ext(identity_rel(ctx->V, X));   // TX -*-> TX
  VRel e0 = cograph(ctx->V, ctx->T->unit(X));    // TX -*-> X
  return TVRel{ctx, X, X, compose(e0, e1)};
}

TVRel map_sharp(const LaxExtension& ctx, const FinMap& f) {
  need_ctx(ctx, "map_sharp");
  VRel ef = ctx->ext(cograph(ctx->V, f));             // TY -*-> TX
  VRel e0 = cograph(ctx->V, ctx->T->unit(f.src));     // TX -*-> X
  return TVRel{ctx, f.tgt, f.src, compose(e0, ef)};
}

bool is_unitary(const TVRel& r) {
  const LaxExtensionData& E = *r.ctx;
  const QPtr& V = E.V;
  VRel e1 = E.ext(identity_rel(V, r.src));  // TX -*-> TX
  if (!rel_eq(compose(r.r, e1), r.r)) return false;
  VRel er = E.ext(r.r);                        // T(TX) -*-> TY
  VRel m0 = cograph(V, E.T->mult(r.src));      // TX -*-> T(TX)
  VRel ey = cograph(V, E.T->unit(r.tgt));      // TY -*-> Y
  return rel_eq(compose(ey, compose(er, m0)), r.r);
}

TVRel unitary_extension(const TVRel& psi, const TVRel& phi) {
  need_same_ctx(psi, phi, "unitary_extension");
  if (!same_set(psi.src, phi.src))
    throw MismatchError("unitary_extension: source sets " + sname(psi.src) +
                        " and " + sname(phi.src) + " differ");
  const LaxExtensionData& E = *psi.ctx;
  VRel q = compose(E.ext(phi.r), cograph(E.V, E.T->mult(phi.src)));  // TX -*-> TY
  return TVRel{psi.ctx, phi.tgt, psi.tgt, extension(psi.r, q)};
}

std::vector<std::uint64_t> presheaf_codes(const LaxExtension& E,
                                          const FinSet& X,
                                          const CheckOptions& opts) {
  need_ctx(E, "presheaf_codes");
  auto st = pi_state(E, opts);
  return carrier(*st, X).codes;
}

FinMonad presheaf_monad(const LaxExtension& E, const CheckOptions& opts) {
  need_ctx(E, "presheaf_monad");
  if (!E->associative)
    throw UsageError("presheaf_monad(" + E->name +
                     "): the construction-time associativity check failed, so "
                     "convolution is not a monad multiplication");
  auto st = pi_state(E, opts);
  if (st->monad) return st->monad;
  auto D = std::make_shared<FinMonadData>();
  D->name = "presheaf(" + E->name + ")";
  D->obj = [st](const FinSet& X) { return carrier(*st, X).set; };
  D->map = [st](const FinMap& f) {
    auto key = std::make_tuple(f.src->labels, f.tgt->labels, f.img);
    auto it = st->maps.find(key);
    if (it != st->maps.end()) return it->second;
    const QPtr& V = st->ctx->V;
    const PiCarrier& cx = carrier(*st, f.src);
    const PiCarrier& cy = carrier(*st, f.tgt);
    // Convolution with the sharp of f reduces to precomposition by the
    // extended opposite graph, which stays one carrier level down.
    VRel q = st->ctx->ext(cograph(V, f));  // TY -*-> TX
    std::vector<int> img(static_cast<std::size_t>(cx.set->size()));
    for (int i = 0; i < cx.set->size(); ++i) {
      VRel psi = tuple_rel(V, cx.TX, cx.codes[static_cast<std::size_t>(i)]);
      img[static_cast<std::size_t>(i)] =
          cy.index_of(column_code(V, compose(psi, q), 0), "presheaf map");
    }
    FinMap out = make_finmap(cx.set, cy.set, std::move(img));
    st->maps.emplace(std::move(key), out);
    return out;
  };
  D->unit = [st](const FinSet& X) {
    auto it = st->units.find(X->labels);
    if (it != st->units.end()) return it->second;
    const QPtr& V = st->ctx->V;
    const PiCarrier& cx = carrier(*st, X);
    std::vector<int> img(static_cast<std::size_t>(X->size()));
    for (int x = 0; x < X->size(); ++x) {
      TVRel xs = map_sharp(st->ctx, make_finmap(one_set(), X, {x}));
      img[static_cast<std::size_t>(x)] =
          cx.index_of(column_code(V, xs.r, 0), "presheaf unit");
    }
    FinMap out = make_finmap(X, cx.set, std::move(img));
    st->units.emplace(X->labels, out);
    return out;
  };
  D->mult = [st](const FinSet& X) {
    auto it = st->mults.find(X->labels);
    if (it != st->mults.end()) return it->second;
    const QPtr& V = st->ctx->V;
    const PiCarrier& cx = carrier(*st, X);
    const PiCarrier& cp = carrier(*st, cx.set);
    const VRel& q = eps_ext(*st, X);  // TX -*-> T(PiX)
    std::vector<int> img(static_cast<std::size_t>(cp.set->size()));
    for (int i = 0; i < cp.set->size(); ++i) {
      VRel psi = tuple_rel(V, cp.TX, cp.codes[static_cast<std::size_t>(i)]);
      img[static_cast<std::size_t>(i)] =
          cx.index_of(column_code(V, compose(psi, q), 0), "presheaf mult");
    }
    FinMap out = make_finmap(cp.set, cx.set, std::move(img));
    st->mults.emplace(X->labels, out);
    return out;
  };
  st->monad = D;
  return D;
}

MonadMorphism pi_morphism(const LaxExtension& E, const CheckOptions& opts) {
  need_ctx(E, "pi_morphism");
  MonadMorphism m;
  m.name = "pi";
  m.S = pv_monad(E->V);
  m.T = presheaf_monad(E, opts);
  auto st = pi_state(E, opts);
  FinMonad PV = m.S;
  m.at = [st, PV](const FinSet& X) {
    const QPtr& V = st->ctx->V;
    const PiCarrier& cx = carrier(*st, X);
    FinSet PX = PV->obj(X);
    VRel e10 = cograph(V, st->ctx->T->unit(one_set()));  // T1 -*-> 1
    std::vector<int> img(static_cast<std::size_t>(PX->size()));
    for (int i = 0; i < PX->size(); ++i) {
      VRel phi = tuple_rel(V, X, static_cast<std::uint64_t>(i));  // X -*-> 1
      VRel e = st->ctx->ext(phi);                                 // TX -*-> T1
      img[static_cast<std::size_t>(i)] =
          cx.index_of(column_code(V, compose(e10, e), 0), "pi component");
    }
    return make_finmap(PX, cx.set, std::move(img));
  };
  return m;
}

MonadMorphism yoneda_embedding(const LaxExtension& E, const CheckOptions& opts) {
  need_ctx(E, "yoneda_embedding");
  MonadMorphism m;
  m.name = "yoneda";
  m.S = E->T;
  m.T = presheaf_monad(E, opts);
  auto st = pi_state(E, opts);
  m.at = [st](const FinSet& X) {
    const PiCarrier& c = carrier(*st, X);
    const VRel& e1 = one_ext(*st, X);
    std::vector<int> img(static_cast<std::size_t>(c.TX->size()));
    for (int x = 0; x < c.TX->size(); ++x)
      img[static_cast<std::size_t>(x)] =
          c.index_of(column_code(st->ctx->V, e1, x), "yoneda embedding");
    return make_finmap(c.TX, c.set, std::move(img));
  };
  return m;
}

LaxExtension pi_extension(const LaxExtension& E, const CheckOptions& opts) {
  need_ctx(E, "pi_extension");
  auto st = pi_state(E, opts);
  if (st->pext) return st->pext;
  FinMonad Pi = presheaf_monad(E, opts);
  MonadMorphism pi = pi_morphism(E, opts);
  const QPtr V = E->V;

  EnrichedMonad em;
  em.name = Pi->name + "/pi/" + V->name;
  em.T = Pi;
  em.tau = pi;
  em.V = V;
  auto hst = st;
  em.hom_at = [hst, V](const FinSet& Z, std::uint64_t i, std::uint64_t j) {
    const PiCarrier& c = carrier(*hst, Z);
    std::vector<Elem> ti = c.tuple(V, static_cast<int>(i));
    std::vector<Elem> tj = c.tuple(V, static_cast<int>(j));
    Elem h = V->top;
    for (int t = 0; t < c.TX->size(); ++t)
      h = V->meet2(h, V->rres(ti[static_cast<std::size_t>(t)],
                              tj[static_cast<std::size_t>(t)]));
    return h;
  };
  em.rtau_at = [hst, V](const VRel& r, std::uint64_t y) {
    const PiCarrier& cy = carrier(*hst, r.tgt);
    const PiCarrier& cx = carrier(*hst, r.src);
    VRel er = hst->ctx->ext(r);  // TX -*-> TY
    VRel psi = tuple_rel(V, cy.TX, cy.codes[static_cast<std::size_t>(y)]);
    return static_cast<std::uint64_t>(
        cx.index_of(column_code(V, compose(psi, er), 0), "presheaf transpose"));
  };

  if (!check_power_enriched(em, default_test_sets(1), opts))
    throw Error("pi_extension(" + E->name +
                "): power-enrichment laws fail at sizes <= 1");
  try {
    FinSet X2 = standard_set(2);
    FinSet PX = Pi->obj(X2);
    std::uint64_t w = checked_pow(static_cast<std::uint64_t>(V->n),
                                  static_cast<std::uint64_t>(PX->size()));
    if (w <= opts.cap) {
      w *= static_cast<std::uint64_t>(E->T->obj(PX)->size());
      if (w <= kBruteWork && !check_power_enriched(em, {X2}, opts))
        throw Error("pi_extension(" + E->name +
                    "): power-enrichment laws fail at size 2");
    }
  } catch (const CapExceeded&) {
  }

  auto D = std::make_shared<LaxExtensionData>();
  D->name = "kleisli(" + em.name + ")";
  D->T = Pi;
  D->V = V;
  D->kleisli = true;
  D->em = em;
  const EnrichedMonad cem = em;
  const CheckOptions copts = opts;
  D->ext = [cem, copts](const VRel& r) {
    FinMap rt = rtau_map(cem, r, copts);  // Pi(tgt) -> Pi(src)
    FinSet PX = rt.tgt, PY = rt.src;
    const std::uint64_t cells =
        static_cast<std::uint64_t>(PX->size()) * PY->size();
    if (cells > copts.cap)
      throw CapExceeded("presheaf extension matrix on " +
                            std::to_string(PX->size()) + " x " +
                            std::to_string(PY->size()) + " carriers",
                        cells);
    VRel out = make_vrel(cem.V, PX, PY);
    for (int i = 0; i < PX->size(); ++i)
      for (int j = 0; j < PY->size(); ++j)
        out.at(i, j) = cem.hom_at(r.src, static_cast<std::uint64_t>(i),
                                  static_cast<std::uint64_t>(rt.img[j]));
    return out;
  };
  D->ext_at = [cem](const VRel& q, int i, int j) {
    return cem.hom_at(q.src, static_cast<std::uint64_t>(i),
                      cem.rtau_at(q, static_cast<std::uint64_t>(j)));
  };
  LaxExtension view = D;
  D->birth_laws = check_lax_extension(view, {1}, opts);
  LawReport assoc = check_associative(view, {1}, opts);
  D->associative = D->birth_laws.all_pass() && assoc.all_pass();
  D->birth_laws.merge(assoc);
  st->pext = view;
  return view;
}

FinMap nbhd(const TVRel& r) {
  if (!r.ctx->kleisli)
    throw UsageError("nbhd(" + r.ctx->name + "): context carries no enrichment");
  const EnrichedMonad& em = r.ctx->em;
  FinSet TX = em.T->obj(r.src);
  FinMap g = compose(em.tau.at(TX), rel_mate(em.V, r.r));  // Y -> T(TX)
  return compose(em.T->mult(r.src), g);                    // Y -> TX
}

TVRel conv(const LaxExtension& ctx, const FinSet& X, const FinMap& f) {
  need_ctx(ctx, "conv");
  if (!ctx->kleisli)
    throw UsageError("conv(" + ctx->name + "): context carries no enrichment");
  FinSet TX = ctx->T->obj(X);
  if (!same_set(f.tgt, TX))
    throw MismatchError("conv: map into " + sname(f.tgt) + " does not land in T" +
                        sname(X));
  VRel e1 = ctx->ext(identity_rel(ctx->V, X));
  return TVRel{ctx, X, f.src, compose(cograph(ctx->V, f), e1)};
}

LawReport check_urel_laws(const LaxExtension& ctx,
                          const std::vector<int>& sizes,
                          const CheckOptions& opts) {
  need_ctx(ctx, "check_urel_laws");
  validate_sizes("check_urel_laws", sizes);
  LawReport rep;
  const std::string suite = "urel(" + ctx->name + ")";
  const QPtr& V = ctx->V;
  {
    LawAccum ul(rep, suite, "unit-left");
    LawAccum ur(rep, suite, "unit-right");
    LawAccum two(rep, suite, "unitary-two-forms");
    LawAccum pw(rep, suite, "pointwise-unitary");
    LawAccum inf(rep, suite, "inf-closed");
    LawAccum su(rep, suite, "sharp-unitary");
    LawAccum hu(rep, suite, "hom-unit");
    LawAccum sc(rep, suite, "sharp-compose");
    LawAccum sa(rep, suite, "sharp-absorb");
    LawAccum as(rep, suite, "assoc-unitary");
    LawAccum ha(rep, suite, "hom-adjunction");
    LawAccum hn(rep, suite, "hom-unitary");
    for (int nx : sizes) {
      for (int ny : sizes) {
        FinSet X = uset(0, nx), Y = uset(1, ny);
        try {
          std::uint64_t ec = ~0ull;
          try {
            FinSet TX = ctx->T->obj(X);
            ec = static_cast<std::uint64_t>(ctx->T->obj(TX)->size()) *
                 static_cast<std::uint64_t>(ctx->T->obj(Y)->size());
          } catch (const CapExceeded&) {
          }
          const int ms = ec <= (1ull << 18) ? 24 : 4;
          TVFam U = unitary_fam(ctx, X, Y, opts, law_salt(1, nx, ny), ms);
          TVFam P = plain_fam(ctx, X, Y, opts, law_salt(2, nx, ny), ms);
          TVRel oX = unit_sharp(ctx, X);
          TVRel oY = unit_sharp(ctx, Y);
          if (!is_unitary(oX)) su.fail("1# at X=" + sname(X));
          su.note_ran();
          for (const FinMap& f : map_fam(X, Y, opts, law_salt(3, nx, ny))) {
            if (!is_unitary(map_sharp(ctx, f)))
              su.fail("f# for f#" + std::to_string(index_of_vrel(graph(V, f))));
            su.note_ran();
          }
          for (const TVRel& u : U.rels) {
            if (!tv_eq(kleisli_convolution(u, oX), u))
              ur.fail(twit(u) + " at " + loc2(X, Y));
            ur.note_ran();
            if (!tv_eq(kleisli_convolution(oY, u), u))
              ul.fail(twit(u) + " at " + loc2(X, Y));
            ul.note_ran();
            if (!tv_eq(unitary_extension(u, oX), u))
              hu.fail(twit(u) + " at " + loc2(X, Y));
            hu.note_ran();
          }
          for (const TVRel& r : P.rels) {
            const bool red = is_unitary(r);
            const bool cv = tv_eq(kleisli_convolution(r, oX), r) &&
                            tv_eq(kleisli_convolution(oY, r), r);
            if (red != cv) two.fail(twit(r) + " at " + loc2(X, Y));
            two.note_ran();
            bool pts = true;
            for (int y = 0; y < Y->size() && pts; ++y) {
              TVRel py = TVRel{ctx, r.src, one_set(),
                               compose(point_rel(V, Y, y), r.r)};
              pts = is_unitary(py);
            }
            if (red != pts) pw.fail(twit(r) + " at " + loc2(X, Y));
            pw.note_ran();
          }
          const std::uint64_t npairs =
              static_cast<std::uint64_t>(U.rels.size()) * U.rels.size();
          if (npairs <= kExhaustPairs) {
            for (const TVRel& a : U.rels)
              for (const TVRel& b : U.rels) {
                if (!is_unitary(tv_meet2(a, b)))
                  inf.fail(twit(a) + "^" + twit(b) + " at " + loc2(X, Y));
                inf.note_ran();
              }
          } else if (!U.rels.empty()) {
            Rng rng(opts.seed ^ law_salt(4, nx, ny));
            for (int k = 0; k < 128; ++k) {
              const TVRel& a = U.rels[rng.below(static_cast<std::uint32_t>(U.rels.size()))];
              const TVRel& b = U.rels[rng.below(static_cast<std::uint32_t>(U.rels.size()))];
              if (!is_unitary(tv_meet2(a, b)))
                inf.fail(twit(a) + "^" + twit(b) + " at " + loc2(X, Y));
              inf.note_ran();
            }
          }
        } catch (const CapExceeded& e) {
          rep.skip(suite, "laws at " + loc2(X, Y), e.what());
          continue;
        }
        for (int nz : sizes) {
          FinSet Z = uset(2, nz), W = uset(3, nx);
          try {
            TVFam U_XY = unitary_fam(ctx, X, Y, opts, law_salt(1, nx, ny), 8);
            TVFam U_YZ = unitary_fam(ctx, Y, Z, opts, law_salt(5, ny, nz), 8);
            TVFam U_XZ = unitary_fam(ctx, X, Z, opts, law_salt(6, nx, nz), 8);
            TVFam U_ZW = unitary_fam(ctx, Z, W, opts, law_salt(7, nz, nx), 8);
            TVFam G = plain_fam(ctx, Y, Z, opts, law_salt(8, ny, nz), 16);
            for (const FinMap& f : map_fam(X, Y, opts, law_salt(9, nx, ny)))
              for (const FinMap& g : map_fam(Y, Z, opts, law_salt(10, ny, nz))) {
                if (!tv_eq(kleisli_convolution(map_sharp(ctx, f),
                                               map_sharp(ctx, g)),
                           map_sharp(ctx, compose(g, f))))
                  sc.fail("f,g at " + loc2(X, Y) + ",Z=" + sname(Z));
                sc.note_ran();
              }
            for (const FinMap& f : map_fam(Z, Y, opts, law_salt(11, nz, ny)))
              for (const TVRel& phi : U_XY.rels) {
                TVRel direct{ctx, X, Z, compose(cograph(V, f), phi.r)};
                if (!tv_eq(kleisli_convolution(map_sharp(ctx, f), phi), direct))
                  sa.fail(twit(phi) + " at " + loc2(X, Y) + ",Z=" + sname(Z));
                sa.note_ran();
              }
            const std::uint64_t nass =
                static_cast<std::uint64_t>(U_XY.rels.size()) *
                U_YZ.rels.size() * U_ZW.rels.size();
            auto assoc_case = [&](const TVRel& r, const TVRel& s,
                                  const TVRel& t) {
              TVRel lhs = kleisli_convolution(kleisli_convolution(t, s), r);
              TVRel rhs = kleisli_convolution(t, kleisli_convolution(s, r));
              if (!tv_eq(lhs, rhs))
                as.fail(twit(t) + "," + twit(s) + "," + twit(r) + " at " +
                        loc2(X, Y) + ",Z=" + sname(Z) + ",W=" + sname(W));
              as.note_ran();
            };
            if (nass <= kExhaustPairs) {
              for (const TVRel& r : U_XY.rels)
                for (const TVRel& s : U_YZ.rels)
                  for (const TVRel& t : U_ZW.rels) assoc_case(r, s, t);
            } else if (nass > 0) {
              Rng rng(opts.seed ^ law_salt(12, nx, ny, nz));
              for (int k = 0; k < 256; ++k)
                assoc_case(
                    U_XY.rels[rng.below(static_cast<std::uint32_t>(U_XY.rels.size()))],
                    U_YZ.rels[rng.below(static_cast<std::uint32_t>(U_YZ.rels.size()))],
                    U_ZW.rels[rng.below(static_cast<std::uint32_t>(U_ZW.rels.size()))]);
            }
            // gamma after phi <= psi iff gamma <= (psi over phi), with
            // the extension of phi hoisted out of the gamma loop.
            VRel m0 = cograph(V, ctx->T->mult(X));
            for (const TVRel& phi : U_XY.rels) {
              VRel q = compose(ctx->ext(phi.r), m0);  // TX -*-> TY
              for (const TVRel& psi : U_XZ.rels) {
                TVRel res = unitary_extension(psi, phi);
                if (!is_unitary(res))
                  hn.fail(twit(psi) + "/" + twit(phi) + " at " + loc2(X, Y));
                hn.note_ran();
                for (const TVRel& gam : G.rels) {
                  const bool left = rel_le(compose(gam.r, q), psi.r);
                  const bool right = rel_le(gam.r, res.r);
                  if (left != right) {
                    ha.fail(twit(gam) + "|" + twit(psi) + "/" + twit(phi) +
                            " at " + loc2(X, Y) + ",Z=" + sname(Z));
                  }
                  ha.note_ran();
                }
              }
            }
          } catch (const CapExceeded& e) {
            rep.skip(suite,
                     "laws at " + loc2(X, Y) + ",Z=" + sname(Z), e.what());
          }
        }
      }
    }
  }
  return rep;
}

LawReport check_nbhd_conv(const LaxExtension& ctx,
                          const std::vector<int>& sizes,
                          const CheckOptions& opts) {
  need_ctx(ctx, "check_nbhd_conv");
  validate_sizes("check_nbhd_conv", sizes);
  if (!ctx->kleisli)
    throw UsageError("check_nbhd_conv(" + ctx->name +
                     "): context carries no enrichment");
  LawReport rep;
  const std::string suite = "nbhd-conv(" + ctx->name + ")";
  const EnrichedMonad& em = ctx->em;
  {
    LawAccum nc(rep, suite, "nbhd-conv-identity");
    LawAccum cn(rep, suite, "conv-nbhd-identity");
    LawAccum nm(rep, suite, "nbhd-monotone");
    LawAccum cm(rep, suite, "conv-monotone");
    LawAccum fu(rep, suite, "nbhd-functorial");
    LawAccum nu(rep, suite, "nbhd-unit");
    LawAccum cu(rep, suite, "conv-unit");
    for (int nx : sizes) {
      FinSet X = uset(0, nx);
      try {
        if (!same_map(nbhd(unit_sharp(ctx, X)), ctx->T->unit(X)))
          nu.fail("X=" + sname(X));
        nu.note_ran();
        if (!tv_eq(conv(ctx, X, ctx->T->unit(X)), unit_sharp(ctx, X)))
          cu.fail("X=" + sname(X));
        cu.note_ran();
      } catch (const CapExceeded& e) {
        rep.skip(suite, "units at X=" + sname(X), e.what());
      }
      for (int ny : sizes) {
        FinSet Y = uset(1, ny);
        try {
          FinSet TX = ctx->T->obj(X);
          const int n = TX->size();
          std::vector<char> ord = induced_order_TX(em, X, opts);
          std::vector<FinMap> fs = map_fam(Y, TX, opts, law_salt(20, nx, ny));
          for (const FinMap& f : fs) {
            if (!same_map(nbhd(conv(ctx, X, f)), f)) nc.fail("f at " + loc2(X, Y));
            nc.note_ran();
          }
          for (const FinMap& f : fs)
            for (const FinMap& g : fs) {
              bool le = true;
              for (int y = 0; y < Y->size() && le; ++y)
                le = ord[static_cast<std::size_t>(f.img[y]) * n + g.img[y]];
              if (!le) continue;
              if (!tv_le(conv(ctx, X, f), conv(ctx, X, g)))
                cm.fail("f<=g at " + loc2(X, Y));
              cm.note_ran();
            }
          TVFam U = unitary_fam(ctx, X, Y, opts, law_salt(21, nx, ny), 16);
          for (const TVRel& u : U.rels) {
            if (!tv_eq(conv(ctx, X, nbhd(u)), u)) cn.fail(twit(u) + " at " + loc2(X, Y));
            cn.note_ran();
          }
          for (const TVRel& u : U.rels)
            for (const TVRel& v : U.rels) {
              if (!tv_le(u, v)) continue;
              FinMap fu_ = nbhd(u), fv = nbhd(v);
              for (int y = 0; y < Y->size(); ++y)
                if (!ord[static_cast<std::size_t>(fu_.img[y]) * n + fv.img[y]]) {
                  nm.fail(twit(u) + "<=" + twit(v) + " at " + loc2(X, Y));
                  break;
                }
              nm.note_ran();
            }
        } catch (const CapExceeded& e) {
          rep.skip(suite, "laws at " + loc2(X, Y), e.what());
        }
        for (int nz : sizes) {
          FinSet Z = uset(2, nz);
          try {
            TVFam R = unitary_fam(ctx, X, Y, opts, law_salt(22, nx, ny), 6);
            TVFam S = unitary_fam(ctx, Y, Z, opts, law_salt(23, ny, nz), 6);
            for (const TVRel& r : R.rels)
              for (const TVRel& s : S.rels) {
                FinMap lhs = nbhd(kleisli_convolution(s, r));
                FinMap rhs = compose(
                    ctx->T->mult(X),
                    compose(ctx->T->map(nbhd(r)), nbhd(s)));  // Z -> TX
                if (!same_map(lhs, rhs))
                  fu.fail(twit(s) + "," + twit(r) + " at " + loc2(X, Y) +
                          ",Z=" + sname(Z));
                fu.note_ran();
              }
          } catch (const CapExceeded& e) {
            rep.skip(suite, "functorial at " + loc2(X, Y) + ",Z=" + sname(Z),
                     e.what());
          }
        }
      }
    }
  }
  return rep;
}

LawReport check_laxext_morphism(const MonadMorphism& alpha,
                                const LaxExtension& SE, const LaxExtension& TE,
                                const std::vector<int>& sizes,
                                const CheckOptions& opts) {
  need_ctx(SE, "check_laxext_morphism");
  need_ctx(TE, "check_laxext_morphism");
  validate_sizes("check_laxext_morphism", sizes);
  if (SE->V->name != TE->V->name)
    throw MismatchError("check_laxext_morphism: contexts are enriched in " +
                        SE->V->name + " and " + TE->V->name);
  if (!alpha.S || !alpha.T || alpha.S->name != SE->T->name ||
      alpha.T->name != TE->T->name)
    throw UsageError("check_laxext_morphism(" + alpha.name +
                     "): morphism does not run between the context monads");
  if (!SE->associative || !TE->associative)
    throw UsageError("check_laxext_morphism(" + alpha.name +
                     "): both contexts must be associative");
  LawReport rep;
  const std::string suite = "laxext-morphism(" + alpha.name + ")";
  const QPtr& V = TE->V;
  const bool both_kleisli = SE->kleisli && TE->kleisli;
  {
    LawAccum nat(rep, suite, "natural");
    LawAccum mono(rep, suite, "kleisli-monotone");
    if (!both_kleisli) mono.note_ran();  // recorded as a skip below instead
    for (int nx : sizes) {
      for (int ny : sizes) {
        FinSet X = uset(0, nx), Y = uset(1, ny);
        try {
          FinMap aX = alpha.at(X), aY = alpha.at(Y);
          VRel thX = compose(
              cograph(V, compose(TE->T->mult(X), TE->T->map(aX))),
              TE->ext(identity_rel(V, X)));  // TX -*-> T(SX)
          VRel thY = compose(
              cograph(V, compose(TE->T->mult(Y), TE->T->map(aY))),
              TE->ext(identity_rel(V, Y)));  // TY -*-> T(SY)
          std::vector<VRel> fam;
          if (count_vrels(V, X, Y) <= kExhaustRels) {
            fam = all_vrels(V, X, Y);
          } else {
            Rng rng(opts.seed ^ law_salt(30, nx, ny));
            for (int i = 0; i < 24; ++i) fam.push_back(random_vrel(V, X, Y, rng));
          }
          for (const VRel& r : fam) {
            VRel sr = SE->ext(r);  // SX -*-> SY
            VRel tr = TE->ext(r);  // TX -*-> TY
            VRel lhs = compose(TE->ext(sr), thX);
            VRel rhs = compose(thY, tr);
            if (!rel_eq(lhs, rhs))
              nat.fail("r#" + std::to_string(index_of_vrel(r)) + " at " +
                       loc2(X, Y));
            nat.note_ran();
            if (both_kleisli) {
              bool ok = true;
              for (int x = 0; x < sr.src->size() && ok; ++x)
                for (int y = 0; y < sr.tgt->size() && ok; ++y)
                  ok = V->leq(sr.at(x, y), tr.at(aX.img[x], aY.img[y]));
              if (!ok)
                mono.fail("r#" + std::to_string(index_of_vrel(r)) + " at " +
                          loc2(X, Y));
              mono.note_ran();
            }
          }
        } catch (const CapExceeded& e) {
          rep.skip(suite, "natural at " + loc2(X, Y), e.what());
        }
      }
    }
  }
  if (!both_kleisli) {
    // Drop the placeholder pass and record the reason.
    for (auto& row : rep.results)
      if (row.law == "kleisli-monotone") {
        row.status = "skip";
        row.witness = "needs Kleisli extensions on both sides";
      }
  }
  return rep;
}

MonadMorphism functor_F_on_morphism(const MonadMorphism& alpha,
                                    const LaxExtension& SE,
                                    const LaxExtension& TE,
                                    const CheckOptions& opts) {
  LawReport gate = check_laxext_morphism(alpha, SE, TE, {1}, opts);
  if (!gate.all_pass()) {
    for (const LawResult& row : gate.results)
      if (row.status == "fail")
        throw UsageError("functor_F_on_morphism(" + alpha.name + "): " +
                         row.law + " fails: " + row.witness);
  }
  MonadMorphism m;
  m.name = "F(" + alpha.name + ")";
  m.S = presheaf_monad(SE, opts);
  m.T = presheaf_monad(TE, opts);
  auto sst = pi_state(SE, opts);
  auto tst = pi_state(TE, opts);
  const MonadMorphism a = alpha;
  const LaxExtension te = TE;
  m.at = [sst, tst, a, te](const FinSet& X) {
    const QPtr& V = te->V;
    const PiCarrier& cs = carrier(*sst, X);
    const PiCarrier& ct = carrier(*tst, X);
    FinMap aX = a.at(X);
    FinMap g = compose(te->T->mult(X), te->T->map(aX));   // T(SX) -> TX
    VRel pre = compose(cograph(V, g), one_ext(*tst, X));  // TX -*-> T(SX)
    VRel e10 = cograph(V, te->T->unit(one_set()));        // T1 -*-> 1
    std::vector<int> img(static_cast<std::size_t>(cs.set->size()));
    for (int i = 0; i < cs.set->size(); ++i) {
      VRel psi = tuple_rel(V, cs.TX, cs.codes[static_cast<std::size_t>(i)]);
      VRel tpsi = te->ext(psi);  // T(SX) -*-> T1
      img[static_cast<std::size_t>(i)] = ct.index_of(
          column_code(V, compose(e10, compose(tpsi, pre)), 0), "functor image");
    }
    return make_finmap(cs.set, ct.set, std::move(img));
  };
  return m;
}

LawReport check_functor_F(const MonadMorphism& alpha, const LaxExtension& SE,
                          const LaxExtension& TE, const std::vector<int>& sizes,
                          const CheckOptions& opts) {
  validate_sizes("check_functor_F", sizes);
  MonadMorphism F = functor_F_on_morphism(alpha, SE, TE, opts);
  LawReport rep;
  const std::string suite = "functor-F(" + alpha.name + ")";
  {
    LawAccum ps(rep, suite, "preserves-sharp");
    LawAccum pc(rep, suite, "preserves-convolution");
    for (int nx : sizes) {
      for (int ny : sizes) {
        FinSet X = uset(0, nx), Y = uset(1, ny);
        try {
          for (const FinMap& f : map_fam(X, Y, opts, law_salt(40, nx, ny))) {
            if (!tv_eq(functor_image(alpha, TE, map_sharp(SE, f)),
                       map_sharp(TE, f)))
              ps.fail("f at " + loc2(X, Y));
            ps.note_ran();
          }
        } catch (const CapExceeded& e) {
          rep.skip(suite, "sharp at " + loc2(X, Y), e.what());
        }
        for (int nz : sizes) {
          FinSet Z = uset(2, nz);
          try {
            TVFam R = unitary_fam(SE, X, Y, opts, law_salt(41, nx, ny), 4);
            TVFam S = unitary_fam(SE, Y, Z, opts, law_salt(42, ny, nz), 4);
            for (const TVRel& r : R.rels)
              for (const TVRel& s : S.rels) {
                TVRel lhs = functor_image(alpha, TE, kleisli_convolution(s, r));
                TVRel rhs = kleisli_convolution(functor_image(alpha, TE, s),
                                                functor_image(alpha, TE, r));
                if (!tv_eq(lhs, rhs))
                  pc.fail(twit(s) + "," + twit(r) + " at " + loc2(X, Y) +
                          ",Z=" + sname(Z));
                pc.note_ran();
              }
          } catch (const CapExceeded& e) {
            rep.skip(suite, "convolution at " + loc2(X, Y) + ",Z=" + sname(Z),
                     e.what());
          }
        }
      }
    }
  }
  std::vector<FinSet> msets;
  for (int n : sizes) msets.push_back(standard_set(n));
  absorb(rep, suite, "monad-morphism", check_monad_morphism(F, msets, opts));
  return rep;
}

LawReport check_yoneda(const LaxExtension& E, const std::vector<int>& sizes,
                       const CheckOptions& opts) {
  need_ctx(E, "check_yoneda");
  validate_sizes("check_yoneda", sizes);
  MonadMorphism yo = yoneda_embedding(E, opts);
  LaxExtension PE = pi_extension(E, opts);
  auto st = pi_state(E, opts);
  LawReport rep;
  const std::string suite = "yoneda(" + E->name + ")";
  const QPtr& V = E->V;
  {
    LawAccum lem(rep, suite, "lemma");
    LawAccum agree(rep, suite, "extension-agree");
    LawAccum ord(rep, suite, "pi-pointwise-order");
    for (int nx : sizes) {
      FinSet X = uset(0, nx);
      try {
        const PiCarrier& c = carrier(*st, X);
        FinMap yoX = yo.at(X);
        for (int j = 0; j < c.set->size(); ++j) {
          std::vector<Elem> tj = c.tuple(V, j);
          for (int x = 0; x < c.TX->size(); ++x) {
            Elem h = PE->em.hom_at(X, static_cast<std::uint64_t>(yoX.img[x]),
                                   static_cast<std::uint64_t>(j));
            if (h != tj[static_cast<std::size_t>(x)]) {
              lem.fail("psi=" + c.set->labels[static_cast<std::size_t>(j)] +
                       ",x=" + c.TX->labels[static_cast<std::size_t>(x)]);
              break;
            }
          }
          lem.note_ran();
        }
        const int n = c.set->size();
        std::vector<char> o = induced_order_TX(PE->em, X, opts);
        for (int i = 0; i < n; ++i) {
          std::vector<Elem> ti = c.tuple(V, i);
          for (int j = 0; j < n; ++j) {
            std::vector<Elem> tj = c.tuple(V, j);
            bool le = true;
            for (int t = 0; t < c.TX->size() && le; ++t)
              le = V->leq(ti[static_cast<std::size_t>(t)],
                          tj[static_cast<std::size_t>(t)]);
            if (static_cast<bool>(o[static_cast<std::size_t>(i) * n + j]) != le)
              ord.fail(c.set->labels[static_cast<std::size_t>(i)] + " vs " +
                       c.set->labels[static_cast<std::size_t>(j)]);
            ord.note_ran();
          }
        }
      } catch (const CapExceeded& e) {
        rep.skip(suite, "laws at X=" + sname(X), e.what());
      }
      for (int ny : sizes) {
        FinSet Y = uset(1, ny);
        try {
          FinMap yoX = yo.at(uset(0, nx)), yoY = yo.at(Y);
          FinSet X2 = uset(0, nx);
          std::vector<VRel> fam;
          if (count_vrels(V, X2, Y) <= kExhaustRels) {
            fam = all_vrels(V, X2, Y);
          } else {
            Rng rng(opts.seed ^ law_salt(50, nx, ny));
            for (int i = 0; i < 24; ++i) fam.push_back(random_vrel(V, X2, Y, rng));
          }
          for (const VRel& r : fam) {
            VRel er = E->ext(r);
            VRel pr = PE->ext(r);
            bool ok = true;
            for (int x = 0; x < er.src->size() && ok; ++x)
              for (int y = 0; y < er.tgt->size() && ok; ++y)
                ok = er.at(x, y) == pr.at(yoX.img[x], yoY.img[y]);
            if (!ok)
              agree.fail("r#" + std::to_string(index_of_vrel(r)) + " at " +
                         loc2(X2, Y));
            agree.note_ran();
          }
        } catch (const CapExceeded& e) {
          rep.skip(suite, "extension-agree at |X|=" + std::to_string(nx) +
                              ",|Y|=" + std::to_string(ny),
                   e.what());
        }
      }
    }
  }
  std::vector<FinSet> msets;
  for (int n : sizes) msets.push_back(standard_set(n));
  absorb(rep, suite, "monad-morphism", check_monad_morphism(yo, msets, opts));
  absorb(rep, suite, "laxext-morphism",
         check_laxext_morphism(yo, E, PE, sizes, opts));
  std::vector<FinSet> feasible;
  std::string shelved;
  for (int n : sizes) {
    FinSet X = standard_set(n);
    bool ok = false;
    try {
      FinSet PX = presheaf_monad(E, opts)->obj(X);
      std::uint64_t w = checked_pow(static_cast<std::uint64_t>(V->n),
                                    static_cast<std::uint64_t>(PX->size()));
      if (w <= opts.cap) {
        w *= static_cast<std::uint64_t>(E->T->obj(PX)->size());
        ok = w <= kBruteWork;
      }
    } catch (const CapExceeded&) {
    }
    if (ok) {
      feasible.push_back(X);
    } else {
      if (!shelved.empty()) shelved += ",";
      shelved += std::to_string(n);
    }
  }
  if (!feasible.empty())
    absorb(rep, suite, "pi-enriched", check_enrichment(PE->em, feasible, opts));
  if (!shelved.empty())
    rep.skip(suite, "pi-enriched at sizes " + shelved,
             "second-level components out of reach");
  return rep;
}

LawReport check_adjunction(const EnrichedMonad& em,
                           const std::vector<int>& sizes,
                           const CheckOptions& opts) {
  if (!em.T || !em.V) throw UsageError("check_adjunction: empty context");
  validate_sizes("check_adjunction", sizes);
  LaxExtension E = kleisli_extension(em, opts);
  auto st = pi_state(E, opts);
  FinMonad Pi = presheaf_monad(E, opts);
  MonadMorphism pi = pi_morphism(E, opts);
  MonadMorphism yo = yoneda_embedding(E, opts);
  LaxExtension PE = pi_extension(E, opts);
  MonadMorphism F = functor_F_on_morphism(yo, E, PE, opts);
  auto pst = pi_state(PE, opts);
  LawReport rep;
  const std::string suite = "adjunction(" + em.name + ")";
  {
    LawAccum size(rep, suite, "pi-carrier-size");
    LawAccum bij(rep, suite, "kappa-bijective");
    LawAccum pitau(rep, suite, "kappa-pi-tau");
    LawAccum tri1(rep, suite, "triangle-unit");
    LawAccum tri2(rep, suite, "triangle-counit");
    for (int nx : sizes) {
      FinSet X = standard_set(nx);
      try {
        const PiCarrier& c = carrier(*st, X);
        if (c.set->size() != c.TX->size())
          size.fail("X=" + sname(X) + ": |PiX|=" +
                    std::to_string(c.set->size()) + ", |TX|=" +
                    std::to_string(c.TX->size()));
        size.note_ran();
        FinMap aX = algebra_map(em, X);  // P_V(TX) -> TX
        std::vector<int> kimg(static_cast<std::size_t>(c.set->size()));
        for (int i = 0; i < c.set->size(); ++i)
          kimg[static_cast<std::size_t>(i)] =
              aX.img[static_cast<std::size_t>(c.codes[static_cast<std::size_t>(i)])];
        FinMap kappa = make_finmap(c.set, c.TX, kimg);
        std::vector<char> hit(static_cast<std::size_t>(c.TX->size()), 0);
        bool perm = c.set->size() == c.TX->size();
        for (int i = 0; i < c.set->size() && perm; ++i) {
          char& h = hit[static_cast<std::size_t>(kimg[static_cast<std::size_t>(i)])];
          if (h) perm = false;
          h = 1;
        }
        if (!perm) bij.fail("X=" + sname(X));
        bij.note_ran();
        if (!same_map(compose(kappa, pi.at(X)), em.tau.at(X)))
          pitau.fail("X=" + sname(X));
        pitau.note_ran();
        if (!same_map(compose(kappa, yo.at(X)), identity_map(c.TX)))
          tri1.fail("X=" + sname(X));
        tri1.note_ran();
        const PiCarrier& cp = carrier(*pst, X);
        FinMap aPi = algebra_map(PE->em, X);  // P_V(PiX) -> PiX
        FinMap FX = F.at(X);                  // PiX -> Pi^Pi X
        bool tri = true;
        for (int i = 0; i < c.set->size() && tri; ++i)
          tri = aPi.img[static_cast<std::size_t>(
                    cp.codes[static_cast<std::size_t>(FX.img[i])])] == i;
        if (!tri) tri2.fail("X=" + sname(X));
        tri2.note_ran();
      } catch (const CapExceeded& e) {
        rep.skip(suite, "laws at X=" + sname(X), e.what());
      }
    }
  }
  MonadMorphism kap;
  kap.name = "kappa";
  kap.S = Pi;
  kap.T = em.T;
  const EnrichedMonad cem = em;
  auto kst = st;
  kap.at = [kst, cem](const FinSet& X) {
    const PiCarrier& c = carrier(*kst, X);
    FinMap aX = algebra_map(cem, X);
    std::vector<int> img(static_cast<std::size_t>(c.set->size()));
    for (int i = 0; i < c.set->size(); ++i)
      img[static_cast<std::size_t>(i)] =
          aX.img[static_cast<std::size_t>(c.codes[static_cast<std::size_t>(i)])];
    return make_finmap(c.set, c.TX, std::move(img));
  };
  std::vector<FinSet> msets;
  for (int n : sizes) msets.push_back(standard_set(n));
  absorb(rep, suite, "kappa-monad-morphism",
         check_monad_morphism(kap, msets, opts));
  return rep;
}

}  // namespace relq
