#include "relq/laxalg.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "relq/vcat.hpp"

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

std::string twit(const TVRel& r) {
  return "r#" + std::to_string(index_of_vrel(r.r));
}

std::string mwit(const FinMap& f) {
  std::string s = "[";
  for (size_t i = 0; i < f.img.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.img[i]);
  }
  return s + "]";
}

void need_ctx(const LaxExtension& ctx, const char* who) {
  if (!ctx || !ctx->ext || !ctx->T || !ctx->V)
    throw UsageError(std::string(who) + ": empty context");
}

void need_associative(const LaxExtension& ctx, const char* who) {
  if (!ctx->associative)
    throw UsageError(std::string(who) + "(" + ctx->name +
                     "): the construction-time associativity check failed");
}

void validate_sizes(const char* who, const std::vector<int>& sizes) {
  if (sizes.empty()) throw UsageError(std::string(who) + ": no sizes given");
  for (int n : sizes)
    if (n < 0 || n > 12)
      throw UsageError(std::string(who) + ": size " + std::to_string(n) +
                       " out of range");
}

const LawResult* first_fail(const LawReport& rep) {
  for (const LawResult& r : rep.results)
    if (r.status == "fail") return &r;
  return nullptr;
}

// Pointwise-order context shared by the monoid predicate and the
// enumerator, so that both read the same unit, multiplication and
// order tables.
struct MonCtx {
  FinSet X, TX;
  FinMap e, m;
  std::vector<char> ord;
};

MonCtx mon_ctx(const EnrichedMonad& em, const FinSet& X,
               const CheckOptions& opts) {
  MonCtx c;
  c.X = X;
  c.TX = em.T->obj(X);
  c.e = em.T->unit(X);
  c.m = em.T->mult(X);
  c.ord = induced_order_TX(em, X, opts);
  return c;
}

bool map_leq(const MonCtx& c, const FinMap& f, const FinMap& g) {
  const int n = c.TX->size();
  for (int x = 0; x < c.X->size(); ++x)
    if (!c.ord[f.img[x] * n + g.img[x]]) return false;
  return true;
}

bool monoid_ok(const EnrichedMonad& em, const MonCtx& c, const FinMap& nu) {
  if (!map_leq(c, c.e, nu)) return false;
  FinMap nunu = compose(c.m, compose(em.T->map(nu), nu));
  return map_leq(c, nunu, nu);
}

// Column x of a structure relation T(X) -*-> X as a presheaf code.
std::uint64_t column_code(const QPtr& V, const VRel& r, int x) {
  std::vector<Elem> t(r.src->size());
  for (int i = 0; i < r.src->size(); ++i) t[i] = r.at(i, x);
  return encode_tuple(V, t);
}

VRel rel_of_columns(const QPtr& V, const FinSet& TX, const FinSet& X,
                    const std::vector<std::uint64_t>& codes,
                    const FinMap& nu) {
  VRel r = make_vrel(V, TX, X);
  for (int x = 0; x < X->size(); ++x) {
    std::vector<Elem> t = decode_tuple(V, codes[nu.img[x]], TX->size());
    for (int i = 0; i < TX->size(); ++i) r.at(i, x) = t[i];
  }
  return r;
}

}  // namespace

bool is_lax_algebra(const TVRel& a) {
  need_ctx(a.ctx, "is_lax_algebra");
  need_associative(a.ctx, "is_lax_algebra");
  if (!same_set(a.src, a.tgt))
    throw MismatchError("is_lax_algebra: relation between " + sname(a.src) +
                        " and " + sname(a.tgt) + " is not an endo-relation");
  if (!tv_le(unit_sharp(a.ctx, a.src), a)) return false;
  TVRel aa = kleisli_convolution(a, a);
  if (!tv_le(aa, a)) return false;
  if (!tv_eq(aa, a) || !is_unitary(a))
    throw Error("is_lax_algebra: accepted structure " + twit(a) + " on " +
                sname(a.src) + " in " + a.ctx->name +
                " is not idempotent unitary");
  return true;
}

bool is_tv_functor(const FinMap& f, const TVRel& a, const TVRel& b) {
  if (a.ctx.get() != b.ctx.get())
    throw MismatchError("is_tv_functor: structures live in contexts " +
                        a.ctx->name + " and " + b.ctx->name);
  if (!same_set(a.src, a.tgt) || !same_set(b.src, b.tgt))
    throw MismatchError("is_tv_functor: structures must be endo-relations");
  if (!same_set(f.src, a.src) || !same_set(f.tgt, b.src))
    throw MismatchError("is_tv_functor: map " + sname(f.src) + "->" +
                        sname(f.tgt) + " does not connect the carriers");
  const QPtr& V = a.ctx->V;
  FinMap Tf = a.ctx->T->map(f);
  VRel rhs = compose(cograph(V, f), compose(b.r, graph(V, Tf)));
  return rel_le(a.r, rhs);
}

bool is_kleisli_monoid(const EnrichedMonad& em, const FinMap& nu,
                       const CheckOptions& opts) {
  if (!same_set(nu.tgt, em.T->obj(nu.src)))
    throw MismatchError("is_kleisli_monoid: map into " + sname(nu.tgt) +
                        " does not land in T" + sname(nu.src));
  MonCtx c = mon_ctx(em, nu.src, opts);
  return monoid_ok(em, c, nu);
}

bool is_monoid_hom(const EnrichedMonad& em, const FinMap& f,
                   const FinMap& nu, const FinMap& xi,
                   const CheckOptions& opts) {
  if (!same_set(f.src, nu.src) || !same_set(f.tgt, xi.src))
    throw MismatchError(
        "is_monoid_hom: map does not connect the monoid carriers");
  if (!same_set(nu.tgt, em.T->obj(nu.src)) ||
      !same_set(xi.tgt, em.T->obj(xi.src)))
    throw MismatchError("is_monoid_hom: structures do not land in their "
                        "free carriers");
  std::vector<char> ord = induced_order_TX(em, xi.src, opts);
  FinMap lhs = compose(em.T->map(f), nu);
  FinMap rhs = compose(xi, f);
  const int n = xi.tgt->size();
  for (int x = 0; x < f.src->size(); ++x)
    if (!ord[lhs.img[x] * n + rhs.img[x]]) return false;
  return true;
}

std::vector<LaxAlgebra> enumerate_lax_algebras(const LaxExtension& E,
                                               const FinSet& X,
                                               const CheckOptions& opts) {
  need_ctx(E, "enumerate_lax_algebras");
  need_associative(E, "enumerate_lax_algebras");
  FinSet TX = E->T->obj(X);
  const std::uint64_t total = count_vrels(E->V, TX, X);
  if (total > opts.cap)
    throw CapExceeded("lax algebra enumeration on X=" + sname(X) + " in " +
                          E->name + " needs " + std::to_string(total) +
                          " candidates",
                      total);
  std::vector<LaxAlgebra> out;
  for (std::uint64_t i = 0; i < total; ++i) {
    TVRel a = make_tvrel(E, X, X, vrel_from_index(E->V, TX, X, i));
    if (is_lax_algebra(a)) out.push_back(LaxAlgebra{X, std::move(a)});
  }
  return out;
}

std::vector<KleisliMonoid> enumerate_kleisli_monoids(
    const EnrichedMonad& em, const FinSet& X, const CheckOptions& opts) {
  MonCtx c = mon_ctx(em, X, opts);
  const std::uint64_t total =
      checked_pow(static_cast<std::uint64_t>(c.TX->size()),
                  static_cast<std::uint64_t>(X->size()));
  if (total > opts.cap)
    throw CapExceeded("kleisli monoid enumeration on X=" + sname(X) +
                          " over " + em.name + " needs " +
                          std::to_string(total) + " candidates",
                      total);
  std::vector<KleisliMonoid> out;
  for (const FinMap& nu : all_finmaps(X, c.TX, opts.cap))
    if (monoid_ok(em, c, nu)) out.push_back(KleisliMonoid{X, nu});
  return out;
}

std::string context_fingerprint(const LaxExtension& E) {
  need_ctx(E, "context_fingerprint");
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (int n = 2; n >= 0; --n) {
    try {
      FinSet X = standard_set(n);
      VRel e = E->ext(identity_rel(E->V, X));
      mix(static_cast<std::uint64_t>(n));
      mix(static_cast<std::uint64_t>(e.src->size()));
      for (Elem v : e.m) mix(static_cast<std::uint64_t>(v));
      break;
    } catch (const CapExceeded&) {
    }
  }
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[i] = digits[h & 15];
    h >>= 4;
  }
  return E->T->name + "," + E->V->name + "," + hex;
}

LawReport check_cats_mons_iso(const LaxExtension& E,
                              const std::vector<int>& sizes,
                              const CheckOptions& opts) {
  need_ctx(E, "check_cats_mons_iso");
  need_associative(E, "check_cats_mons_iso");
  validate_sizes("check_cats_mons_iso", sizes);
  LawReport rep;
  const std::string suite = "cats-mons(" + E->name + ")";
  LaxExtension PE = pi_extension(E, opts);
  const EnrichedMonad& pem = PE->em;
  const FinMonad& Pi = pem.T;
  const QPtr& V = E->V;

  std::map<int, FinSet> sets;
  std::map<int, std::vector<LaxAlgebra>> algs;
  std::map<int, std::vector<FinMap>> nus_by;
  {
    LawAccum cnt(rep, suite, "counts-equal");
    LawAccum tom(rep, suite, "to-monoid");
    LawAccum fro(rep, suite, "from-monoid");
    LawAccum rtr(rep, suite, "round-trip");
    LawAccum imp(rep, suite, "implied-idempotent-unitary");
    LawAccum mor(rep, suite, "morphism-correspondence");

    for (int n : sizes) {
      FinSet X = standard_set(n);
      try {
        std::vector<std::uint64_t> codes = presheaf_codes(E, X, opts);
        FinSet PiX = Pi->obj(X);
        FinSet TX = E->T->obj(X);
        std::vector<LaxAlgebra> as = enumerate_lax_algebras(E, X, opts);
        std::vector<KleisliMonoid> ms =
            enumerate_kleisli_monoids(pem, X, opts);
        if (as.size() != ms.size())
          cnt.fail("X=" + sname(X) + ": cats=" + std::to_string(as.size()) +
                   ", mons=" + std::to_string(ms.size()));
        cnt.note_ran();

        std::vector<FinMap> nus;
        std::vector<char> built;
        for (const LaxAlgebra& alg : as) {
          std::vector<int> img(n);
          bool ok = true;
          std::string why;
          for (int x = 0; x < n && ok; ++x) {
            std::uint64_t code = column_code(V, alg.a.r, x);
            auto it = std::lower_bound(codes.begin(), codes.end(), code);
            if (it == codes.end() || *it != code) {
              ok = false;
              why = "column " + std::to_string(x) + " of " + twit(alg.a) +
                    " is not a presheaf";
            } else {
              img[x] = static_cast<int>(it - codes.begin());
            }
          }
          FinMap nu;
          if (ok) {
            nu = make_finmap(X, PiX, img);
            bool found = false;
            for (const KleisliMonoid& m : ms)
              if (m.nu.img == nu.img) {
                found = true;
                break;
              }
            if (!found) {
              ok = false;
              why = twit(alg.a) + " lands outside the monoid enumeration";
            }
          }
          if (!ok) tom.fail("X=" + sname(X) + ": " + why);
          tom.note_ran();
          nus.push_back(nu);
          built.push_back(ok ? 1 : 0);
          if (!tv_eq(kleisli_convolution(alg.a, alg.a), alg.a) ||
              !is_unitary(alg.a))
            imp.fail("X=" + sname(X) + ": " + twit(alg.a));
          imp.note_ran();
        }
        for (const KleisliMonoid& m : ms) {
          TVRel a = make_tvrel(E, X, X, rel_of_columns(V, TX, X, codes, m.nu));
          if (!is_lax_algebra(a))
            fro.fail("X=" + sname(X) + ": nu=" + mwit(m.nu));
          fro.note_ran();
        }
        for (size_t k = 0; k < as.size(); ++k) {
          if (!built[k]) continue;
          VRel back = rel_of_columns(V, TX, X, codes, nus[k]);
          if (!rel_eq(back, as[k].a.r))
            rtr.fail("X=" + sname(X) + ": " + twit(as[k].a));
          rtr.note_ran();
        }
        sets[n] = X;
        algs[n] = std::move(as);
        nus_by[n] = std::move(nus);
      } catch (const CapExceeded& e) {
        rep.skip(suite, "laws at X=" + sname(X), e.what());
      }
    }

    for (const auto& sx : sets) {
      for (const auto& sy : sets) {
        const int nx = sx.first, ny = sy.first;
        try {
          const std::vector<LaxAlgebra>& ax = algs[nx];
          const std::vector<LaxAlgebra>& ay = algs[ny];
          for (const FinMap& f : all_finmaps(sx.second, sy.second)) {
            for (size_t i = 0; i < ax.size(); ++i)
              for (size_t j = 0; j < ay.size(); ++j) {
                bool tv = is_tv_functor(f, ax[i].a, ay[j].a);
                bool mh = is_monoid_hom(pem, f, nus_by[nx][i],
                                        nus_by[ny][j], opts);
                if (tv != mh)
                  mor.fail("f=" + mwit(f) + ", a=" + twit(ax[i].a) +
                           ", b=" + twit(ay[j].a));
              }
            mor.note_ran();
          }
        } catch (const CapExceeded& e) {
          rep.skip(suite,
                   "morphisms at X=" + sname(sx.second) +
                       ",Y=" + sname(sy.second),
                   e.what());
        }
      }
    }
  }
  return rep;
}

MonadMorphism pv_hom_morphism(const LaxHom& h) {
  LawReport gate = check_lax_hom(h);
  if (const LawResult* bad = first_fail(gate))
    throw UsageError("pv_hom_morphism(" + h.src->name + "->" + h.dst->name +
                     "): " + bad->law + " fails at " + bad->witness);
  const QPtr src = h.src, dst = h.dst;
  const std::vector<Elem> map = h.map;
  MonadMorphism k;
  k.name = "pvhom(" + src->name + "->" + dst->name + ")";
  k.S = pv_monad(src);
  k.T = pv_monad(dst);
  FinMonad S = k.S, T = k.T;
  k.at = [S, T, src, dst, map](const FinSet& X) {
    FinSet SX = S->obj(X), TX = T->obj(X);
    std::vector<int> img(SX->size());
    for (int i = 0; i < SX->size(); ++i) {
      std::vector<Elem> t =
          decode_tuple(src, static_cast<std::uint64_t>(i), X->size());
      for (Elem& v : t) v = map[v];
      img[i] = static_cast<int>(encode_tuple(dst, t));
    }
    return make_finmap(SX, TX, std::move(img));
  };
  return k;
}

LawReport check_change_of_enrichment(const EnrichedMonad& em, const QPtr& W,
                                     const MonadMorphism& kappa,
                                     const std::vector<int>& sizes,
                                     const CheckOptions& opts) {
  validate_sizes("check_change_of_enrichment", sizes);
  if (!kappa.S || !kappa.T || !kappa.at)
    throw UsageError("check_change_of_enrichment: empty morphism");
  if (kappa.T->name != em.tau.S->name)
    throw MismatchError("check_change_of_enrichment: kappa lands in " +
                        kappa.T->name + " but the enrichment draws from " +
                        em.tau.S->name);
  if (kappa.S->name != pv_monad(W)->name)
    throw MismatchError("check_change_of_enrichment: kappa starts at " +
                        kappa.S->name + ", not the W-powerset monad of " +
                        W->name);
  {
    LawReport gate = check_monad_morphism(kappa, default_test_sets(2), opts);
    if (const LawResult* bad = first_fail(gate))
      throw UsageError("check_change_of_enrichment: kappa " + kappa.name +
                       " refused: " + bad->law + " fails at " + bad->witness);
  }
  // The element map W -> V is kappa's component at a point; a powerset
  // morphism acts elementwise, which is re-verified on small carriers
  // before the derived closed forms below are trusted.
  const QPtr V = em.V;
  const std::vector<int> hima = kappa.at(one_set()).img;
  std::vector<Elem> h(hima.begin(), hima.end());
  for (const FinSet& X : default_test_sets(2)) {
    FinMap at = kappa.at(X);
    for (int i = 0; i < at.src->size(); ++i) {
      std::vector<Elem> t =
          decode_tuple(W, static_cast<std::uint64_t>(i), X->size());
      for (Elem& v : t) v = h[v];
      if (at.img[i] != static_cast<int>(encode_tuple(V, t)))
        throw UsageError("check_change_of_enrichment: kappa " + kappa.name +
                         " is not induced elementwise by a quantale map");
    }
  }

  EnrichedMonad emW =
      make_enriched(em.T, compose_morphisms(em.tau, kappa), W, opts);
  if (em.hom_at && em.rtau_at) {
    // Closed forms transported along h: the action of w through
    // tau.kappa is the action of h(w) through tau, so the W-hom is the
    // largest w carried under the V-hom, and the transport of a
    // W-relation is the transport of its entrywise image.
    auto homV = em.hom_at;
    auto rtV = em.rtau_at;
    emW.hom_at = [homV, h, W, V](const FinSet& Z, std::uint64_t i,
                                 std::uint64_t j) {
      Elem hv = homV(Z, i, j);
      Elem acc = W->bot;
      for (Elem w = 0; w < W->n; ++w)
        if (V->leq(h[w], hv)) acc = W->join2(acc, w);
      return acc;
    };
    emW.rtau_at = [rtV, h, V](const VRel& r, std::uint64_t y) {
      VRel hr = r;
      hr.V = V;
      for (Elem& v : hr.m) v = h[v];
      return rtV(hr, y);
    };
  }

  LawReport rep;
  const std::string suite =
      "change-of-enrichment(" + em.name + "," + W->name + ")";
  {
    LawAccum wen(rep, suite, "w-enriched");
    LawAccum oag(rep, suite, "order-agrees");
    LawAccum cnt(rep, suite, "counts-equal");
    LawAccum fwd(rep, suite, "forward-bijection");
    LawAccum rtr(rep, suite, "round-trip");

    const bool enriched = check_power_enriched(emW, default_test_sets(2), opts);
    if (!enriched) wen.fail("tau.kappa on sets of size <= 2");
    wen.note_ran();

    if (enriched) {
      LaxExtension EV = kleisli_extension(em, opts);
      LaxExtension EW = kleisli_extension(emW, opts);
      for (int n : sizes) {
        FinSet X = standard_set(n);
        try {
          if (induced_order_TX(emW, X, opts) != induced_order_TX(em, X, opts))
            oag.fail("X=" + sname(X));
          oag.note_ran();

          std::vector<LaxAlgebra> av = enumerate_lax_algebras(EV, X, opts);
          std::vector<LaxAlgebra> aw = enumerate_lax_algebras(EW, X, opts);
          if (av.size() != aw.size())
            cnt.fail("X=" + sname(X) + ": over " + V->name + " " +
                     std::to_string(av.size()) + ", over " + W->name + " " +
                     std::to_string(aw.size()));
          cnt.note_ran();

          std::vector<char> hit(aw.size(), 0);
          for (const LaxAlgebra& a : av) {
            FinMap nu = nbhd(a.a);
            TVRel img = conv(EW, X, nu);
            std::size_t j = 0;
            for (; j < aw.size(); ++j)
              if (rel_eq(img.r, aw[j].a.r)) break;
            if (j == aw.size())
              fwd.fail("X=" + sname(X) + ": " + twit(a.a) +
                       " lands outside the W-side enumeration");
            else if (hit[j])
              fwd.fail("X=" + sname(X) + ": " + twit(a.a) +
                       " collides at W-side #" + std::to_string(j));
            else
              hit[j] = 1;
            fwd.note_ran();

            if (j < aw.size()) {
              TVRel back = conv(EV, X, nbhd(aw[j].a));
              if (!rel_eq(back.r, a.a.r))
                rtr.fail("X=" + sname(X) + ": " + twit(a.a));
              rtr.note_ran();
            }
          }
        } catch (const CapExceeded& e) {
          rep.skip(suite, "laws at X=" + sname(X), e.what());
        }
      }
    }
  }
  return rep;
}

std::uint64_t count_topologies(int n) {
  if (n < 0) throw UsageError("count_topologies: negative size");
  if (n > 4)
    throw CapExceeded("topology census on " + std::to_string(n) +
                          " points needs 2^" + std::to_string(1 << n) +
                          " families",
                      checked_pow(2, static_cast<std::uint64_t>(1) << n));
  const int N = 1 << n;
  const std::uint64_t fams = 1ull << N;
  std::uint64_t cnt = 0;
  for (std::uint64_t f = 0; f < fams; ++f) {
    if (!(f & 1) || !((f >> (N - 1)) & 1)) continue;
    bool ok = true;
    for (int s = 0; s < N && ok; ++s) {
      if (!((f >> s) & 1)) continue;
      for (int t = s + 1; t < N && ok; ++t) {
        if (!((f >> t) & 1)) continue;
        if (!((f >> (s | t)) & 1) || !((f >> (s & t)) & 1)) ok = false;
      }
    }
    if (ok) ++cnt;
  }
  return cnt;
}

std::uint64_t count_preorders(int n) {
  if (n < 0) throw UsageError("count_preorders: negative size");
  if (n > 4)
    throw CapExceeded("preorder census on " + std::to_string(n) +
                          " points needs 2^" + std::to_string(n * n) +
                          " relations",
                      checked_pow(2, static_cast<std::uint64_t>(n) * n));
  const std::uint64_t total = 1ull << (n * n);
  std::uint64_t cnt = 0;
  std::vector<char> m(static_cast<size_t>(n) * n);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (int k = 0; k < n * n; ++k) m[k] = (bits >> k) & 1;
    if (is_preorder(m, n)) ++cnt;
  }
  return cnt;
}

LawReport check_top_preorder_crosscheck(int n, const CheckOptions& opts) {
  LawReport rep;
  const std::string suite = "top-preorder(" + std::to_string(n) + ")";
  const QPtr two = builtin_quantale("two");
  const std::uint64_t pre = count_preorders(n);
  const std::uint64_t top = count_topologies(n);
  const FinSet X = standard_set(n);
  {
    LawAccum ora(rep, suite, "oracle-agree");
    LawAccum idc(rep, suite, "identity-context");
    LawAccum bar(rep, suite, "barr-ultrafilter");
    LawAccum pow(rep, suite, "powerset-monoids");
    LawAccum fil(rep, suite, "filter-monoids");

    if (top != pre)
      ora.fail("topologies=" + std::to_string(top) +
               ", preorders=" + std::to_string(pre));
    ora.note_ran();

    try {
      LaxExtension E = identity_extension(two);
      std::uint64_t c = enumerate_lax_algebras(E, X, opts).size();
      if (c != pre)
        idc.fail("got " + std::to_string(c) + ", census " +
                 std::to_string(pre) + " [" + context_fingerprint(E) + "]");
      idc.note_ran();
    } catch (const CapExceeded& e) {
      rep.skip(suite, "identity context at size " + std::to_string(n),
               e.what());
    }
    try {
      LaxExtension E = barr_ultrafilter_extension(two);
      std::uint64_t c = enumerate_lax_algebras(E, X, opts).size();
      if (c != pre)
        bar.fail("got " + std::to_string(c) + ", census " +
                 std::to_string(pre) + " [" + context_fingerprint(E) + "]");
      bar.note_ran();
    } catch (const CapExceeded& e) {
      rep.skip(suite, "ultrafilter context at size " + std::to_string(n),
               e.what());
    }
    try {
      std::uint64_t c =
          enumerate_kleisli_monoids(enriched_powerset(), X, opts).size();
      if (c != pre)
        pow.fail("got " + std::to_string(c) + ", census " +
                 std::to_string(pre));
      pow.note_ran();
    } catch (const CapExceeded& e) {
      rep.skip(suite, "powerset monoids at size " + std::to_string(n),
               e.what());
    }
    try {
      std::uint64_t c =
          enumerate_kleisli_monoids(enriched_filter(), X, opts).size();
      if (c != top)
        fil.fail("got " + std::to_string(c) + ", census " +
                 std::to_string(top));
      fil.note_ran();
    } catch (const CapExceeded& e) {
      rep.skip(suite, "filter monoids at size " + std::to_string(n),
               e.what());
    }
  }
  return rep;
}

}  // namespace relq
