#include "relq/extension.hpp"

#include <algorithm>
#include <array>
#include <map>
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

std::string rwit(const VRel& r) {
  return "r#" + std::to_string(index_of_vrel(r));
}

std::string mwit(const FinMap& f) {
  std::string s = "[";
  for (int i = 0; i < f.src->size(); ++i) {
    if (i) s += ",";
    s += f.src->labels[i] + "->" + f.tgt->labels[f.img[i]];
  }
  return s + "]";
}

// Largest hom-set walked relation by relation; seeded samples beyond.
constexpr std::uint64_t kExhaustRels = 256;
// Largest grid of relation pairs (or map/relation pairs) walked in full.
constexpr std::uint64_t kExhaustPairs = 1ull << 16;
// Largest double-carrier matrix materialized for the mult condition.
constexpr std::uint64_t kFullMatrixCells = 1ull << 14;

struct RelFamily {
  std::vector<VRel> rels;
  bool exhaustive = true;
};

RelFamily make_family(const QPtr& V, const FinSet& X, const FinSet& Y,
                      const CheckOptions& opts, std::uint64_t salt) {
  RelFamily out;
  if (count_vrels(V, X, Y) <= kExhaustRels) {
    out.rels = all_vrels(V, X, Y);
    return out;
  }
  out.exhaustive = false;
  Rng rng(opts.seed ^ salt);
  const int n = std::max(opts.samples, 1);
  out.rels.reserve(n);
  for (int i = 0; i < n; ++i) out.rels.push_back(random_vrel(V, X, Y, rng));
  return out;
}

std::uint64_t law_salt(int tag, int nx, int ny, int nz = 0) {
  return (static_cast<std::uint64_t>(tag) << 48) ^
         (static_cast<std::uint64_t>(nx) << 32) ^
         (static_cast<std::uint64_t>(ny) << 16) ^
         static_cast<std::uint64_t>(nz);
}

// State shared by the conditions of one checking run: test sets by
// flavor (x/y/z prefix) and size, relation families over them, the
// images of those families under the extension, and extensions of
// composites met along the way.
struct ExtCtx {
  const LaxExtensionData& E;
  CheckOptions opts;
  std::map<std::pair<int, int>, FinSet> sets;
  std::map<std::array<int, 4>, RelFamily> fams;
  std::map<std::array<int, 4>, std::vector<VRel>> fexts;
  std::map<std::tuple<int, int, std::uint64_t>, VRel> comp;

  ExtCtx(const LaxExtensionData& e, const CheckOptions& o) : E(e), opts(o) {}

  FinSet set_of(int fl, int n) {
    auto key = std::make_pair(fl, n);
    auto it = sets.find(key);
    if (it == sets.end()) {
      static const char* pref[3] = {"x", "y", "z"};
      it = sets.emplace(key, standard_set(n, pref[fl])).first;
    }
    return it->second;
  }

  const RelFamily& family(int fx, int nx, int fy, int ny) {
    std::array<int, 4> key{fx, nx, fy, ny};
    auto it = fams.find(key);
    if (it == fams.end()) {
      std::uint64_t salt = (0x66616dull << 40) ^ law_salt(fx * 4 + fy, nx, ny);
      it = fams.emplace(key, make_family(E.V, set_of(fx, nx), set_of(fy, ny),
                                         opts, salt))
               .first;
    }
    return it->second;
  }

  // Extension of one relation, with boundary validation.
  VRel apply(const VRel& r) const {
    VRel er = E.ext(r);
    if (er.V != r.V || !same_set(er.src, E.T->obj(r.src)) ||
        !same_set(er.tgt, E.T->obj(r.tgt)))
      throw UsageError("extension of " + shape(r) + " has boundary " +
                       shape(er));
    return er;
  }

  const std::vector<VRel>& exts(int fx, int nx, int fy, int ny) {
    std::array<int, 4> key{fx, nx, fy, ny};
    auto it = fexts.find(key);
    if (it == fexts.end()) {
      const RelFamily& F = family(fx, nx, fy, ny);
      std::vector<VRel> out;
      out.reserve(F.rels.size());
      for (const VRel& r : F.rels) out.push_back(apply(r));
      it = fexts.emplace(key, std::move(out)).first;
    }
    return it->second;
  }

  // Extensions of composite relations on the x/z hom-sets, cached when
  // the hom-set is small enough for the index key to be meaningful.
  VRel ext_composite(int nx, int nz, const VRel& q) {
    if (count_vrels(E.V, q.src, q.tgt) > kExhaustPairs) return apply(q);
    auto key = std::make_tuple(nx, nz, index_of_vrel(q));
    auto it = comp.find(key);
    if (it == comp.end()) it = comp.emplace(key, apply(q)).first;
    return it->second;
  }
};

void run_cond1(LawReport& rep, const std::string& suite, ExtCtx& ctx,
               const std::vector<int>& sizes) {
  LawAccum acc(rep, suite, "cond1-monotone");
  for (int nx : sizes)
    for (int ny : sizes) {
      const RelFamily& F = ctx.family(0, nx, 1, ny);
      const std::vector<VRel>& FE = ctx.exts(0, nx, 1, ny);
      const std::string at = "X=" + sname(ctx.set_of(0, nx)) +
                             ",Y=" + sname(ctx.set_of(1, ny));
      if (F.exhaustive) {
        for (std::size_t i = 0; i < F.rels.size(); ++i)
          for (std::size_t j = 0; j < F.rels.size(); ++j) {
            if (!rel_le(F.rels[i], F.rels[j])) continue;
            acc.note_ran();
            if (!rel_le(FE[i], FE[j])) {
              acc.fail(at + ": " + rwit(F.rels[i]) + " <= " +
                       rwit(F.rels[j]) + " not preserved");
              return;
            }
          }
      } else {
        Rng rng(ctx.opts.seed ^ law_salt(1, nx, ny));
        const auto n = static_cast<std::uint32_t>(F.rels.size());
        for (int k = 0; k < std::max(ctx.opts.samples, 1); ++k) {
          const std::uint32_t a = rng.below(n), b = rng.below(n);
          VRel big = rel_join2(F.rels[a], F.rels[b]);
          VRel ebig = ctx.apply(big);
          acc.note_ran();
          if (!rel_le(FE[a], ebig)) {
            acc.fail(at + ": " + rwit(F.rels[a]) + " <= " + rwit(big) +
                     " not preserved");
            return;
          }
        }
      }
    }
}

void run_cond2(LawReport& rep, const std::string& suite, ExtCtx& ctx,
               const std::vector<int>& sizes) {
  LawAccum acc(rep, suite, "cond2-graph");
  for (int nx : sizes)
    for (int ny : sizes) {
      FinSet X = ctx.set_of(0, nx), Y = ctx.set_of(1, ny);
      const std::string at = "X=" + sname(X) + ",Y=" + sname(Y);
      try {
        for (const FinMap& f : all_finmaps(X, Y)) {
          VRel lhs = cograph(ctx.E.V, ctx.E.T->map(f));
          VRel rhs = ctx.apply(cograph(ctx.E.V, f));
          acc.note_ran();
          if (!rel_le(lhs, rhs)) {
            acc.fail(at + ": f=" + mwit(f));
            return;
          }
        }
      } catch (const CapExceeded& e) {
        rep.skip(suite, "cond2-graph at " + at, e.what());
      }
    }
}

void run_cond3(LawReport& rep, const std::string& suite, ExtCtx& ctx,
               const std::vector<int>& sizes) {
  LawAccum acc(rep, suite, "cond3-cograph-whisker");
  for (int nx : sizes)
    for (int ny : sizes)
      for (int nz : sizes) {
        FinSet X = ctx.set_of(0, nx), Y = ctx.set_of(1, ny),
               Z = ctx.set_of(2, nz);
        const std::string at =
            "X=" + sname(X) + ",Y=" + sname(Y) + ",Z=" + sname(Z);
        try {
          std::vector<FinMap> maps = all_finmaps(Z, Y);
          if (maps.empty()) continue;
          const RelFamily& F = ctx.family(0, nx, 1, ny);
          const std::vector<VRel>& FE = ctx.exts(0, nx, 1, ny);
          if (F.rels.empty()) continue;
          auto check_one = [&](const FinMap& f, const VRel& r,
                               const VRel& er) {
            VRel lhs =
                ctx.ext_composite(nx, nz, compose(cograph(ctx.E.V, f), r));
            VRel rhs = compose(cograph(ctx.E.V, ctx.E.T->map(f)), er);
            acc.note_ran();
            if (!rel_eq(lhs, rhs)) {
              acc.fail(at + ": f=" + mwit(f) + ", " + rwit(r));
              return false;
            }
            return true;
          };
          if (F.exhaustive && maps.size() * F.rels.size() <= kExhaustPairs) {
            for (const FinMap& f : maps)
              for (std::size_t i = 0; i < F.rels.size(); ++i)
                if (!check_one(f, F.rels[i], FE[i])) return;
          } else {
            Rng rng(ctx.opts.seed ^ law_salt(3, nx, ny, nz));
            for (int k = 0; k < std::max(ctx.opts.samples, 1); ++k) {
              const auto fi = rng.below(static_cast<std::uint32_t>(maps.size()));
              const auto ri =
                  rng.below(static_cast<std::uint32_t>(F.rels.size()));
              if (!check_one(maps[fi], F.rels[ri], FE[ri])) return;
            }
          }
        } catch (const CapExceeded& e) {
          rep.skip(suite, "cond3-cograph-whisker at " + at, e.what());
        }
      }
}

void run_cond4(LawReport& rep, const std::string& suite, ExtCtx& ctx,
               const std::vector<int>& sizes, bool equality,
               const std::string& law) {
  LawAccum acc(rep, suite, law);
  for (int nx : sizes)
    for (int ny : sizes)
      for (int nz : sizes) {
        FinSet X = ctx.set_of(0, nx), Y = ctx.set_of(1, ny),
               Z = ctx.set_of(2, nz);
        const std::string at =
            "X=" + sname(X) + ",Y=" + sname(Y) + ",Z=" + sname(Z);
        try {
          const RelFamily& FR = ctx.family(0, nx, 1, ny);
          const std::vector<VRel>& ER = ctx.exts(0, nx, 1, ny);
          const RelFamily& FS = ctx.family(1, ny, 2, nz);
          const std::vector<VRel>& ES = ctx.exts(1, ny, 2, nz);
          if (FR.rels.empty() || FS.rels.empty()) continue;
          auto check_one = [&](const VRel& r, const VRel& er, const VRel& s,
                               const VRel& es) {
            VRel lhs = compose(es, er);
            VRel rhs = ctx.ext_composite(nx, nz, compose(s, r));
            acc.note_ran();
            const bool ok = equality ? rel_eq(lhs, rhs) : rel_le(lhs, rhs);
            if (!ok) {
              acc.fail(at + ": " + rwit(r) + ", s#" +
                       std::to_string(index_of_vrel(s)));
              return false;
            }
            return true;
          };
          if (FR.exhaustive && FS.exhaustive &&
              FR.rels.size() * FS.rels.size() <= kExhaustPairs) {
            for (std::size_t i = 0; i < FR.rels.size(); ++i)
              for (std::size_t j = 0; j < FS.rels.size(); ++j)
                if (!check_one(FR.rels[i], ER[i], FS.rels[j], ES[j])) return;
          } else {
            Rng rng(ctx.opts.seed ^ law_salt(equality ? 44 : 4, nx, ny, nz));
            for (int k = 0; k < std::max(ctx.opts.samples, 1); ++k) {
              const auto i = rng.below(static_cast<std::uint32_t>(FR.rels.size()));
              const auto j = rng.below(static_cast<std::uint32_t>(FS.rels.size()));
              if (!check_one(FR.rels[i], ER[i], FS.rels[j], ES[j])) return;
            }
          }
        } catch (const CapExceeded& e) {
          rep.skip(suite, law + " at " + at, e.what());
        }
      }
}

void run_cond5(LawReport& rep, const std::string& suite, ExtCtx& ctx,
               const std::vector<int>& sizes, bool equality,
               const std::string& law) {
  const QPtr& V = ctx.E.V;
  const FinMonad& T = ctx.E.T;
  LawAccum acc(rep, suite, law);
  for (int nx : sizes)
    for (int ny : sizes) {
      FinSet X = ctx.set_of(0, nx), Y = ctx.set_of(1, ny);
      const std::string at = "X=" + sname(X) + ",Y=" + sname(Y);
      try {
        const RelFamily& F = ctx.family(0, nx, 1, ny);
        const std::vector<VRel>& FE = ctx.exts(0, nx, 1, ny);
        if (F.rels.empty()) continue;
        FinSet TX = T->obj(X), TY = T->obj(Y);
        FinSet TTX = T->obj(TX), TTY = T->obj(TY);
        FinMap mX = T->mult(X), mY = T->mult(Y);
        const std::uint64_t cells =
            static_cast<std::uint64_t>(TTX->size()) * TTY->size();
        if (cells <= kFullMatrixCells) {
          VRel mXco = cograph(V, mX), mYco = cograph(V, mY);
          for (std::size_t i = 0; i < F.rels.size(); ++i) {
            VRel eer = ctx.apply(FE[i]);
            VRel lhs = compose(eer, mXco);
            VRel rhs = compose(mYco, FE[i]);
            acc.note_ran();
            const bool ok = equality ? rel_eq(lhs, rhs) : rel_le(lhs, rhs);
            if (!ok) {
              acc.fail(at + ": " + rwit(F.rels[i]));
              return;
            }
          }
        } else if (ctx.E.ext_at) {
          // Too big for explicit double-carrier matrices: check the
          // pointwise form ext(ext r)(t,u) <= ext(r)(mult t, mult u)
          // on seeded samples, and for the equality also the join
          // over the mult fiber of a point of TX.
          const int per =
              (std::max(ctx.opts.samples, 1) +
               static_cast<int>(F.rels.size()) - 1) /
              static_cast<int>(F.rels.size());
          Rng rng(ctx.opts.seed ^ law_salt(equality ? 55 : 5, nx, ny));
          const bool closed =
              ctx.E.kleisli && ctx.E.em.hom_at && ctx.E.em.rtau_at;
          std::vector<std::vector<int>> fiber;
          if (equality) {
            fiber.assign(TX->size(), {});
            for (int t = 0; t < TTX->size(); ++t)
              fiber[mX.img[t]].push_back(t);
          }
          for (std::size_t i = 0; i < F.rels.size(); ++i) {
            const VRel& er = FE[i];
            for (int k = 0; k < per; ++k) {
              if (!equality) {
                const int a = static_cast<int>(
                    rng.below(static_cast<std::uint32_t>(TTX->size())));
                const int b = static_cast<int>(
                    rng.below(static_cast<std::uint32_t>(TTY->size())));
                const Elem lhs = ctx.E.ext_at(er, a, b);
                const Elem rhs = er.at(mX.img[a], mY.img[b]);
                acc.note_ran();
                if (!V->leq(lhs, rhs)) {
                  acc.fail(at + ": " + rwit(F.rels[i]) + " at (" +
                           TTX->labels[a] + "," + TTY->labels[b] + ")");
                  return;
                }
              } else {
                const int x = static_cast<int>(
                    rng.below(static_cast<std::uint32_t>(TX->size())));
                const int b = static_cast<int>(
                    rng.below(static_cast<std::uint32_t>(TTY->size())));
                const Elem rhs = er.at(x, mY.img[b]);
                Elem lhs = V->bot;
                if (closed) {
                  const std::uint64_t col =
                      ctx.E.em.rtau_at(er, static_cast<std::uint64_t>(b));
                  for (int t : fiber[x])
                    lhs = V->join2(lhs, ctx.E.em.hom_at(
                                            TX, static_cast<std::uint64_t>(t),
                                            col));
                } else {
                  for (int t : fiber[x])
                    lhs = V->join2(lhs, ctx.E.ext_at(er, t, b));
                }
                acc.note_ran();
                if (lhs != rhs) {
                  acc.fail(at + ": " + rwit(F.rels[i]) + " at (" +
                           TX->labels[x] + "," + TTY->labels[b] + ")");
                  return;
                }
              }
            }
          }
        } else {
          rep.skip(suite, law + " at " + at,
                   "double carrier needs " + std::to_string(cells) +
                       " cells and no per-entry evaluator is attached");
        }
      } catch (const CapExceeded& e) {
        rep.skip(suite, law + " at " + at, e.what());
      }
    }
}

void run_cond6(LawReport& rep, const std::string& suite, ExtCtx& ctx,
               const std::vector<int>& sizes) {
  LawAccum acc(rep, suite, "cond6-unit");
  for (int nx : sizes)
    for (int ny : sizes) {
      FinSet X = ctx.set_of(0, nx), Y = ctx.set_of(1, ny);
      const std::string at = "X=" + sname(X) + ",Y=" + sname(Y);
      try {
        const RelFamily& F = ctx.family(0, nx, 1, ny);
        const std::vector<VRel>& FE = ctx.exts(0, nx, 1, ny);
        VRel eXco = cograph(ctx.E.V, ctx.E.T->unit(X));
        VRel eYco = cograph(ctx.E.V, ctx.E.T->unit(Y));
        for (std::size_t i = 0; i < F.rels.size(); ++i) {
          VRel lhs = compose(F.rels[i], eXco);
          VRel rhs = compose(eYco, FE[i]);
          acc.note_ran();
          if (!rel_le(lhs, rhs)) {
            acc.fail(at + ": " + rwit(F.rels[i]));
            return;
          }
        }
      } catch (const CapExceeded& e) {
        rep.skip(suite, "cond6-unit at " + at, e.what());
      }
    }
}

void validate_args(const LaxExtension& E, const std::vector<int>& sizes) {
  if (!E || !E->ext || !E->T || !E->V)
    throw UsageError("lax extension checks need a populated extension");
  if (sizes.empty()) throw UsageError("lax extension checks need sizes");
  for (int n : sizes)
    if (n < 0 || n > 12)
      throw UsageError("test set sizes must lie in 0..12, got " +
                       std::to_string(n));
}

}  // namespace

LawReport check_lax_extension(const LaxExtension& E,
                              const std::vector<int>& sizes,
                              const CheckOptions& opts) {
  validate_args(E, sizes);
  LawReport rep;
  const std::string suite = "extension(" + E->name + ")";
  ExtCtx ctx(*E, opts);
  run_cond1(rep, suite, ctx, sizes);
  run_cond2(rep, suite, ctx, sizes);
  run_cond3(rep, suite, ctx, sizes);
  run_cond4(rep, suite, ctx, sizes, false, "cond4-compose");
  run_cond5(rep, suite, ctx, sizes, false, "cond5-mult");
  run_cond6(rep, suite, ctx, sizes);
  return rep;
}

LawReport check_associative(const LaxExtension& E,
                            const std::vector<int>& sizes,
                            const CheckOptions& opts) {
  validate_args(E, sizes);
  LawReport rep;
  const std::string suite = "extension(" + E->name + ")";
  ExtCtx ctx(*E, opts);
  run_cond4(rep, suite, ctx, sizes, true, "assoc-cond4-eq");
  run_cond5(rep, suite, ctx, sizes, true, "assoc-cond5-eq");
  return rep;
}

namespace {

// Construction-time sanity check at size 1; the full gates are the
// explicit check calls at caller-chosen sizes.
LaxExtension finish(std::shared_ptr<LaxExtensionData> D,
                    const CheckOptions& opts) {
  LaxExtension view = D;
  D->birth_laws = check_lax_extension(view, {1}, opts);
  LawReport assoc = check_associative(view, {1}, opts);
  D->associative = D->birth_laws.all_pass() && assoc.all_pass();
  D->birth_laws.merge(assoc);
  return view;
}

Elem barr_entry(const QPtr& V, const VRel& r, int i, int j) {
  const int nx = r.src->size(), ny = r.tgt->size();
  if (nx + ny > 20)
    throw CapExceeded("ultrafilter extension walks 2^(|X|+|Y|) set pairs",
                      checked_pow(2, static_cast<std::uint64_t>(nx + ny)));
  Elem out = V->top;
  const std::uint32_t ax = 1u << nx, ay = 1u << ny;
  for (std::uint32_t A = 0; A < ax; ++A) {
    if (!((A >> i) & 1u)) continue;
    for (std::uint32_t B = 0; B < ay; ++B) {
      if (!((B >> j) & 1u)) continue;
      Elem inner = V->bot;
      for (int x = 0; x < nx; ++x) {
        if (!((A >> x) & 1u)) continue;
        for (int y = 0; y < ny; ++y)
          if ((B >> y) & 1u) inner = V->join2(inner, r.at(x, y));
      }
      out = V->meet2(out, inner);
    }
  }
  return out;
}

}  // namespace

LaxExtension identity_extension(const QPtr& V) {
  if (!V) throw UsageError("identity_extension: no quantale");
  auto D = std::make_shared<LaxExtensionData>();
  D->name = "identity";
  D->T = identity_monad();
  D->V = V;
  D->ext = [](const VRel& r) { return r; };
  D->ext_at = [](const VRel& q, int i, int j) { return q.at(i, j); };
  return finish(std::move(D), {});
}

LaxExtension barr_ultrafilter_extension(const QPtr& V) {
  if (!V) throw UsageError("barr_ultrafilter_extension: no quantale");
  auto D = std::make_shared<LaxExtensionData>();
  D->name = "barr";
  D->T = ultrafilter_monad();
  D->V = V;
  const QPtr Vc = V;
  const FinMonad T = D->T;
  D->ext = [Vc, T](const VRel& r) {
    FinSet TX = T->obj(r.src), TY = T->obj(r.tgt);
    VRel out = make_vrel(Vc, TX, TY);
    for (int i = 0; i < TX->size(); ++i)
      for (int j = 0; j < TY->size(); ++j) out.at(i, j) = barr_entry(Vc, r, i, j);
    return out;
  };
  D->ext_at = [Vc](const VRel& q, int i, int j) {
    return barr_entry(Vc, q, i, j);
  };
  return finish(std::move(D), {});
}

LaxExtension kleisli_extension(const EnrichedMonad& em,
                               const CheckOptions& opts) {
  if (!em.T || !em.V) throw UsageError("kleisli_extension: empty context");
  if (!check_power_enriched(em, default_test_sets(2), opts))
    throw UsageError("kleisli_extension(" + em.name +
                     "): enrichment laws fail at sizes <= 2");
  auto D = std::make_shared<LaxExtensionData>();
  D->name = "kleisli(" + em.name + ")";
  D->T = em.T;
  D->V = em.V;
  D->kleisli = true;
  D->em = em;
  const EnrichedMonad cem = em;
  const CheckOptions copts = opts;
  D->ext = [cem, copts](const VRel& r) {
    FinMap rt = rtau_map(cem, r, copts);  // T(tgt) -> T(src)
    FinSet TX = rt.tgt, TY = rt.src;
    const std::uint64_t cells =
        static_cast<std::uint64_t>(TX->size()) * TY->size();
    if (cells > copts.cap)
      throw CapExceeded("kleisli extension matrix on " +
                            std::to_string(TX->size()) + " x " +
                            std::to_string(TY->size()) + " carriers",
                        cells);
    VRel out = make_vrel(cem.V, TX, TY);
    if (cem.hom_at) {
      for (int i = 0; i < TX->size(); ++i)
        for (int j = 0; j < TY->size(); ++j)
          out.at(i, j) = cem.hom_at(r.src, static_cast<std::uint64_t>(i),
                                    static_cast<std::uint64_t>(rt.img[j]));
    } else {
      VRel hom = hom_TX(cem, r.src, copts);  // on T(src)
      for (int i = 0; i < TX->size(); ++i)
        for (int j = 0; j < TY->size(); ++j)
          out.at(i, j) = hom.at(i, rt.img[j]);
    }
    return out;
  };
  if (cem.hom_at && cem.rtau_at)
    D->ext_at = [cem](const VRel& q, int i, int j) {
      return cem.hom_at(q.src, static_cast<std::uint64_t>(i),
                        cem.rtau_at(q, static_cast<std::uint64_t>(j)));
    };
  return finish(std::move(D), opts);
}

LaxExtension kleisli_extension(const FinMonad& T, const MonadMorphism& tau,
                               const QPtr& V, const CheckOptions& opts) {
  return kleisli_extension(make_enriched(T, tau, V, opts), opts);
}

LawReport check_kleisli_decomposition(const EnrichedMonad& em,
                                      const std::vector<int>& sizes,
                                      const CheckOptions& opts) {
  if (!em.T || !em.V)
    throw UsageError("check_kleisli_decomposition: empty context");
  if (sizes.empty()) throw UsageError("check_kleisli_decomposition: no sizes");
  LawReport rep;
  const std::string suite = "kleisli(" + em.name + ")";
  {
    LawAccum acc(rep, suite, "decomposition");
    for (int nx : sizes) {
      if (!acc.ok) break;
      for (int ny : sizes) {
        if (!acc.ok) break;
        FinSet X = standard_set(nx, "x"), Y = standard_set(ny, "y");
        const std::string at = "X=" + sname(X) + ",Y=" + sname(Y);
        try {
          FinMap adj = algebra_adjoint(em, X, opts);  // TX -> P_V(TX)
          VRel hom = hom_TX(em, X, opts);
          RelFamily F =
              make_family(em.V, X, Y, opts, law_salt(13, nx, ny));
          for (const VRel& r : F.rels) {
            FinMap rt = rtau_map(em, r, opts);  // TY -> TX
            FinSet TX = rt.tgt, TY = rt.src;
            VRel er = make_vrel(em.V, TX, TY);
            for (int i = 0; i < TX->size(); ++i)
              for (int j = 0; j < TY->size(); ++j)
                er.at(i, j) = hom.at(i, rt.img[j]);
            FinMap lhs = rel_mate(em.V, er);
            FinMap rhs = compose(adj, rt);
            acc.note_ran();
            if (!same_map(lhs, rhs)) {
              int j = 0;
              while (j < TY->size() && lhs.img[j] == rhs.img[j]) ++j;
              acc.fail(at + ": " + rwit(r) + " at " + TY->labels[j]);
              break;
            }
          }
        } catch (const CapExceeded& e) {
          rep.skip(suite, "decomposition at " + at, e.what());
        }
      }
    }
  }
  return rep;
}

}  // namespace relq
