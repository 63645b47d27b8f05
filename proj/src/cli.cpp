#include "relq/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "relq/laxalg.hpp"
#include "relq/urel.hpp"
#include "relq/vcat.hpp"

namespace relq {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw UsageError("cannot write " + path);
}

struct Line {
  int no;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line l{no, {}};
    std::string tok;
    while (ls >> tok) l.tokens.push_back(tok);
    if (!l.tokens.empty()) lines.push_back(std::move(l));
  }
  return lines;
}

[[noreturn]] void bad_line(const Line& l, const std::string& why) {
  throw UsageError("line " + std::to_string(l.no) + ": " + why);
}

// The unique stanza listing a carrier ("elements", "source", ...).
// Returns the labels and fills label -> index, rejecting duplicates.
std::vector<std::string> carrier_stanza(const std::vector<Line>& lines,
                                        const std::string& keyword,
                                        std::map<std::string, int>& index) {
  const Line* found = nullptr;
  for (const Line& l : lines) {
    if (l.tokens[0] != keyword) continue;
    if (found) bad_line(l, "duplicate " + keyword + " stanza");
    if (l.tokens.size() < 2) bad_line(l, keyword + " lists at least one label");
    found = &l;
  }
  if (!found) throw UsageError("missing " + keyword + " stanza");
  std::vector<std::string> labels(found->tokens.begin() + 1,
                                  found->tokens.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!index.emplace(labels[i], static_cast<int>(i)).second)
      bad_line(*found, "duplicate label " + labels[i]);
  return labels;
}

int lookup(const Line& l, const std::map<std::string, int>& index,
           const std::string& label, const std::string& which) {
  auto it = index.find(label);
  if (it == index.end()) bad_line(l, "unknown " + which + " " + label);
  return it->second;
}

}  // namespace

QuantaleSpec parse_quantale_text(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  std::map<std::string, int> index;
  QuantaleSpec spec;
  spec.labels = carrier_stanza(lines, "elements", index);
  const int n = spec.size();
  spec.leq.assign(n * n, 0);
  for (int a = 0; a < n; ++a) spec.leq[a * n + a] = 1;
  spec.tensor.assign(n * n, -1);
  bool have_unit = false;
  for (const Line& l : lines) {
    const std::string& k = l.tokens[0];
    if (k == "elements") continue;
    if (k == "unit") {
      if (l.tokens.size() != 2) bad_line(l, "unit takes one label");
      if (have_unit) bad_line(l, "duplicate unit stanza");
      have_unit = true;
      spec.unit = lookup(l, index, l.tokens[1], "element");
    } else if (k == "leq") {
      if (l.tokens.size() != 3) bad_line(l, "leq takes two labels");
      int a = lookup(l, index, l.tokens[1], "element");
      int b = lookup(l, index, l.tokens[2], "element");
      spec.leq[a * n + b] = 1;
    } else if (k == "tensor") {
      if (l.tokens.size() != 4) bad_line(l, "tensor takes three labels");
      int a = lookup(l, index, l.tokens[1], "element");
      int b = lookup(l, index, l.tokens[2], "element");
      int c = lookup(l, index, l.tokens[3], "element");
      Elem& cell = spec.tensor[a * n + b];
      if (cell != -1 && cell != c)
        bad_line(l, "conflicting tensor value at (" + l.tokens[1] + "," +
                         l.tokens[2] + ")");
      cell = c;
    } else {
      bad_line(l, "unknown keyword " + k);
    }
  }
  if (!have_unit) throw UsageError("missing unit stanza");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (spec.tensor[a * n + b] == -1)
        throw UsageError("tensor undefined at (" + spec.labels[a] + "," +
                         spec.labels[b] + ")");
  return spec;
}

QuantaleSpec parse_quantale_file(const std::string& path) {
  try {
    return parse_quantale_text(read_file(path));
  } catch (const UsageError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string quantale_text(const QPtr& Q) {
  std::ostringstream os;
  os << "elements";
  for (const std::string& l : Q->labels) os << ' ' << l;
  os << '\n' << "unit " << Q->label(Q->unit) << '\n';
  for (Elem a = 0; a < Q->n; ++a)
    for (Elem b = 0; b < Q->n; ++b)
      if (Q->leq(a, b)) os << "leq " << Q->label(a) << ' ' << Q->label(b) << '\n';
  for (Elem a = 0; a < Q->n; ++a)
    for (Elem b = 0; b < Q->n; ++b)
      os << "tensor " << Q->label(a) << ' ' << Q->label(b) << ' '
         << Q->label(Q->tensor(a, b)) << '\n';
  return os.str();
}

VRel parse_relation_text(const std::string& text, const QPtr& V) {
  std::vector<Line> lines = tokenize(text);
  std::map<std::string, int> src_index, tgt_index;
  FinSet X = make_finset(carrier_stanza(lines, "source", src_index));
  FinSet Y = make_finset(carrier_stanza(lines, "target", tgt_index));
  VRel r = make_vrel(V, X, Y);
  std::vector<char> seen(r.m.size(), 0);
  for (const Line& l : lines) {
    const std::string& k = l.tokens[0];
    if (k == "source" || k == "target") continue;
    if (k != "entry" && k != "entries") bad_line(l, "unknown keyword " + k);
    if (l.tokens.size() != 4) bad_line(l, "entry takes labels x y v");
    int x = lookup(l, src_index, l.tokens[1], "source element");
    int y = lookup(l, tgt_index, l.tokens[2], "target element");
    Elem v;
    try {
      v = V->index_of(l.tokens[3]);
    } catch (const UsageError&) {
      bad_line(l, "unknown value " + l.tokens[3] + " in " + V->name);
    }
    std::size_t cell = static_cast<std::size_t>(x) * Y->size() + y;
    if (seen[cell])
      bad_line(l, "duplicate entry at (" + l.tokens[1] + "," + l.tokens[2] + ")");
    seen[cell] = 1;
    r.m[cell] = v;
  }
  return r;
}

VRel parse_relation_file(const std::string& path, const QPtr& V) {
  try {
    return parse_relation_text(read_file(path), V);
  } catch (const UsageError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string relation_text(const VRel& r) {
  std::ostringstream os;
  os << "source";
  for (const std::string& l : r.src->labels) os << ' ' << l;
  os << '\n' << "target";
  for (const std::string& l : r.tgt->labels) os << ' ' << l;
  os << '\n';
  for (int x = 0; x < r.src->size(); ++x)
    for (int y = 0; y < r.tgt->size(); ++y)
      if (r.at(x, y) != r.V->bot)
        os << "entry " << r.src->labels[x] << ' ' << r.tgt->labels[y] << ' '
           << r.V->label(r.at(x, y)) << '\n';
  return os.str();
}

QPtr mutate_swap_residuals(const QPtr& Q) {
  if (Q->commutative)
    throw UsageError("swap-residuals is invisible on the commutative quantale " +
                     Q->name + "; use a noncommutative one such as pow_monoid");
  auto q = std::make_shared<Quantale>(*Q);
  q->name += "!swap-residuals";
  std::swap(q->lres_, q->rres_);
  return q;
}

FinMonad mutate_corrupt_mult(const FinMonad& T) {
  auto bad = std::make_shared<FinMonadData>(*T);
  bad->name += "!corrupt-mult";
  auto inner = T->mult;
  bad->mult = [inner](const FinSet& X) {
    FinMap m = inner(X);
    if (X->size() == 2 && m.img.size() > 3 && m.tgt->size() > 3) {
      std::vector<int> img = m.img;
      img[3] = 3;
      return make_finmap(m.src, m.tgt, std::move(img));
    }
    return m;
  };
  return bad;
}

MonadMorphism mutate_scramble_tau(const MonadMorphism& tau) {
  MonadMorphism bad = tau;
  bad.name += "!scramble-tau";
  auto inner = tau.at;
  bad.at = [inner](const FinSet& X) {
    FinMap f = inner(X);
    if (f.src->size() == 4) std::swap(f.img[0], f.img[3]);
    return f;
  };
  return bad;
}

LaxExtension mutate_transpose(const LaxExtension& E) {
  auto bad = std::make_shared<LaxExtensionData>(*E);
  bad->name += "!transpose";
  bad->birth_laws = LawReport{};
  bad->associative = false;
  auto inner = E->ext;
  bad->ext = [inner](const VRel& q) {
    VRel er = inner(q);
    if (er.src->size() != er.tgt->size()) return er;
    VRel t = er;
    for (int i = 0; i < er.src->size(); ++i)
      for (int j = 0; j < er.tgt->size(); ++j) t.at(i, j) = er.at(j, i);
    return t;
  };
  bad->ext_at = nullptr;
  return bad;
}

LaxExtension mutate_drop_unit(const LaxExtension& E) {
  auto bad = std::make_shared<LaxExtensionData>(*E);
  bad->name += "!drop-unit";
  bad->birth_laws = LawReport{};
  bad->associative = false;
  FinMonad T = E->T;
  auto inner = E->ext;
  bad->ext = [inner, T](const VRel& q) {
    if (same_set(q.src, q.tgt) && rel_eq(q, identity_rel(q.V, q.src)))
      return identity_rel(q.V, T->obj(q.src));
    return inner(q);
  };
  bad->ext_at = nullptr;
  return bad;
}

namespace {

// With --timings every line of one suite invocation carries the same
// elapsed wall time; the laws inside a suite share their enumeration
// loops, so a finer split would be arbitrary.
template <typename F>
LawReport timed(bool on, F&& f) {
  if (!on) return f();
  const auto t0 = std::chrono::steady_clock::now();
  LawReport rep = f();
  const long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  for (LawResult& r : rep.results) r.ms = ms;
  return rep;
}

CheckOptions make_opts(const RunConfig& cfg) {
  if (cfg.cap == 0) throw UsageError("--cap must be positive");
  if (cfg.samples <= 0) throw UsageError("--samples must be positive");
  CheckOptions opts;
  opts.cap = cfg.cap;
  opts.seed = cfg.seed;
  opts.samples = cfg.samples;
  opts.timings = cfg.timings;
  return opts;
}

std::vector<int> parse_sizes(const std::string& s, std::vector<int> fallback) {
  if (s.empty()) return fallback;
  std::vector<int> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("--sizes expects comma separated nonnegative integers, got '" +
                       s + "'");
    int v = std::stoi(tok);
    if (v > 12) throw UsageError("--sizes entries beyond 12 are not supported");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--sizes is empty");
  return out;
}

QPtr resolve_quantale(const std::string& arg) {
  if (arg.empty())
    throw UsageError("a quantale is required: --quantale NAME or --quantale FILE");
  try {
    return builtin_quantale(arg);
  } catch (const UsageError&) {
  }
  std::ifstream probe(arg);
  if (!probe)
    throw UsageError("unknown quantale " + arg +
                     " and no such file; builtins: two, chain_min(n), trop(n), "
                     "pow_monoid");
  return make_quantale(parse_quantale_file(arg), arg);
}

EnrichedMonad resolve_em(const RunConfig& cfg, const CheckOptions& opts,
                         const QPtr& V) {
  if (cfg.monad.empty()) throw UsageError("--monad is required here");
  return resolve_enriched(cfg.monad, cfg.tau.empty() ? "identity" : cfg.tau, V,
                          opts);
}

LaxExtension resolve_context(const RunConfig& cfg, const CheckOptions& opts,
                             const QPtr& V) {
  std::string sel = cfg.extension;
  if (sel.empty()) sel = cfg.monad.empty() ? "identity" : "kleisli";
  if (sel == "identity") {
    if (!cfg.monad.empty() && cfg.monad != "identity" && cfg.monad != "id")
      throw UsageError("the identity context takes no monad, got --monad " +
                       cfg.monad);
    return identity_extension(V);
  }
  if (sel == "barr") {
    if (!cfg.monad.empty() && cfg.monad != "ultrafilter" &&
        cfg.monad != "ultrafilter_fin")
      throw UsageError("the barr context is the ultrafilter extension, got "
                       "--monad " + cfg.monad);
    return barr_ultrafilter_extension(V);
  }
  if (sel == "kleisli") return kleisli_extension(resolve_em(cfg, opts, V), opts);
  throw UsageError("unknown extension " + sel +
                   "; choose identity, barr or kleisli");
}

int emit_report(const LawReport& rep, const RunConfig& cfg, std::ostream& out,
                const std::string& human_extra = "") {
  const std::string lines = rep.machine_lines(cfg.timings);
  if (!cfg.out.empty()) write_file(cfg.out, lines);
  out << lines << '\n' << rep.human_summary() << '\n';
  bool legend = false;
  for (const LawResult& r : rep.results) {
    if (r.status == "fail") {
      out << "FAIL " << r.suite << " :: " << r.law << " :: " << r.witness
          << '\n';
      if (r.witness.find("r#") != std::string::npos) legend = true;
    } else if (r.status == "skip") {
      out << "SKIP " << r.suite << " :: " << r.law << " :: " << r.witness
          << '\n';
    }
  }
  if (legend)
    out << "(r#N over X,Y: cell (x,y) is digit x*|Y|+y of N, little endian in "
           "base |V|)\n";
  if (!human_extra.empty()) out << human_extra;
  return rep.all_pass() ? 0 : 1;
}

int run_laws(const RunConfig& cfg, std::ostream& out) {
  CheckOptions opts = make_opts(cfg);
  if (cfg.action == "quantale") {
    const std::string nm = !cfg.name.empty() ? cfg.name : cfg.quantale;
    if (!nm.empty() && !cfg.file.empty())
      throw UsageError("give either --name or --file, not both");
    LawReport rep;
    std::string extra;
    QPtr Q;
    if (!cfg.file.empty()) {
      QuantaleSpec spec = parse_quantale_file(cfg.file);
      rep = timed(cfg.timings, [&] { return check_quantale_laws(spec, opts); });
      if (rep.all_pass()) {
        Q = make_quantale(spec, cfg.file);
        rep.merge(timed(cfg.timings, [&] { return check_residual_tables(Q); }));
        extra = "normalized form:\n" + quantale_text(Q);
      }
    } else if (!nm.empty()) {
      Q = builtin_quantale(nm);
      rep = timed(cfg.timings, [&] { return check_quantale_laws(Q, opts); });
      rep.merge(timed(cfg.timings, [&] { return check_residual_tables(Q); }));
    } else {
      throw UsageError("laws quantale needs --name or --file");
    }
    if (!cfg.mutate.empty()) {
      if (cfg.mutate != "swap-residuals")
        throw UsageError("laws quantale supports --mutate swap-residuals, got " +
                         cfg.mutate);
      if (!Q)
        throw UsageError("cannot mutate a quantale whose tables failed "
                         "validation");
      return emit_report(timed(cfg.timings, [&] {
                           return check_residual_tables(mutate_swap_residuals(Q));
                         }),
                         cfg, out);
    }
    return emit_report(rep, cfg, out, extra);
  }
  if (cfg.action == "monad") {
    if (cfg.monad.empty()) throw UsageError("laws monad needs --monad");
    FinMonad T = builtin_monad(cfg.monad);
    std::vector<FinSet> sets;
    if (cfg.sizes.empty()) {
      sets = default_test_sets(2);
    } else {
      for (int n : parse_sizes(cfg.sizes, {})) sets.push_back(standard_set(n));
    }
    auto resolve_tau = [&] {
      QPtr V = resolve_quantale(cfg.quantale);
      MonadMorphism tau = builtin_tau(cfg.tau.empty() ? "identity" : cfg.tau, V);
      if (tau.T->name != T->name)
        throw UsageError("tau " + tau.name + " lands in " + tau.T->name +
                         ", not in " + T->name);
      return tau;
    };
    if (cfg.mutate == "corrupt-mult")
      return emit_report(timed(cfg.timings, [&] {
                           return check_monad_laws(mutate_corrupt_mult(T), sets,
                                                   opts);
                         }),
                         cfg, out);
    if (cfg.mutate == "scramble-tau")
      return emit_report(timed(cfg.timings, [&] {
                           return check_monad_morphism(
                               mutate_scramble_tau(resolve_tau()), sets, opts);
                         }),
                         cfg, out);
    if (!cfg.mutate.empty())
      throw UsageError("laws monad supports --mutate corrupt-mult or "
                       "scramble-tau, got " + cfg.mutate);
    LawReport rep =
        timed(cfg.timings, [&] { return check_monad_laws(T, sets, opts); });
    if (!cfg.tau.empty())
      rep.merge(timed(cfg.timings, [&] {
        return check_monad_morphism(resolve_tau(), sets, opts);
      }));
    return emit_report(rep, cfg, out);
  }
  if (cfg.action == "extension") {
    QPtr V = resolve_quantale(cfg.quantale);
    LaxExtension E = resolve_context(cfg, opts, V);
    std::vector<int> sizes = parse_sizes(cfg.sizes, {1, 2});
    if (cfg.mutate == "transpose")
      return emit_report(timed(cfg.timings, [&] {
                           return check_lax_extension(mutate_transpose(E),
                                                      sizes, opts);
                         }),
                         cfg, out);
    if (cfg.mutate == "drop-unit")
      return emit_report(timed(cfg.timings, [&] {
                           return check_urel_laws(mutate_drop_unit(E), sizes,
                                                  opts);
                         }),
                         cfg, out);
    if (!cfg.mutate.empty())
      throw UsageError("laws extension supports --mutate transpose or "
                       "drop-unit, got " + cfg.mutate);
    LawReport rep = timed(
        cfg.timings, [&] { return check_lax_extension(E, sizes, opts); });
    rep.merge(
        timed(cfg.timings, [&] { return check_associative(E, sizes, opts); }));
    if (E->associative)
      rep.merge(
          timed(cfg.timings, [&] { return check_urel_laws(E, sizes, opts); }));
    else
      rep.skip("urel(" + E->name + ")", "all",
               "construction-time associativity failed; convolution laws not "
               "run");
    if (E->kleisli)
      rep.merge(
          timed(cfg.timings, [&] { return check_nbhd_conv(E, sizes, opts); }));
    return emit_report(rep, cfg, out);
  }
  throw UsageError("unknown laws action " + cfg.action);
}

int run_compute(const RunConfig& cfg, std::ostream& out) {
  CheckOptions opts = make_opts(cfg);
  QPtr V = resolve_quantale(cfg.quantale);
  auto need = [&](std::size_t k, const char* what) {
    if (cfg.inputs.size() != k)
      throw UsageError("compute " + cfg.action + " takes " + what);
  };
  VRel res;
  if (cfg.action == "compose" || cfg.action == "extension" ||
      cfg.action == "lifting") {
    need(2, "two relation spec files");
    VRel a = parse_relation_file(cfg.inputs[0], V);
    VRel b = parse_relation_file(cfg.inputs[1], V);
    res = cfg.action == "compose"     ? compose(a, b)
          : cfg.action == "extension" ? extension(a, b)
                                      : lifting(a, b);
  } else if (cfg.action == "opposite") {
    need(1, "one relation spec file");
    res = opposite(parse_relation_file(cfg.inputs[0], V));
  } else if (cfg.action == "kleisli-ext") {
    need(1, "one relation spec file");
    LaxExtension E = resolve_context(cfg, opts, V);
    res = E->ext(parse_relation_file(cfg.inputs[0], V));
  } else {
    throw UsageError("unknown compute action " + cfg.action);
  }
  const std::string text = relation_text(res);
  if (!cfg.out.empty())
    write_file(cfg.out, text);
  else
    out << text;
  return 0;
}

int run_enumerate(const RunConfig& cfg, std::ostream& out) {
  CheckOptions opts = make_opts(cfg);
  QPtr V = resolve_quantale(cfg.quantale);
  LawReport rep;
  std::ostringstream human;
  if (cfg.action == "presheaf") {
    LaxExtension E = resolve_context(cfg, opts, V);
    int n = cfg.set_size < 0 ? 1 : cfg.set_size;
    if (n > 12) throw UsageError("--set-size beyond 12 is not supported");
    FinSet X = standard_set(n);
    FinSet TX = E->T->obj(X);
    std::vector<std::uint64_t> codes = presheaf_codes(E, X, opts);
    rep.pass("enumerate-presheaf(" + E->name + ")", "size-" + std::to_string(n));
    human << "context " << E->name << '\n'
          << "|X| = " << n << ", |TX| = " << TX->size() << '\n'
          << "|PiX| = " << codes.size() << '\n';
    for (std::uint64_t c : codes) {
      human << "p:" << c;
      std::vector<Elem> t = decode_tuple(V, c, TX->size());
      for (int k = 0; k < TX->size(); ++k)
        human << ' ' << TX->labels[k] << '=' << V->label(t[k]);
      human << '\n';
    }
    return emit_report(rep, cfg, out, human.str());
  }
  if (cfg.action != "algebras" && cfg.action != "monoids")
    throw UsageError("unknown enumerate action " + cfg.action);
  std::vector<int> ns = parse_sizes(cfg.sizes, {0, 1, 2});
  std::string suite;
  std::function<std::size_t(const FinSet&)> count;
  if (cfg.action == "algebras") {
    LaxExtension E = resolve_context(cfg, opts, V);
    suite = "enumerate-algebras(" + E->name + ")";
    human << "context " << E->name << '\n'
          << "fingerprint " << context_fingerprint(E) << '\n';
    count = [E, opts](const FinSet& X) {
      return enumerate_lax_algebras(E, X, opts).size();
    };
  } else {
    EnrichedMonad em = resolve_em(cfg, opts, V);
    suite = "enumerate-monoids(" + em.name + ")";
    human << "monad " << em.name << '\n';
    count = [em, opts](const FinSet& X) {
      return enumerate_kleisli_monoids(em, X, opts).size();
    };
  }
  std::uint64_t cap_required = 0;
  std::string cap_what;
  for (int n : ns) {
    const std::string law = "size-" + std::to_string(n);
    try {
      std::size_t c = count(standard_set(n));
      rep.pass(suite, law);
      human << "size " << n << ": " << c << '\n';
    } catch (const CapExceeded& e) {
      rep.skip(suite, law, e.what());
      human << "size " << n << ": exceeds cap (requires " << e.required
            << ")\n";
      if (cap_required == 0) {
        cap_required = e.required;
        cap_what = e.what();
      }
    }
  }
  int rc = emit_report(rep, cfg, out, human.str());
  if (cap_required != 0) throw CapExceeded(cap_what, cap_required);
  return rc;
}

// Scans the category laws cell by cell so failures carry the offending
// entries; the verdict is cross-checked against the library predicate.
bool vcat_laws(LawReport& rep, const std::string& suite, const VRel& a) {
  const Quantale& V = *a.V;
  const std::vector<std::string>& lb = a.src->labels;
  const int n = a.src->size();
  bool okr = true, okt = true;
  {
    LawAccum refl(rep, suite, "reflexive");
    LawAccum trans(rep, suite, "transitive");
    refl.note_ran();
    trans.note_ran();
    for (int x = 0; x < n; ++x)
      if (!V.leq(V.unit, a.at(x, x)))
        refl.fail("unit !<= a(" + lb[x] + "," + lb[x] + ") = " +
                  V.label(a.at(x, x)));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          Elem v = V.tensor(a.at(x, y), a.at(y, z));
          if (!V.leq(v, a.at(x, z)))
            trans.fail("a(" + lb[x] + "," + lb[y] + ") (x) a(" + lb[y] + "," +
                       lb[z] + ") = " + V.label(v) + " !<= a(" + lb[x] + "," +
                       lb[z] + ") = " + V.label(a.at(x, z)));
        }
    okr = refl.ok;
    okt = trans.ok;
  }
  if ((okr && okt) != check_vcat(a))
    throw Error("category law scan disagrees with check_vcat");
  return okr && okt;
}

VRel load_endo(const std::string& path, const QPtr& V) {
  VRel a = parse_relation_file(path, V);
  if (!same_set(a.src, a.tgt))
    throw UsageError(path + ": a category structure must relate a set to "
                     "itself");
  return a;
}

FinMap parse_map(const std::string& labels, const FinSet& X, const FinSet& Y) {
  std::vector<int> img;
  std::istringstream in(labels);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    auto it = std::find(Y->labels.begin(), Y->labels.end(), tok);
    if (it == Y->labels.end())
      throw UsageError("--map: unknown target element " + tok);
    img.push_back(static_cast<int>(it - Y->labels.begin()));
  }
  if (static_cast<int>(img.size()) != X->size())
    throw UsageError("--map needs one target label per source element (" +
                     std::to_string(X->size()) + " expected, " +
                     std::to_string(img.size()) + " given)");
  return make_finmap(X, Y, std::move(img));
}

int run_check_structures(const RunConfig& cfg, std::ostream& out) {
  QPtr V = resolve_quantale(cfg.quantale);
  LawReport rep;
  std::ostringstream human;
  if (cfg.action == "vcat") {
    if (cfg.inputs.size() != 1)
      throw UsageError("check vcat takes one relation spec file");
    VRel a = load_endo(cfg.inputs[0], V);
    if (!vcat_laws(rep, "vcat", a))
      human << "structure:\n" << relation_text(a);
    return emit_report(rep, cfg, out, human.str());
  }
  if (cfg.action == "vfunctor") {
    if (cfg.inputs.size() != 2)
      throw UsageError("check vfunctor takes two relation spec files");
    VRel a = load_endo(cfg.inputs[0], V);
    VRel b = load_endo(cfg.inputs[1], V);
    if (!check_vcat(a))
      throw UsageError(cfg.inputs[0] + " is not a category structure");
    if (!check_vcat(b))
      throw UsageError(cfg.inputs[1] + " is not a category structure");
    if (cfg.map_labels.empty())
      throw UsageError("check vfunctor needs --map with one target label per "
                       "source element");
    FinMap f = parse_map(cfg.map_labels, a.src, b.src);
    bool ok = true;
    {
      LawAccum fun(rep, "vfunctor", "functor");
      fun.note_ran();
      for (int x = 0; x < a.src->size(); ++x)
        for (int y = 0; y < a.src->size(); ++y)
          if (!V->leq(a.at(x, y), b.at(f.img[x], f.img[y])))
            fun.fail("a(" + a.src->labels[x] + "," + a.src->labels[y] + ") = " +
                     V->label(a.at(x, y)) + " !<= b(" +
                     b.src->labels[f.img[x]] + "," + b.src->labels[f.img[y]] +
                     ") = " + V->label(b.at(f.img[x], f.img[y])));
      ok = fun.ok;
    }
    if (ok != check_vfunctor(f, make_vcat(a.src, a), make_vcat(b.src, b)))
      throw Error("functor law scan disagrees with check_vfunctor");
    if (!ok)
      human << "structure a:\n" << relation_text(a) << "structure b:\n"
            << relation_text(b);
    return emit_report(rep, cfg, out, human.str());
  }
  if (cfg.action == "vmodule") {
    if (cfg.inputs.size() != 3)
      throw UsageError("check vmodule takes the two structure files and the "
                       "module file");
    VRel a = load_endo(cfg.inputs[0], V);
    VRel b = load_endo(cfg.inputs[1], V);
    VRel m = parse_relation_file(cfg.inputs[2], V);
    if (!check_vcat(a))
      throw UsageError(cfg.inputs[0] + " is not a category structure");
    if (!check_vcat(b))
      throw UsageError(cfg.inputs[1] + " is not a category structure");
    if (!same_set(m.src, a.src) || !same_set(m.tgt, b.src))
      throw MismatchError("module boundaries disagree with the structures");
    auto absorb = [&](const char* law, const VRel& got) {
      LawAccum acc(rep, "vmodule", law);
      acc.note_ran();
      for (int x = 0; x < m.src->size(); ++x)
        for (int y = 0; y < m.tgt->size(); ++y)
          if (got.at(x, y) != m.at(x, y))
            acc.fail(std::string(law) + " composite at (" + m.src->labels[x] +
                     "," + m.tgt->labels[y] + ") = " + V->label(got.at(x, y)) +
                     ", module holds " + V->label(m.at(x, y)));
      return acc.ok;
    };
    bool ok = true;
    {
      bool o1 = absorb("absorb-src", compose(m, a));
      bool o2 = absorb("absorb-tgt", compose(b, m));
      ok = o1 && o2;
    }
    if (ok != check_vmodule({make_vcat(a.src, a), make_vcat(b.src, b), m}))
      throw Error("module law scan disagrees with check_vmodule");
    if (!ok)
      human << "structure a:\n" << relation_text(a) << "structure b:\n"
            << relation_text(b) << "module:\n" << relation_text(m);
    return emit_report(rep, cfg, out, human.str());
  }
  throw UsageError("unknown check action " + cfg.action);
}

int run_check(const RunConfig& cfg, std::ostream& out) {
  CheckOptions opts = make_opts(cfg);
  if (cfg.action == "vcat" || cfg.action == "vfunctor" ||
      cfg.action == "vmodule")
    return run_check_structures(cfg, out);
  QPtr V = resolve_quantale(cfg.quantale);
  std::vector<int> sizes = parse_sizes(cfg.sizes, {1});
  if (cfg.action == "adjunction")
    return emit_report(timed(cfg.timings, [&] {
                         return check_adjunction(resolve_em(cfg, opts, V),
                                                 sizes, opts);
                       }),
                       cfg, out);
  if (cfg.action == "yoneda")
    return emit_report(timed(cfg.timings, [&] {
                         return check_yoneda(resolve_context(cfg, opts, V),
                                             sizes, opts);
                       }),
                       cfg, out);
  if (cfg.action == "iso")
    return emit_report(timed(cfg.timings, [&] {
                         return check_cats_mons_iso(
                             resolve_context(cfg, opts, V), sizes, opts);
                       }),
                       cfg, out);
  if (cfg.action == "change-of-base") {
    EnrichedMonad em = resolve_em(cfg, opts, V);
    if (cfg.target.empty())
      throw UsageError("check change-of-base needs --target QUANTALE");
    QPtr W = resolve_quantale(cfg.target);
    MonadMorphism kappa;
    if (W->name == V->name) {
      kappa = identity_morphism(pv_monad(V));
    } else if (W.get() == builtin_quantale("two").get()) {
      kappa = pv_hom_morphism(canonical_two_embedding(V));
    } else {
      throw UsageError("the catalog knows the identity change (target equals "
                       "the base) and the embedding of two; got --target " +
                       W->name);
    }
    return emit_report(timed(cfg.timings, [&] {
                         return check_change_of_enrichment(em, W, kappa, sizes,
                                                           opts);
                       }),
                       cfg, out);
  }
  throw UsageError("unknown check action " + cfg.action);
}

int run_crosscheck(const RunConfig& cfg, std::ostream& out) {
  CheckOptions opts = make_opts(cfg);
  if (cfg.action != "top-preorder")
    throw UsageError("unknown crosscheck action " + cfg.action);
  int n = cfg.size < 0 ? 2 : cfg.size;
  std::uint64_t pre = count_preorders(n);
  std::uint64_t top = count_topologies(n);
  std::ostringstream human;
  human << "size " << n << '\n'
        << "preorders " << pre << '\n'
        << "topologies " << top << '\n';
  FinSet X = standard_set(n);
  QPtr two = builtin_quantale("two");
  auto table_line = [&](const std::string& label, auto&& counter) {
    try {
      human << label << ' ' << counter() << '\n';
    } catch (const CapExceeded& e) {
      human << label << " exceeds cap (requires " << e.required << ")\n";
    }
  };
  LaxExtension id_ctx = identity_extension(two);
  table_line("lax-algebras identity " + context_fingerprint(id_ctx),
             [&] { return enumerate_lax_algebras(id_ctx, X, opts).size(); });
  LaxExtension barr = barr_ultrafilter_extension(two);
  table_line("lax-algebras barr " + context_fingerprint(barr),
             [&] { return enumerate_lax_algebras(barr, X, opts).size(); });
  table_line("kleisli-monoids powerset", [&] {
    return enumerate_kleisli_monoids(enriched_powerset(), X, opts).size();
  });
  table_line("kleisli-monoids filter", [&] {
    return enumerate_kleisli_monoids(enriched_filter(), X, opts).size();
  });
  return emit_report(timed(cfg.timings,
                           [&] { return check_top_preorder_crosscheck(n, opts); }),
                     cfg, out, human.str());
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.group == "laws") return run_laws(cfg, out);
    if (cfg.group == "compute") return run_compute(cfg, out);
    if (cfg.group == "enumerate") return run_enumerate(cfg, out);
    if (cfg.group == "check") return run_check(cfg, out);
    if (cfg.group == "crosscheck") return run_crosscheck(cfg, out);
    throw UsageError("unknown command " + cfg.group + " " + cfg.action);
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << " [requires " << e.required
        << ", cap " << cfg.cap << "]\n";
    return 3;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

int cli_main(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"laws, computations and counts for quantale valued relations"};
  app.require_subcommand(1);

  app.add_option("--quantale", cfg.quantale,
                 "builtin quantale name or spec file")
      ->envname("RELQ_QUANTALE");
  app.add_option("--monad", cfg.monad, "monad catalog name")
      ->envname("RELQ_MONAD");
  app.add_option("--tau", cfg.tau, "comparison catalog name")
      ->envname("RELQ_TAU");
  app.add_option("--extension,--context", cfg.extension,
                 "identity | barr | kleisli")
      ->envname("RELQ_EXTENSION");
  app.add_option("--sizes", cfg.sizes, "comma separated base set sizes")
      ->envname("RELQ_SIZES");
  app.add_option("--seed", cfg.seed, "seed for sampled checks")
      ->envname("RELQ_SEED");
  app.add_option("--cap", cfg.cap, "enumeration ceiling")->envname("RELQ_CAP");
  app.add_option("--samples", cfg.samples, "sample count past the cap")
      ->envname("RELQ_SAMPLES");
  app.add_option("--out", cfg.out,
                 "also write the machine records (or the computed relation) "
                 "to this file")
      ->envname("RELQ_OUT");
  app.add_flag("--timings", cfg.timings, "emit per-law durations")
      ->envname("RELQ_TIMINGS");
  app.add_option("--name", cfg.name, "builtin quantale name");
  app.add_option("--file", cfg.file, "quantale spec file");
  app.add_option("--mutate", cfg.mutate, "run a law-breaking fixture instead");
  app.add_option("--map", cfg.map_labels,
                 "functor images: comma separated target labels");
  app.add_option("--set-size", cfg.set_size, "carrier size for the presheaf "
                                             "listing");
  app.add_option("--size", cfg.size, "carrier size for the crosscheck");
  app.add_option("--target", cfg.target, "change-of-base target quantale");

  auto leaf = [&cfg](CLI::App* parent, std::string group, std::string action,
                     const std::string& desc) {
    CLI::App* s = parent->add_subcommand(action, desc);
    s->fallthrough();
    s->callback([&cfg, group, action] {
      cfg.group = group;
      cfg.action = action;
    });
    return s;
  };

  CLI::App* laws = app.add_subcommand("laws", "run a law suite");
  laws->require_subcommand(1);
  laws->fallthrough();
  leaf(laws, "laws", "quantale", "order, lattice, tensor and residual laws");
  leaf(laws, "laws", "monad", "functor, unit, mult and comparison laws");
  leaf(laws, "laws", "extension",
       "extension conditions plus convolution and nbhd/conv laws");

  CLI::App* compute = app.add_subcommand(
      "compute", "apply one operation to relation spec files");
  compute->require_subcommand(1);
  compute->fallthrough();
  leaf(compute, "compute", "compose", "A B -> A.B (B applied first)")
      ->add_option("files", cfg.inputs, "relation spec files");
  leaf(compute, "compute", "extension", "S R -> the extension of S along R")
      ->add_option("files", cfg.inputs, "relation spec files");
  leaf(compute, "compute", "lifting", "T S -> the lifting of T through S")
      ->add_option("files", cfg.inputs, "relation spec files");
  leaf(compute, "compute", "opposite", "R -> R with sides swapped")
      ->add_option("files", cfg.inputs, "relation spec file");
  leaf(compute, "compute", "kleisli-ext",
       "R -> the context's extension of R, over the free carriers")
      ->add_option("files", cfg.inputs, "relation spec file");

  CLI::App* enumerate =
      app.add_subcommand("enumerate", "list or count structures");
  enumerate->require_subcommand(1);
  enumerate->fallthrough();
  leaf(enumerate, "enumerate", "presheaf",
       "elements of the presheaf carrier at --set-size");
  leaf(enumerate, "enumerate", "algebras",
       "count the lax algebras of a context per size");
  leaf(enumerate, "enumerate", "monoids",
       "count the kleisli monoids of an enriched monad per size");

  CLI::App* check = app.add_subcommand("check", "verify one structure or "
                                                "correspondence");
  check->require_subcommand(1);
  check->fallthrough();
  leaf(check, "check", "vcat", "reflexivity and transitivity of a structure")
      ->add_option("files", cfg.inputs, "relation spec file");
  leaf(check, "check", "vfunctor", "structure preservation of --map")
      ->add_option("files", cfg.inputs, "two relation spec files");
  leaf(check, "check", "vmodule", "absorption on both sides")
      ->add_option("files", cfg.inputs, "structure, structure, module");
  leaf(check, "check", "adjunction",
       "presheaf comparison laws and triangle identities");
  leaf(check, "check", "yoneda", "embedding laws of the context");
  leaf(check, "check", "iso", "lax algebras match kleisli monoids");
  leaf(check, "check", "change-of-base",
       "re-enrichment along --target agrees with the base");

  CLI::App* crosscheck =
      app.add_subcommand("crosscheck", "independent counting oracles");
  crosscheck->require_subcommand(1);
  crosscheck->fallthrough();
  leaf(crosscheck, "crosscheck", "top-preorder",
       "preorder and topology counts against four enumerations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace relq
