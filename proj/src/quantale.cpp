#include "relq/quantale.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace relq {

namespace {

std::string pair_witness(const QuantaleSpec& q, Elem a, Elem b) {
  return "a=" + q.labels[a] + ", b=" + q.labels[b];
}

void require_shape(const QuantaleSpec& q) {
  const std::size_t n = q.labels.size();
  if (n == 0) throw UsageError("quantale carrier is empty");
  if (q.leq.size() != n * n)
    throw UsageError("leq table is not total: expected " +
                     std::to_string(n * n) + " entries, got " +
                     std::to_string(q.leq.size()));
  if (q.tensor.size() != n * n)
    throw UsageError("tensor table is not total: expected " +
                     std::to_string(n * n) + " entries, got " +
                     std::to_string(q.tensor.size()));
  for (Elem v : q.tensor)
    if (v < 0 || v >= static_cast<int>(n))
      throw UsageError("tensor table entry out of range");
  if (q.unit < 0 || q.unit >= static_cast<int>(n))
    throw UsageError("unit out of range");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (q.labels[i] == q.labels[j])
        throw UsageError("duplicate element label: " + q.labels[i]);
}

// Least upper bound of a subset given only the raw order; -1 when none.
Elem raw_join(const QuantaleSpec& q, const std::vector<Elem>& xs) {
  const int n = q.size();
  auto le = [&](Elem a, Elem b) { return q.leq[a * n + b] != 0; };
  Elem best = -1;
  for (Elem u = 0; u < n; ++u) {
    bool upper = true;
    for (Elem x : xs)
      if (!le(x, u)) { upper = false; break; }
    if (!upper) continue;
    if (best == -1 || le(u, best)) best = u;
  }
  if (best == -1) return -1;
  for (Elem u = 0; u < n; ++u) {
    bool upper = true;
    for (Elem x : xs)
      if (!le(x, u)) { upper = false; break; }
    if (upper && !le(best, u)) return -1;  // incomparable upper bounds
  }
  return best;
}

Elem raw_meet(const QuantaleSpec& q, const std::vector<Elem>& xs) {
  const int n = q.size();
  auto le = [&](Elem a, Elem b) { return q.leq[a * n + b] != 0; };
  Elem best = -1;
  for (Elem l = 0; l < n; ++l) {
    bool lower = true;
    for (Elem x : xs)
      if (!le(l, x)) { lower = false; break; }
    if (!lower) continue;
    if (best == -1 || le(best, l)) best = l;
  }
  if (best == -1) return -1;
  for (Elem l = 0; l < n; ++l) {
    bool lower = true;
    for (Elem x : xs)
      if (!le(l, x)) { lower = false; break; }
    if (lower && !le(l, best)) return -1;
  }
  return best;
}

}  // namespace

LawReport check_quantale_laws(const QuantaleSpec& q,
                              const CheckOptions& opts) {
  require_shape(q);
  const int n = q.size();
  auto le = [&](Elem a, Elem b) { return q.leq[a * n + b] != 0; };
  auto ten = [&](Elem a, Elem b) { return q.tensor[a * n + b]; };
  LawReport rep;
  const std::string suite = "quantale";

  {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      if (!le(a, a)) {
        rep.fail(suite, "order-reflexive", "a=" + q.labels[a]);
        ok = false;
      }
    if (ok) rep.pass(suite, "order-reflexive");
  }
  {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b)
        if (a != b && le(a, b) && le(b, a)) {
          rep.fail(suite, "order-antisymmetric", pair_witness(q, a, b));
          ok = false;
        }
    if (ok) rep.pass(suite, "order-antisymmetric");
  }
  {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b)
        for (Elem c = 0; c < n && ok; ++c)
          if (le(a, b) && le(b, c) && !le(a, c)) {
            rep.fail(suite, "order-transitive",
                     pair_witness(q, a, b) + ", c=" + q.labels[c]);
            ok = false;
          }
    if (ok) rep.pass(suite, "order-transitive");
  }

  bool lattice = true;
  {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b)
        if (raw_join(q, {a, b}) == -1) {
          rep.fail(suite, "binary-joins-exist", pair_witness(q, a, b));
          ok = false;
        }
    if (ok) rep.pass(suite, "binary-joins-exist");
    lattice = lattice && ok;
  }
  {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b)
        if (raw_meet(q, {a, b}) == -1) {
          rep.fail(suite, "binary-meets-exist", pair_witness(q, a, b));
          ok = false;
        }
    if (ok) rep.pass(suite, "binary-meets-exist");
    lattice = lattice && ok;
  }
  const Elem bot = raw_join(q, {});
  const Elem top = raw_meet(q, {});
  {
    if (bot == -1) {
      rep.fail(suite, "bottom-exists", "no least element");
      lattice = false;
    } else {
      rep.pass(suite, "bottom-exists");
    }
    if (top == -1) {
      rep.fail(suite, "top-exists", "no greatest element");
      lattice = false;
    } else {
      rep.pass(suite, "top-exists");
    }
  }

  const bool subsets_feasible =
      n <= 12 && checked_pow(2, static_cast<std::uint64_t>(n)) <= opts.cap;
  if (!lattice) {
    rep.skip(suite, "completeness-all-subsets", "lattice axioms failed");
  } else if (!subsets_feasible) {
    rep.skip(suite, "completeness-all-subsets",
             "carrier too large; implied by binary joins on a finite "
             "lattice");
  } else {
    bool ok = true;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t mask = 0; mask < total && ok; ++mask) {
      std::vector<Elem> xs;
      for (int i = 0; i < n; ++i)
        if (mask & (1ull << i)) xs.push_back(i);
      if (raw_join(q, xs) == -1) {
        std::string w = "subset {";
        for (std::size_t i = 0; i < xs.size(); ++i)
          w += (i ? "," : "") + q.labels[xs[i]];
        rep.fail(suite, "completeness-all-subsets", w + "} has no join");
        ok = false;
      }
    }
    if (ok) rep.pass(suite, "completeness-all-subsets");
  }

  {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b)
        for (Elem c = 0; c < n && ok; ++c)
          if (ten(ten(a, b), c) != ten(a, ten(b, c))) {
            rep.fail(suite, "tensor-associative",
                     pair_witness(q, a, b) + ", c=" + q.labels[c]);
            ok = false;
          }
    if (ok) rep.pass(suite, "tensor-associative");
  }
  {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      if (ten(q.unit, a) != a) {
        rep.fail(suite, "unit-left", "a=" + q.labels[a]);
        ok = false;
      }
    if (ok) rep.pass(suite, "unit-left");
  }
  {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      if (ten(a, q.unit) != a) {
        rep.fail(suite, "unit-right", "a=" + q.labels[a]);
        ok = false;
      }
    if (ok) rep.pass(suite, "unit-right");
  }

  if (!lattice) {
    rep.skip(suite, "bottom-tensor", "lattice axioms failed");
    rep.skip(suite, "distributive-left-binary", "lattice axioms failed");
    rep.skip(suite, "distributive-right-binary", "lattice axioms failed");
    rep.skip(suite, "distributive-left-subsets", "lattice axioms failed");
    rep.skip(suite, "distributive-right-subsets", "lattice axioms failed");
    return rep;
  }

  {
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      if (ten(bot, a) != bot || ten(a, bot) != bot) {
        rep.fail(suite, "bottom-tensor", "a=" + q.labels[a]);
        ok = false;
      }
    if (ok) rep.pass(suite, "bottom-tensor");
  }
  {
    bool okl = true, okr = true;
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c) {
          const Elem j = raw_join(q, {b, c});
          if (okl && ten(a, j) != raw_join(q, {ten(a, b), ten(a, c)})) {
            rep.fail(suite, "distributive-left-binary",
                     pair_witness(q, a, b) + ", c=" + q.labels[c]);
            okl = false;
          }
          if (okr && ten(j, a) != raw_join(q, {ten(b, a), ten(c, a)})) {
            rep.fail(suite, "distributive-right-binary",
                     pair_witness(q, a, b) + ", c=" + q.labels[c]);
            okr = false;
          }
        }
    if (okl) rep.pass(suite, "distributive-left-binary");
    if (okr) rep.pass(suite, "distributive-right-binary");
  }

  if (!subsets_feasible) {
    rep.skip(suite, "distributive-left-subsets",
             "carrier too large; follows from binary case with bottom");
    rep.skip(suite, "distributive-right-subsets",
             "carrier too large; follows from binary case with bottom");
  } else {
    bool okl = true, okr = true;
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::vector<Elem> xs;
      for (int i = 0; i < n; ++i)
        if (mask & (1ull << i)) xs.push_back(i);
      const Elem j = raw_join(q, xs);
      for (Elem a = 0; a < n; ++a) {
        std::vector<Elem> l, r;
        for (Elem x : xs) {
          l.push_back(ten(a, x));
          r.push_back(ten(x, a));
        }
        if (okl && ten(a, j) != raw_join(q, l)) {
          rep.fail(suite, "distributive-left-subsets",
                   "a=" + q.labels[a] + ", subset mask=" +
                       std::to_string(mask));
          okl = false;
        }
        if (okr && ten(j, a) != raw_join(q, r)) {
          rep.fail(suite, "distributive-right-subsets",
                   "a=" + q.labels[a] + ", subset mask=" +
                       std::to_string(mask));
          okr = false;
        }
      }
      if (!okl && !okr) break;
    }
    if (okl) rep.pass(suite, "distributive-left-subsets");
    if (okr) rep.pass(suite, "distributive-right-subsets");
  }

  return rep;
}

LawReport check_quantale_laws(const QPtr& Q, const CheckOptions& opts) {
  return check_quantale_laws(Q->spec(), opts);
}

Elem Quantale::join(const std::vector<Elem>& xs) const {
  Elem r = bot;
  for (Elem x : xs) r = join2(r, x);
  return r;
}

Elem Quantale::meet(const std::vector<Elem>& xs) const {
  Elem r = top;
  for (Elem x : xs) r = meet2(r, x);
  return r;
}

Elem Quantale::index_of(const std::string& label) const {
  for (Elem i = 0; i < n; ++i)
    if (labels[i] == label) return i;
  throw UsageError("unknown element of quantale " + name + ": " + label);
}

QuantaleSpec Quantale::spec() const {
  QuantaleSpec s;
  s.labels = labels;
  s.leq = leq_;
  s.tensor = tensor_;
  s.unit = unit;
  return s;
}

QPtr make_quantale(const QuantaleSpec& spec, const std::string& name) {
  LawReport rep = check_quantale_laws(spec);
  if (!rep.all_pass()) {
    for (const auto& r : rep.results)
      if (r.status == "fail")
        throw UsageError("quantale " + name + " violates " + r.law + " [" +
                         r.witness + "]");
  }
  auto q = std::make_shared<Quantale>();
  q->name = name;
  q->n = spec.size();
  q->labels = spec.labels;
  q->unit = spec.unit;
  q->leq_ = spec.leq;
  q->tensor_ = spec.tensor;
  const int n = q->n;
  q->bot = raw_join(spec, {});
  q->top = raw_meet(spec, {});
  q->join2_.resize(n * n);
  q->meet2_.resize(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      q->join2_[a * n + b] = raw_join(spec, {a, b});
      q->meet2_[a * n + b] = raw_meet(spec, {a, b});
    }
  q->lres_.resize(n * n);
  q->rres_.resize(n * n);
  for (Elem b = 0; b < n; ++b)
    for (Elem a = 0; a < n; ++a) {
      std::vector<Elem> l, r;
      for (Elem v = 0; v < n; ++v) {
        if (q->leq(q->tensor(v, a), b)) l.push_back(v);
        if (q->leq(q->tensor(a, v), b)) r.push_back(v);
      }
      q->lres_[b * n + a] = q->join(l);
      q->rres_[a * n + b] = q->join(r);
    }
  q->commutative = true;
  for (Elem a = 0; a < n && q->commutative; ++a)
    for (Elem b = 0; b < n; ++b)
      if (q->tensor(a, b) != q->tensor(b, a)) {
        q->commutative = false;
        break;
      }
  return q;
}

namespace {

QuantaleSpec chain_min_raw(int n) {
  QuantaleSpec s;
  for (int i = 0; i < n; ++i) s.labels.push_back(std::to_string(i));
  s.leq.assign(n * n, 0);
  s.tensor.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      s.leq[a * n + b] = a <= b;
      s.tensor[a * n + b] = std::min(a, b);
    }
  s.unit = n - 1;
  return s;
}

QuantaleSpec trop_raw(int n) {
  // Elements 0..n are the numeric values, element n+1 is inf.
  // Quantale order reverses the numeric one: smaller cost is larger.
  const int m = n + 2;
  QuantaleSpec s;
  for (int i = 0; i <= n; ++i) s.labels.push_back(std::to_string(i));
  s.labels.push_back("inf");
  s.leq.assign(m * m, 0);
  s.tensor.assign(m * m, 0);
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b) {
      s.leq[a * m + b] = a >= b;
      int sum = (a == m - 1 || b == m - 1) ? m - 1 : a + b;
      s.tensor[a * m + b] = sum > n ? m - 1 : sum;
    }
  s.unit = 0;
  return s;
}

}  // namespace

QuantaleSpec pow_monoid_spec(const std::vector<std::string>& monoid_labels,
                             const std::vector<int>& mult) {
  const int m = static_cast<int>(monoid_labels.size());
  if (m < 1 || mult.size() != static_cast<std::size_t>(m) * m)
    throw UsageError("monoid table malformed");
  const int n = 1 << m;
  QuantaleSpec s;
  for (int mask = 0; mask < n; ++mask) {
    std::string l = "{";
    bool first = true;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) {
        if (!first) l += ",";
        l += monoid_labels[i];
        first = false;
      }
    s.labels.push_back(l + "}");
  }
  s.leq.assign(n * n, 0);
  s.tensor.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      s.leq[a * n + b] = (a & ~b) == 0;
      int prod = 0;
      for (int i = 0; i < m; ++i)
        if (a & (1 << i))
          for (int j = 0; j < m; ++j)
            if (b & (1 << j)) prod |= 1 << mult[i * m + j];
      s.tensor[a * n + b] = prod;
    }
  s.unit = 1;  // {e}
  return s;
}

QPtr builtin_quantale(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, QPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;

  QPtr q;
  auto parse_arg = [&](const std::string& prefix) -> int {
    std::string inner =
        name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    try {
      std::size_t used = 0;
      int v = std::stoi(inner, &used);
      if (used != inner.size()) throw UsageError("");
      return v;
    } catch (...) {
      throw UsageError("bad parameter in quantale name: " + name);
    }
  };
  if (name == "two") {
    q = make_quantale(chain_min_raw(2), name);
  } else if (name.rfind("chain_min(", 0) == 0 && name.back() == ')') {
    int n = parse_arg("chain_min");
    if (n < 1) throw UsageError("chain_min requires n >= 1");
    q = make_quantale(chain_min_raw(n), name);
  } else if (name.rfind("trop(", 0) == 0 && name.back() == ')') {
    int n = parse_arg("trop");
    if (n < 1) throw UsageError("trop requires n >= 1");
    q = make_quantale(trop_raw(n), name);
  } else if (name == "pow_monoid") {
    // Free monoid on {a,b} cut off at length one: xy = x unless x = e.
    q = make_quantale(
        pow_monoid_spec({"e", "a", "b"}, {0, 1, 2, 1, 1, 1, 2, 2, 2}), name);
  } else {
    throw UsageError("unknown quantale: " + name);
  }
  cache[name] = q;
  return q;
}

std::vector<std::string> builtin_quantale_names() {
  return {"two", "chain_min(n)", "trop(n)", "pow_monoid"};
}

LawReport check_lax_hom(const LaxHom& h) {
  LawReport rep;
  const std::string suite = "lax-hom";
  const Quantale& W = *h.src;
  const Quantale& V = *h.dst;
  if (h.map.size() != static_cast<std::size_t>(W.n))
    throw UsageError("lax hom map is not total");
  auto f = [&](Elem a) { return h.map[a]; };
  bool ok = true;
  for (Elem a = 0; a < W.n && ok; ++a)
    for (Elem b = 0; b < W.n && ok; ++b)
      if (W.leq(a, b) && !V.leq(f(a), f(b))) {
        rep.fail(suite, "monotone",
                 "a=" + W.labels[a] + ", b=" + W.labels[b]);
        ok = false;
      }
  if (ok) rep.pass(suite, "monotone");
  ok = true;
  for (Elem a = 0; a < W.n && ok; ++a)
    for (Elem b = 0; b < W.n && ok; ++b)
      if (!V.leq(V.tensor(f(a), f(b)), f(W.tensor(a, b)))) {
        rep.fail(suite, "lax-tensor",
                 "a=" + W.labels[a] + ", b=" + W.labels[b]);
        ok = false;
      }
  if (ok) rep.pass(suite, "lax-tensor");
  if (V.leq(V.unit, f(W.unit)))
    rep.pass(suite, "lax-unit");
  else
    rep.fail(suite, "lax-unit", "f(unit)=" + V.labels[f(W.unit)]);
  return rep;
}

LawReport check_residual_tables(const QPtr& Q) {
  LawReport rep;
  const std::string suite = "residuals";
  const Quantale& V = *Q;
  bool ok = true;
  for (Elem a = 0; a < V.n && ok; ++a)
    for (Elem b = 0; b < V.n && ok; ++b)
      for (Elem v = 0; v < V.n; ++v)
        if (V.leq(V.tensor(v, a), b) != V.leq(v, V.lres(b, a))) {
          rep.fail(suite, "left-adjunction",
                   "a=" + V.labels[a] + ", b=" + V.labels[b] +
                       ", v=" + V.labels[v]);
          ok = false;
          break;
        }
  if (ok) rep.pass(suite, "left-adjunction");
  ok = true;
  for (Elem a = 0; a < V.n && ok; ++a)
    for (Elem b = 0; b < V.n && ok; ++b)
      for (Elem v = 0; v < V.n; ++v)
        if (V.leq(V.tensor(a, v), b) != V.leq(v, V.rres(a, b))) {
          rep.fail(suite, "right-adjunction",
                   "a=" + V.labels[a] + ", b=" + V.labels[b] +
                       ", v=" + V.labels[v]);
          ok = false;
          break;
        }
  if (ok) rep.pass(suite, "right-adjunction");
  return rep;
}

LaxHom canonical_two_embedding(const QPtr& Q) {
  LaxHom h;
  h.src = builtin_quantale("two");
  h.dst = Q;
  h.map = {Q->bot, Q->unit};
  return h;
}

}  // namespace relq
