#include "invk/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace invk {

MonomialOrder::MonomialOrder(int n, std::vector<OrderRule> rules) : n_(n), rules_(std::move(rules)) {
  if (n > kMaxVars) throw InputError("too many variables (max " + std::to_string(kMaxVars) + ")");
  std::vector<int> seen(n, 0);
  for (auto& r : rules_) {
    if (r.kind == OrderRule::Weight) {
      r.weights.resize(n, 0);
      for (long w : r.weights)
        if (w < 0) throw InputError("negative weight in monomial order");
      continue;
    }
    for (int v : r.vars) {
      if (v < 0 || v >= n) throw InputError("order block references unknown variable");
      if (seen[v]++) throw InputError("variable listed twice in monomial order");
    }
  }
  OrderRule rest;
  rest.kind = OrderRule::GrevLex;
  for (int v = 0; v < n; ++v)
    if (!seen[v]) rest.vars.push_back(v);
  if (!rest.vars.empty()) rules_.push_back(rest);
  plain_grevlex_ = rules_.size() == 1 && rules_[0].kind == OrderRule::GrevLex;
  if (plain_grevlex_)
    for (int i = 0; i < n; ++i)
      if (rules_[0].vars[i] != i) plain_grevlex_ = false;
}

static std::vector<int> iota_vars(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

MonomialOrder MonomialOrder::grevlex(int n) { return MonomialOrder(n, {OrderRule{OrderRule::GrevLex, iota_vars(n), {}}}); }
MonomialOrder MonomialOrder::lex(int n) { return MonomialOrder(n, {OrderRule{OrderRule::Lex, iota_vars(n), {}}}); }
MonomialOrder MonomialOrder::glex(int n) { return MonomialOrder(n, {OrderRule{OrderRule::GLex, iota_vars(n), {}}}); }

MonomialOrder MonomialOrder::blocks(int n, const std::vector<std::pair<std::vector<int>, OrderRule::Kind>>& bl) {
  std::vector<OrderRule> rules;
  for (auto& [vars, kind] : bl)
    if (!vars.empty()) rules.push_back(OrderRule{kind, vars, {}});
  return MonomialOrder(n, rules);
}

int MonomialOrder::compare(const Mono& s, const Mono& t) const {
  if (plain_grevlex_) {
    int ds = 0, dt = 0;
    for (int i = 0; i < n_; ++i) {
      ds += s.e[i];
      dt += t.e[i];
    }
    if (ds != dt) return ds > dt ? 1 : -1;
    for (int i = n_ - 1; i >= 0; --i)
      if (s.e[i] != t.e[i]) return s.e[i] < t.e[i] ? 1 : -1;
    return 0;
  }
  for (const auto& r : rules_) {
    switch (r.kind) {
      case OrderRule::Weight: {
        long ws = 0;
        for (int i = 0; i < n_; ++i) ws += r.weights[i] * (long(s.e[i]) - long(t.e[i]));
        if (ws != 0) return ws > 0 ? 1 : -1;
        break;
      }
      case OrderRule::Lex:
        for (int v : r.vars)
          if (s.e[v] != t.e[v]) return s.e[v] > t.e[v] ? 1 : -1;
        break;
      case OrderRule::GrevLex: {
        int ds = 0, dt = 0;
        for (int v : r.vars) {
          ds += s.e[v];
          dt += t.e[v];
        }
        if (ds != dt) return ds > dt ? 1 : -1;
        for (auto it = r.vars.rbegin(); it != r.vars.rend(); ++it)
          if (s.e[*it] != t.e[*it]) return s.e[*it] < t.e[*it] ? 1 : -1;
        break;
      }
      case OrderRule::GLex: {
        int ds = 0, dt = 0;
        for (int v : r.vars) {
          ds += s.e[v];
          dt += t.e[v];
        }
        if (ds != dt) return ds > dt ? 1 : -1;
        for (int v : r.vars)
          if (s.e[v] != t.e[v]) return s.e[v] > t.e[v] ? 1 : -1;
        break;
      }
    }
  }
  return 0;
}

std::vector<OrderRule> MonomialOrder::shifted_rules(int shift, int total) const {
  std::vector<OrderRule> out;
  for (const auto& r : rules_) {
    OrderRule s = r;
    if (r.kind == OrderRule::Weight) {
      s.weights.assign(total, 0);
      for (int i = 0; i < n_; ++i) s.weights[i + shift] = r.weights[i];
    } else {
      for (int& v : s.vars) v += shift;
    }
    out.push_back(s);
  }
  return out;
}

std::string MonomialOrder::describe(const std::vector<std::string>& names) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& r : rules_) {
    if (!first) os << ";";
    first = false;
    if (r.kind == OrderRule::Weight) {
      os << "weight[";
      for (size_t i = 0; i < r.weights.size(); ++i) os << (i ? "," : "") << r.weights[i];
      os << "]";
      continue;
    }
    os << (r.kind == OrderRule::Lex ? "lex" : r.kind == OrderRule::GLex ? "glex" : "grevlex") << "(";
    for (size_t i = 0; i < r.vars.size(); ++i) os << (i ? "," : "") << names[r.vars[i]];
    os << ")";
  }
  return os.str();
}

PolyRing::PolyRing(CoeffRing k, std::vector<std::string> names, MonomialOrder order)
    : k_(std::move(k)), names_(std::move(names)), order_(std::move(order)) {
  if (int(names_.size()) > kMaxVars) throw InputError("too many variables");
  if (order_.nvars() != int(names_.size())) throw InputError("order arity does not match variable count");
}

RingPtr PolyRing::make(CoeffRing k, std::vector<std::string> names) {
  int n = int(names.size());
  return std::make_shared<PolyRing>(std::move(k), std::move(names), MonomialOrder::grevlex(n));
}

RingPtr PolyRing::make(CoeffRing k, std::vector<std::string> names, MonomialOrder order) {
  return std::make_shared<PolyRing>(std::move(k), std::move(names), std::move(order));
}

int PolyRing::index_of(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

RingPtr PolyRing::with_order(MonomialOrder o) const { return make(k_, names_, std::move(o)); }
RingPtr PolyRing::with_coeffs(CoeffRing k) const { return make(std::move(k), names_, order_); }

Poly PolyRing::constant(const Rat& c) const {
  Rat v = k_.normalize(c);
  if (v == 0) return {};
  return {Term{Mono{}, v}};
}

Poly PolyRing::variable(int i) const {
  Mono m;
  m.e[i] = 1;
  return {Term{m, Rat(1)}};
}

Poly PolyRing::monomial(const Mono& m, const Rat& c) const {
  Rat v = k_.normalize(c);
  if (v == 0) return {};
  return {Term{m, v}};
}

Poly PolyRing::from_terms(std::vector<Term> terms) const {
  std::sort(terms.begin(), terms.end(), [this](const Term& a, const Term& b) { return cmp(a.m, b.m) > 0; });
  Poly out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c += t.c;
    } else {
      if (!out.empty()) {
        out.back().c = k_.normalize(out.back().c);
        if (out.back().c == 0) out.pop_back();
      }
      out.push_back(std::move(t));
    }
  }
  if (!out.empty()) {
    out.back().c = k_.normalize(out.back().c);
    if (out.back().c == 0) out.pop_back();
  }
  return out;
}

Poly PolyRing::resort(Poly f) const {
  std::sort(f.begin(), f.end(), [this](const Term& a, const Term& b) { return cmp(a.m, b.m) > 0; });
  return f;
}

Poly PolyRing::add(const Poly& f, const Poly& g) const {
  Poly out;
  out.reserve(f.size() + g.size());
  size_t i = 0, j = 0;
  while (i < f.size() && j < g.size()) {
    int c = cmp(f[i].m, g[j].m);
    if (c > 0) {
      out.push_back(f[i++]);
    } else if (c < 0) {
      out.push_back(g[j++]);
    } else {
      Rat s = k_.add(f[i].c, g[j].c);
      if (s != 0) out.push_back(Term{f[i].m, s});
      ++i;
      ++j;
    }
  }
  while (i < f.size()) out.push_back(f[i++]);
  while (j < g.size()) out.push_back(g[j++]);
  return out;
}

Poly PolyRing::neg(const Poly& f) const {
  Poly out = f;
  for (auto& t : out) t.c = k_.neg(t.c);
  return out;
}

Poly PolyRing::sub(const Poly& f, const Poly& g) const { return add(f, neg(g)); }

Poly PolyRing::scale(const Poly& f, const Rat& c) const {
  Rat v = k_.normalize(c);
  if (v == 0) return {};
  Poly out;
  out.reserve(f.size());
  for (const auto& t : f) {
    Rat p = k_.mul(t.c, v);
    if (p != 0) out.push_back(Term{t.m, p});
  }
  return out;
}

Poly PolyRing::mul_term(const Poly& f, const Mono& m, const Rat& c) const {
  Poly out;
  out.reserve(f.size());
  int n = nvars();
  for (const auto& t : f) {
    Rat p = k_.mul(t.c, c);
    if (p != 0) out.push_back(Term{mono_mul(t.m, m, n), p});
  }
  return out;
}

Poly PolyRing::mul(const Poly& f, const Poly& g) const {
  if (f.empty() || g.empty()) return {};
  const Poly& a = f.size() <= g.size() ? f : g;
  const Poly& b = f.size() <= g.size() ? g : f;
  if (a.size() == 1) return mul_term(b, a[0].m, a[0].c);
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  int n = nvars();
  for (const auto& s : a)
    for (const auto& t : b) terms.push_back(Term{mono_mul(s.m, t.m, n), s.c * t.c});
  return from_terms(std::move(terms));
}

Poly PolyRing::pow(const Poly& f, unsigned e) const {
  Poly result = constant(1);
  Poly base = f;
  while (e) {
    if (e & 1u) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

Poly PolyRing::sub_mul_term(const Poly& f, const Rat& c, const Mono& m, const Poly& g) const {
  Poly out;
  out.reserve(f.size() + g.size());
  int n = nvars();
  size_t i = 0, j = 0;
  Mono gm;
  bool have = false;
  while (i < f.size() || j < g.size()) {
    if (j < g.size() && !have) {
      gm = mono_mul(g[j].m, m, n);
      have = true;
    }
    int c0 = (i >= f.size()) ? -1 : (j >= g.size()) ? 1 : cmp(f[i].m, gm);
    if (c0 > 0) {
      out.push_back(f[i++]);
    } else if (c0 < 0) {
      Rat v = k_.neg(k_.mul(c, g[j].c));
      if (v != 0) out.push_back(Term{gm, v});
      ++j;
      have = false;
    } else {
      Rat v = k_.sub(f[i].c, k_.mul(c, g[j].c));
      if (v != 0) out.push_back(Term{gm, v});
      ++i;
      ++j;
      have = false;
    }
  }
  return out;
}

Poly PolyRing::substitute(const Poly& f, const PolyRing& target, const std::vector<Poly>& images) const {
  int n = nvars();
  // Cache powers of each image.
  std::vector<std::vector<Poly>> powers(n);
  for (int i = 0; i < n; ++i) powers[i].push_back(target.constant(1));
  std::vector<Term> acc;
  Poly result;
  for (const auto& t : f) {
    Poly term = target.constant(t.c);
    for (int i = 0; i < n && !term.empty(); ++i) {
      int e = t.m.e[i];
      if (!e) continue;
      while (int(powers[i].size()) <= e) powers[i].push_back(target.mul(powers[i].back(), images[i]));
      term = target.mul(term, powers[i][e]);
    }
    result = target.add(result, term);
  }
  return result;
}

Poly PolyRing::transfer(const Poly& f, const PolyRing& target, const std::vector<int>& map) const {
  std::vector<Term> terms;
  terms.reserve(f.size());
  int n = nvars();
  for (const auto& t : f) {
    Mono m;
    for (int i = 0; i < n; ++i) {
      if (!t.m.e[i]) continue;
      if (map[i] < 0) throw MathError("variable " + names_[i] + " has no image in target ring");
      m.e[map[i]] = t.m.e[i];
    }
    terms.push_back(Term{m, target.coeffs().normalize(t.c)});
  }
  return target.from_terms(std::move(terms));
}

Poly PolyRing::transfer_by_name(const Poly& f, const PolyRing& target) const {
  std::vector<int> map(nvars());
  for (int i = 0; i < nvars(); ++i) map[i] = target.index_of(names_[i]);
  return transfer(f, target, map);
}

int PolyRing::degree(const Poly& f) const {
  int d = -1;
  for (const auto& t : f) d = std::max(d, t.m.degree(nvars()));
  return d;
}

int PolyRing::var_degree(const Poly& f, int var) const {
  int d = -1;
  for (const auto& t : f) d = std::max(d, int(t.m.e[var]));
  return d;
}

bool PolyRing::uses_only(const Poly& f, const std::vector<bool>& allowed) const {
  for (const auto& t : f)
    for (int i = 0; i < nvars(); ++i)
      if (t.m.e[i] && !allowed[i]) return false;
  return true;
}

Rat PolyRing::constant_term(const Poly& f) const {
  if (!f.empty() && mono_is_one(f.back().m, nvars())) return f.back().c;
  return Rat(0);
}

Poly PolyRing::normalize_lc(const Poly& f) const {
  if (f.empty()) return f;
  if (k_.is_field()) return scale(f, k_.inv(f[0].c));
  return f[0].c < 0 ? neg(f) : f;
}

Poly PolyRing::make_primitive(const Poly& f) const {
  if (f.empty() || k_.kind() == CoeffKind::PrimeField) return normalize_lc(f);
  Int l = 1, g = 0;
  for (const auto& t : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  for (const auto& t : f) {
    Int v = Int(t.c.get_num()) * (l / t.c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  Rat s(l, g);
  s.canonicalize();
  if (f[0].c < 0) s = -s;
  Poly out = f;
  for (auto& t : out) t.c *= s;
  return out;
}

Poly PolyRing::derivative(const Poly& f, int var) const {
  std::vector<Term> terms;
  for (const auto& t : f) {
    if (!t.m.e[var]) continue;
    Term u = t;
    u.c = k_.mul(u.c, Rat(int(u.m.e[var])));
    u.m.e[var] -= 1;
    if (u.c != 0) terms.push_back(u);
  }
  return from_terms(std::move(terms));
}

std::string format_rat(const Rat& c) { return c.get_str(); }

std::string PolyRing::format_mono(const Mono& m) const {
  std::string s;
  for (int i = 0; i < nvars(); ++i) {
    if (!m.e[i]) continue;
    if (!s.empty()) s += "*";
    s += names_[i];
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string PolyRing::format(const Poly& f) const {
  if (f.empty()) return "0";
  MonomialOrder gr = MonomialOrder::grevlex(nvars());
  Poly g = f;
  std::sort(g.begin(), g.end(), [&](const Term& a, const Term& b) { return gr.compare(a.m, b.m) > 0; });
  std::string s;
  bool first = true;
  for (const auto& t : g) {
    Rat c = t.c;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    bool one = mono_is_one(t.m, nvars());
    if (one) {
      s += format_rat(c);
    } else {
      if (c != 1) s += format_rat(c) + "*";
      s += format_mono(t.m);
    }
  }
  return s;
}

}  // namespace invk
