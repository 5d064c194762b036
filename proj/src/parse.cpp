#include "invk/parse.hpp"

#include <cctype>

namespace invk {

namespace {

class Parser {
 public:
  Parser(const std::string& s, const PolyRing& r) : s_(s), r_(r) {}

  Poly run() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("parse error at position " + std::to_string(pos_) + " in \"" + s_ + "\": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Int integer() {
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer literal");
    return Int(s_.substr(start, pos_ - start));
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (eat('+'))
        acc = r_.add(acc, term());
      else if (eat('-'))
        acc = r_.sub(acc, term());
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = r_.mul(acc, unary());
      } else if (eat('/')) {
        Int d = integer();
        if (d == 0) fail("division by zero");
        if (!r_.coeffs().is_field()) {
          for (auto& t : acc) {
            if (!mpz_divisible_p(t.c.get_num_mpz_t(), d.get_mpz_t())) fail("division leaves ZZ");
            t.c = Rat(Int(t.c.get_num() / d));
          }
        } else {
          acc = r_.scale(acc, Rat(Int(1), d));
        }
      } else {
        skip();
        if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' || s_[pos_] == '_'))
          fail("implicit multiplication is not allowed");
        return acc;
      }
    }
  }

  Poly unary() {
    if (eat('-')) return r_.neg(unary());
    if (eat('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      Int e;
      if (eat('(')) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == '-') fail("exponent must be a nonnegative integer");
        e = integer();
        if (!eat(')')) fail("expected ')'");
      } else {
        skip();
        if (pos_ < s_.size() && s_[pos_] == '-') fail("exponent must be a nonnegative integer");
        e = integer();
      }
      if (e > 65535) fail("exponent too large");
      base = r_.pow(base, unsigned(e.get_ui()));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int v = integer();
      return r_.constant(Rat(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int idx = r_.index_of(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return r_.variable(idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const PolyRing& r_;
  size_t pos_ = 0;
};

OrderRule::Kind kind_of(const std::string& k) {
  if (k == "lex") return OrderRule::Lex;
  if (k == "grevlex") return OrderRule::GrevLex;
  if (k == "glex") return OrderRule::GLex;
  throw InputError("unknown order kind '" + k + "'");
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Poly parse_poly(const std::string& text, const PolyRing& ring) { return Parser(text, ring).run(); }

MonomialOrder parse_order(const std::string& spec, const std::vector<std::string>& names) {
  int n = int(names.size());
  std::string s = trim(spec);
  if (s == "grevlex") return MonomialOrder::grevlex(n);
  if (s == "lex") return MonomialOrder::lex(n);
  if (s == "glex") return MonomialOrder::glex(n);
  std::vector<OrderRule> rules;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t semi = s.find(';', pos);
    std::string block = trim(s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
    pos = semi == std::string::npos ? s.size() : semi + 1;
    if (block.empty()) continue;
    size_t lp = block.find('('), rp = block.rfind(')');
    if (lp == std::string::npos || rp == std::string::npos || rp < lp) throw InputError("malformed order block '" + block + "'");
    OrderRule r;
    r.kind = kind_of(trim(block.substr(0, lp)));
    std::string inner = block.substr(lp + 1, rp - lp - 1);
    size_t q = 0;
    while (q <= inner.size()) {
      size_t comma = inner.find(',', q);
      std::string v = trim(inner.substr(q, comma == std::string::npos ? std::string::npos : comma - q));
      q = comma == std::string::npos ? inner.size() + 1 : comma + 1;
      if (v.empty()) continue;
      int idx = -1;
      for (int i = 0; i < n; ++i)
        if (names[i] == v) idx = i;
      if (idx < 0) throw InputError("order references unknown variable '" + v + "'");
      r.vars.push_back(idx);
    }
    rules.push_back(r);
  }
  return MonomialOrder(n, rules);
}

}  // namespace invk
