#include "qmap/expr.hpp"

#include <cctype>

namespace qmap {

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& s, TowerCtx& ctx) : s_(s), ctx_(ctx) {}

  Poly parse() {
    Poly v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return v;
  }

 private:
  const std::string& s_;
  TowerCtx& ctx_;
  size_t pos_ = 0;
  int depth_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    if (++depth_ > 200) throw ParseError("expression nested too deeply", pos_);
    Poly v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else break;
    }
    --depth_;
    return v;
  }

  Poly term() {
    Poly v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        skip();
        size_t at = pos_;
        Poly d = unary();
        if (!d.is_constant()) throw ParseError("division by a non-constant", at);
        if (d.is_zero()) throw ParseError("division by zero", at);
        v = v.scaled(d.constant_term().inv());
      } else {
        return v;
      }
    }
  }

  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Poly power() {
    Poly b = primary();
    if (eat('^')) {
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      if (start == pos_) throw ParseError("expected a non-negative integer exponent", pos_);
      if (pos_ - start > 3) throw ParseError("exponent too large", start);
      unsigned e = (unsigned)std::stoul(s_.substr(start, pos_ - start));
      if (e > 64) throw ParseError("exponent too large", start);
      if (b.total_degree() * (int)e > 64) throw ParseError("degree too large", start);
      return b.pow(e);
    }
    return b;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      if (pos_ - start > 4000) throw ParseError("numeral too long", start);
      TowerElem v(Rational(Integer(s_.substr(start, pos_ - start))));
      if (pos_ < s_.size() && s_[pos_] == 'i' && !(pos_ + 1 < s_.size() && std::isalnum((unsigned char)s_[pos_ + 1]))) {
        ++pos_;
        v *= TowerElem::i();
      }
      return Poly(v);
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "i") return Poly(TowerElem::i());
      if (id == "sqrt") {
        if (!eat('(')) throw ParseError("expected '(' after sqrt", pos_);
        skip();
        size_t at = pos_;
        Poly arg = expr();
        if (!eat(')')) throw ParseError("expected ')'", pos_);
        if (!arg.is_constant()) throw ParseError("sqrt of a non-constant", at);
        try {
          auto r = sqrt(arg.constant_term(), ctx_);
          ctx_ = r.ctx;
          return Poly(r.value);
        } catch (const FieldError& e) {
          throw ParseError(e.what(), at);
        }
      }
      Var v;
      if (var_from_name(id, v)) return Poly::var(v);
      throw ParseError("unknown identifier '" + id + "'", start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }
};

}  // namespace

Poly parse_poly(const std::string& text, TowerCtx& ctx) { return PolyParser(text, ctx).parse(); }

Poly parse_poly(const std::string& text) {
  TowerCtx ctx;
  return parse_poly(text, ctx);
}

QuadMap parse_map(const std::string& f, const std::string& g, TowerCtx& ctx) {
  Poly pf = parse_poly(f, ctx);
  Poly pg = parse_poly(g, ctx);
  auto check = [](const Poly& p, const std::string& which) {
    if (p.used() & ~kXYZ) throw ParseError(which + " uses variables other than x, y, z", 0);
    if (p.total_degree() > 2) throw ParseError(which + " has degree " + std::to_string(p.total_degree()) + " > 2", 0);
  };
  check(pf, "first component");
  check(pg, "second component");
  return QuadMap(pf, pg);
}

QuadMap parse_map(const std::string& f, const std::string& g) {
  TowerCtx ctx;
  return parse_map(f, g, ctx);
}

SourceAut parse_source(const std::string& x, const std::string& y, const std::string& z, TowerCtx& ctx) {
  return SourceAut::from_polys(parse_poly(x, ctx), parse_poly(y, ctx), parse_poly(z, ctx));
}

TargetAut parse_target(const std::string& p, const std::string& q, TowerCtx& ctx) {
  return TargetAut::from_polys(parse_poly(p, ctx), parse_poly(q, ctx));
}

}  // namespace qmap
