#include "qmap/field.hpp"

#include <cctype>

namespace qmap {

namespace {

class LiteralParser {
 public:
  LiteralParser(const std::string& s, TowerCtx& ctx) : s_(s), ctx_(ctx) {}

  TowerElem parse() {
    TowerElem v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return v;
  }

 private:
  const std::string& s_;
  TowerCtx& ctx_;
  size_t pos_ = 0;

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

  TowerElem expr() {
    TowerElem v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  TowerElem term() {
    TowerElem v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        size_t at = pos_;
        TowerElem d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        v /= d;
      } else {
        return v;
      }
    }
  }

  TowerElem unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  TowerElem power() {
    TowerElem b = primary();
    if (eat('^')) {
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", pos_);
      unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      if (e > 64) throw ParseError("exponent too large", start);
      return b.pow((unsigned)e);
    }
    return b;
  }

  TowerElem primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      TowerElem v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
      TowerElem v(Rational(Integer(s_.substr(start, pos_ - start))));
      // 3i reads as 3*i
      if (pos_ < s_.size() && s_[pos_] == 'i' && !ident_continues(pos_ + 1)) {
        ++pos_;
        v *= TowerElem::i();
      }
      return v;
    }
    if (std::isalpha((unsigned char)c)) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum((unsigned char)s_[pos_])) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "i") return TowerElem::i();
      if (id == "sqrt") {
        if (!eat('(')) throw ParseError("expected '(' after sqrt", pos_);
        TowerElem arg = expr();
        if (!eat(')')) throw ParseError("expected ')'", pos_);
        auto r = sqrt(arg, ctx_);
        ctx_ = r.ctx;
        return r.value;
      }
      throw ParseError("unknown identifier '" + id + "'", start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  bool ident_continues(size_t p) const { return p < s_.size() && std::isalnum((unsigned char)s_[p]); }
};

}  // namespace

TowerElem parse_literal(const std::string& text, TowerCtx& ctx) { return LiteralParser(text, ctx).parse(); }

}  // namespace qmap
