#include "lj/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "text.hpp"

namespace lj {

const Def* Program::find(const std::string& name) const {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

const Def& Program::get(const std::string& name) const {
  if (const Def* d = find(name)) return *d;
  throw std::out_of_range("no def named " + name);
}

namespace {

enum class Tok { Ident, Sym, Graded, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;   // identifier, symbol, or the graded keyword (box letbox case Box :_)
  std::string grade;  // Graded only
  int line = 0, col = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t;
      t.line = line_;
      t.col = col_;
      if (i_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      char c = s_[i_];
      if (ident_start(c)) {
        for (const char* kw : {"letbox_", "box_", "case_", "Box_"}) {
          std::string_view k(kw);
          // box_[g] and box_2 are graded; box_name is an identifier
          if (s_.substr(i_, k.size()) == k && i_ + k.size() < s_.size() &&
              (s_[i_ + k.size()] == '[' || std::isdigit(static_cast<unsigned char>(s_[i_ + k.size()])))) {
            advance(k.size());
            t.kind = Tok::Graded;
            t.text = std::string(k.substr(0, k.size() - 1));
            t.grade = grade_literal(t);
            break;
          }
        }
        if (t.kind == Tok::Graded) {
          out.push_back(t);
          continue;
        }
        std::size_t j = i_;
        while (j < s_.size() && ident_char(s_[j])) ++j;
        t.kind = Tok::Ident;
        t.text = std::string(s_.substr(i_, j - i_));
        advance(j - i_);
        out.push_back(t);
        continue;
      }
      if (c == ':' && i_ + 1 < s_.size() && s_[i_ + 1] == '_') {
        advance(2);
        t.kind = Tok::Graded;
        t.text = ":_";
        t.grade = grade_literal(t);
        out.push_back(t);
        continue;
      }
      for (const char* sym : {"->", "-o", "\\", ".", "(", ")", ":", ",", "=", "|", "+", "[", "]"}) {
        std::string_view k(sym);
        if (s_.substr(i_, k.size()) == k) {
          t.kind = Tok::Sym;
          t.text = std::string(k);
          advance(k.size());
          break;
        }
      }
      if (t.kind != Tok::Sym) throw ParseError(t.line, t.col, std::string("unexpected character '") + c + "'");
      out.push_back(t);
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && i_ < s_.size(); ++k, ++i_) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance(1);
      } else if (s_.substr(i_, 2) == "--") {
        while (i_ < s_.size() && s_[i_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  // [balanced] or [A-Za-z0-9]+(.[0-9]+)?
  std::string grade_literal(const Token& at) {
    if (i_ < s_.size() && s_[i_] == '[') {
      int depth = 0;
      std::size_t j = i_;
      for (; j < s_.size(); ++j) {
        if (s_[j] == '[') ++depth;
        if (s_[j] == ']' && --depth == 0) break;
      }
      if (j >= s_.size()) throw ParseError(at.line, at.col, "unterminated grade literal");
      std::string g(s_.substr(i_ + 1, j - i_ - 1));
      advance(j + 1 - i_);
      return std::string(text::trim(g));
    }
    std::size_t j = i_;
    while (j < s_.size() && std::isalnum(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) throw ParseError(at.line, at.col, "missing grade after " + at.text + "_");
    if (j + 1 < s_.size() && s_[j] == '.' && std::isdigit(static_cast<unsigned char>(s_[j + 1]))) {
      ++j;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    }
    std::string g(s_.substr(i_, j - i_));
    advance(j - i_);
    return g;
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

const std::vector<std::string> kReserved = {"let",  "in", "letbox", "case", "of",   "inl",  "inr",  "fold",
                                            "unfold", "tt", "ff",   "mu",   "def",  "type", "Void", "Unit",
                                            "Bool"};

bool reserved(const std::string& s) { return std::find(kReserved.begin(), kReserved.end(), s) != kReserved.end(); }

TermPtr bool_value(bool b) {
  TermPtr unit = Term::lam("u", Type::void_(), Term::var("u"));
  return Term::ann(b ? Term::inl(unit) : Term::inr(unit), bool_type());
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Program& prog) : t_(std::move(toks)), prog_(prog) {}

  bool at_end() const { return peek().kind == Tok::End; }

  void program() {
    while (!at_end()) {
      const Token& t = peek();
      if (is_ident("def"))
        def();
      else if (is_ident("type"))
        type_decl();
      else
        fail(t, "expected 'def' or 'type', got '" + t.text + "'");
    }
  }

  TermPtr whole_term() {
    TermPtr e = term();
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after term");
    return e;
  }

  TypePtr whole_type() {
    TypePtr t = type();
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after type");
    return t;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.col, msg); }

  const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (p_ < t_.size() - 1) ++p_;
    return t;
  }
  bool is_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
  bool is_ident(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }
  bool is_graded(const char* s) const { return peek().kind == Tok::Graded && peek().text == s; }

  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(peek(), std::string("expected '") + s + "', got '" + describe(peek()) + "'");
    next();
  }
  void expect_ident(const char* s) {
    if (!is_ident(s)) fail(peek(), std::string("expected '") + s + "', got '" + describe(peek()) + "'");
    next();
  }
  static std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : t.text; }

  std::string name() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || reserved(t.text)) fail(t, "expected a name, got '" + describe(t) + "'");
    return next().text;
  }

  Grade grade(const Token& t) {
    try {
      return prog_.algebra->parse(t.grade);
    } catch (const std::exception& e) {
      fail(t, e.what());
    }
  }

  // ---- declarations ----

  void type_decl() {
    expect_ident("type");
    const Token& at = peek();
    std::string n = name();
    expect_sym("=");
    TypePtr t = type();
    if (!type_closed(t)) fail(at, "type " + n + " is not closed");
    prog_.types[n] = t;
  }

  void def() {
    const Token& kw = next();
    Def d;
    d.line = kw.line;
    const Token& at = peek();
    d.name = name();
    if (prog_.find(d.name)) fail(at, "duplicate def " + d.name);
    if (is_sym("[")) {
      next();
      while (!is_sym("]")) {
        const Token& vt = peek();
        Binding b;
        b.name = name();
        if (env_find(d.ctx, b.name)) fail(vt, "duplicate variable " + b.name);
        if (is_graded(":_")) {
          b.grade = grade(next());
        } else {
          expect_sym(":");
          b.grade = prog_.algebra->one();
        }
        b.type = type();
        d.ctx.push_back(b);
        if (!is_sym(",")) break;
        next();
      }
      expect_sym("]");
    }
    expect_sym(":");
    d.type = type();
    expect_sym("=");
    for (const auto& b : d.ctx) scope_.push_back(b.name);
    d.term = term();
    scope_.clear();
    prog_.defs.push_back(d);
  }

  // ---- types ----

  TypePtr type() {
    if (is_ident("mu")) {
      next();
      std::string a = name();
      expect_sym(".");
      tscope_.push_back(a);
      TypePtr body = type();
      tscope_.pop_back();
      return Type::mu(a, body);
    }
    TypePtr left = sum_type();
    if (is_sym("-o") || is_sym("->")) {
      next();
      return Type::arrow(left, type());
    }
    return left;
  }

  TypePtr sum_type() {
    TypePtr left = prefix_type();
    if (is_sym("+")) {
      next();
      return Type::sum(left, sum_type());
    }
    return left;
  }

  TypePtr prefix_type() {
    if (is_graded("Box")) {
      Grade j = grade(next());
      return Type::box(j, prefix_type());
    }
    const Token& t = peek();
    if (is_sym("(")) {
      next();
      TypePtr inner = type();
      expect_sym(")");
      return inner;
    }
    if (t.kind != Tok::Ident) fail(t, "expected a type, got '" + describe(t) + "'");
    next();
    if (std::find(tscope_.rbegin(), tscope_.rend(), t.text) != tscope_.rend()) return Type::var(t.text);
    if (t.text == "Void") return Type::void_();
    if (t.text == "Unit") return unit_type();
    if (t.text == "Bool") return bool_type();
    if (auto it = prog_.types.find(t.text); it != prog_.types.end()) return it->second;
    fail(t, "unknown type " + t.text);
  }

  // ---- terms ----

  TermPtr term() {
    const Token& t = peek();
    if (is_ident("let")) {
      next();
      std::string x = name();
      expect_sym("=");
      TermPtr e = term();
      expect_ident("in");
      TermPtr f = bound(x, [&] { return term(); });
      return Term::let(x, e, f);
    }
    if (is_graded("letbox")) {
      Grade i = grade(next());
      std::string x = name();
      expect_sym("=");
      TermPtr v = value_arg();
      expect_ident("in");
      TermPtr e = bound(x, [&] { return term(); });
      return Term::letbox(i, x, v, e);
    }
    if (is_graded("case") || is_ident("case")) {
      const Token& kw = next();
      Grade j = kw.kind == Tok::Graded ? grade(kw) : prog_.algebra->one();
      TermPtr v = value_arg();
      expect_ident("of");
      expect_ident("inl");
      std::string x = name();
      expect_sym("->");
      TermPtr e1 = bound(x, [&] { return term(); });
      expect_sym("|");
      expect_ident("inr");
      std::string y = name();
      expect_sym("->");
      TermPtr e2 = bound(y, [&] { return term(); });
      return Term::case_(j, v, x, e1, y, e2);
    }
    if (is_ident("unfold")) {
      next();
      return Term::unfold(value_arg());
    }
    TermPtr f = prefix();
    if (starts_value()) {
      const Token& at = peek();
      TermPtr a = prefix();
      if (!is_value(f)) fail(t, "the function in an application must be a value");
      if (!is_value(a)) fail(at, "the argument in an application must be a value");
      if (starts_value()) fail(peek(), "applications take exactly one value argument; bind with let");
      return Term::app(f, a);
    }
    return f;
  }

  template <class Fn>
  TermPtr bound(const std::string& x, Fn&& fn) {
    scope_.push_back(x);
    TermPtr r = fn();
    scope_.pop_back();
    return r;
  }

  bool starts_value() const {
    const Token& t = peek();
    if (t.kind == Tok::Graded) return t.text == "box";
    if (t.kind == Tok::Sym) return t.text == "(" || t.text == "\\";
    if (t.kind != Tok::Ident) return false;
    return !reserved(t.text) || t.text == "fold" || t.text == "inl" || t.text == "inr" || t.text == "tt" ||
           t.text == "ff";
  }

  TermPtr value_arg() {
    const Token& t = peek();
    TermPtr v = prefix();
    if (!is_value(v)) fail(t, "expected a value");
    return v;
  }

  TermPtr prefix() {
    const Token& t = peek();
    if (is_sym("\\")) {
      next();
      std::string x = name();
      TypePtr ann;
      if (is_sym(":")) {
        next();
        ann = type();
      }
      expect_sym(".");
      TermPtr body = bound(x, [&] { return term(); });
      return Term::lam(x, ann, body);
    }
    if (is_ident("fold")) {
      next();
      return Term::fold(value_arg());
    }
    if (is_ident("inl")) {
      next();
      return Term::inl(value_arg());
    }
    if (is_ident("inr")) {
      next();
      return Term::inr(value_arg());
    }
    if (is_graded("box")) {
      Grade j = grade(next());
      return Term::box(j, value_arg());
    }
    if (is_ident("tt") || is_ident("ff")) return bool_value(next().text == "tt");
    if (is_sym("(")) {
      next();
      TermPtr e = term();
      if (is_sym(":")) {
        next();
        TypePtr ty = type();
        expect_sym(")");
        if (!is_value(e)) fail(t, "only values can be ascribed a type");
        return Term::ann(e, ty);
      }
      expect_sym(")");
      return e;
    }
    if (t.kind != Tok::Ident || reserved(t.text)) fail(t, "expected a term, got '" + describe(t) + "'");
    next();
    if (std::find(scope_.rbegin(), scope_.rend(), t.text) != scope_.rend()) return Term::var(t.text);
    if (const Def* d = prog_.find(t.text)) {
      if (!d->ctx.empty()) fail(t, "def " + d->name + " has free variables and cannot be referenced");
      return is_value(d->term) ? Term::ann(d->term, d->type) : d->term;
    }
    return Term::var(t.text);
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
  Program& prog_;
  std::vector<std::string> scope_;
  std::vector<std::string> tscope_;
};

// Splits off the pragma; returns the algebra name and blanks its line so positions stay.
std::string take_pragma(std::string& text) {
  std::size_t start = 0;
  int line = 1;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t end = nl == std::string::npos ? text.size() : nl;
    auto l = text::trim(text::strip_comment(std::string_view(text).substr(start, end - start)));
    if (!l.empty()) {
      if (!text::starts_with(l, "#algebra")) throw ParseError(line, 1, "expected '#algebra <name>' first");
      std::string name(text::trim(l.substr(8)));
      if (name.empty()) throw ParseError(line, 1, "missing algebra name");
      std::fill(text.begin() + static_cast<long>(start), text.begin() + static_cast<long>(end), ' ');
      return name;
    }
    if (nl == std::string::npos) break;
    start = nl + 1;
    ++line;
  }
  throw ParseError(1, 1, "expected '#algebra <name>' first");
}

int pragma_line(const std::string& original) {
  int line = 1;
  for (auto l : text::lines(original)) {
    if (!text::trim(text::strip_comment(l)).empty()) return line;
    ++line;
  }
  return 1;
}

}  // namespace

Program parse_program(std::string_view text, const std::filesystem::path& base_dir) {
  std::string body(text);
  std::string name = take_pragma(body);
  Program prog;
  try {
    prog.algebra = make_algebra(name, base_dir);
  } catch (const std::exception& e) {
    throw ParseError(pragma_line(std::string(text)), 1, "unknown algebra '" + name + "': " + e.what());
  }
  Parser p(Lexer(body).run(), prog);
  p.program();
  return prog;
}

Program load_program(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str(), file.parent_path());
}

TermPtr parse_term(const Program& prog, std::string_view text) {
  Program copy = prog;
  Parser p(Lexer(text).run(), copy);
  return p.whole_term();
}

TypePtr parse_type(const Program& prog, std::string_view text) {
  Program copy = prog;
  Parser p(Lexer(text).run(), copy);
  return p.whole_type();
}

Program empty_program(std::string_view algebra) { return parse_program("#algebra " + std::string(algebra)); }

}  // namespace lj
