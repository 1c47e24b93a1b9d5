#include "lj/syntax.hpp"

#include <sstream>
#include <utility>

namespace lj {

// ---- types ----

TypePtr Type::var(std::string n) {
  auto t = std::make_shared<Type>();
  t->kind = Kind::Var;
  t->name = std::move(n);
  return t;
}

TypePtr Type::arrow(TypePtr a, TypePtr b) {
  auto t = std::make_shared<Type>();
  t->kind = Kind::Arrow;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

TypePtr Type::mu(std::string n, TypePtr body) {
  auto t = std::make_shared<Type>();
  t->kind = Kind::Mu;
  t->name = std::move(n);
  t->a = std::move(body);
  return t;
}

TypePtr Type::box(Grade j, TypePtr body) {
  auto t = std::make_shared<Type>();
  t->kind = Kind::Box;
  t->grade = std::move(j);
  t->a = std::move(body);
  return t;
}

TypePtr Type::sum(TypePtr a, TypePtr b) {
  auto t = std::make_shared<Type>();
  t->kind = Kind::Sum;
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

TypePtr Type::void_() {
  static const TypePtr v = std::make_shared<Type>();
  return v;
}

TypePtr unit_type() {
  static const TypePtr u = Type::arrow(Type::void_(), Type::void_());
  return u;
}

TypePtr bool_type() {
  static const TypePtr b = Type::sum(unit_type(), unit_type());
  return b;
}

namespace {

bool closed_under(const TypePtr& t, std::vector<std::string>& bound) {
  switch (t->kind) {
    case Type::Kind::Var:
      for (const auto& b : bound)
        if (b == t->name) return true;
      return false;
    case Type::Kind::Mu: {
      bound.push_back(t->name);
      bool ok = closed_under(t->a, bound);
      bound.pop_back();
      return ok;
    }
    case Type::Kind::Void:
      return true;
    case Type::Kind::Box:
      return closed_under(t->a, bound);
    case Type::Kind::Arrow:
    case Type::Kind::Sum:
      return closed_under(t->a, bound) && closed_under(t->b, bound);
  }
  return false;
}

}  // namespace

bool type_closed(const TypePtr& t) {
  std::vector<std::string> bound;
  return closed_under(t, bound);
}

TypePtr type_subst(const TypePtr& t, const std::string& a, const TypePtr& s) {
  switch (t->kind) {
    case Type::Kind::Var:
      return t->name == a ? s : t;
    case Type::Kind::Void:
      return t;
    case Type::Kind::Mu:
      return t->name == a ? t : Type::mu(t->name, type_subst(t->a, a, s));
    case Type::Kind::Box:
      return Type::box(t->grade, type_subst(t->a, a, s));
    case Type::Kind::Arrow:
      return Type::arrow(type_subst(t->a, a, s), type_subst(t->b, a, s));
    case Type::Kind::Sum:
      return Type::sum(type_subst(t->a, a, s), type_subst(t->b, a, s));
  }
  return t;
}

TypePtr unroll(const TypePtr& mu) { return type_subst(mu->a, mu->name, mu); }

namespace {

using Binders = std::vector<std::pair<std::string, std::string>>;

bool teq(const GradeAlgebra& A, const TypePtr& s, const TypePtr& t, Binders& env) {
  if (s->kind != t->kind) return false;
  switch (s->kind) {
    case Type::Kind::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == s->name || it->second == t->name) return it->first == s->name && it->second == t->name;
      }
      return s->name == t->name;
    case Type::Kind::Void:
      return true;
    case Type::Kind::Mu: {
      env.emplace_back(s->name, t->name);
      bool ok = teq(A, s->a, t->a, env);
      env.pop_back();
      return ok;
    }
    case Type::Kind::Box:
      return A.equiv(s->grade, t->grade) && teq(A, s->a, t->a, env);
    case Type::Kind::Arrow:
    case Type::Kind::Sum:
      return teq(A, s->a, t->a, env) && teq(A, s->b, t->b, env);
  }
  return false;
}

std::string grade_text(const GradeAlgebra& A, const Grade& g) { return "[" + A.show(g) + "]"; }

bool is_unit(const TypePtr& t) {
  return t->kind == Type::Kind::Arrow && t->a->kind == Type::Kind::Void && t->b->kind == Type::Kind::Void;
}

void show_ty(const GradeAlgebra& A, const TypePtr& t, int prec, std::ostream& os) {
  // the parser's names for Void -o Void and Unit + Unit
  if (is_unit(t)) {
    os << "Unit";
    return;
  }
  if (t->kind == Type::Kind::Sum && is_unit(t->a) && is_unit(t->b)) {
    os << "Bool";
    return;
  }
  switch (t->kind) {
    case Type::Kind::Var:
      os << t->name;
      return;
    case Type::Kind::Void:
      os << "Void";
      return;
    case Type::Kind::Mu:
      if (prec > 0) os << "(";
      os << "mu " << t->name << ". ";
      show_ty(A, t->a, 0, os);
      if (prec > 0) os << ")";
      return;
    case Type::Kind::Arrow:
      if (prec > 0) os << "(";
      show_ty(A, t->a, 1, os);
      os << " -o ";
      show_ty(A, t->b, 0, os);
      if (prec > 0) os << ")";
      return;
    case Type::Kind::Sum:
      if (prec > 1) os << "(";
      show_ty(A, t->a, 2, os);
      os << " + ";
      show_ty(A, t->b, 1, os);
      if (prec > 1) os << ")";
      return;
    case Type::Kind::Box:
      os << "Box_" << grade_text(A, t->grade) << " ";
      show_ty(A, t->a, 2, os);
      return;
  }
}

}  // namespace

bool type_equal(const GradeAlgebra& A, const TypePtr& s, const TypePtr& t) {
  Binders env;
  return teq(A, s, t, env);
}

std::string show_type(const GradeAlgebra& A, const TypePtr& t) {
  std::ostringstream os;
  show_ty(A, t, 0, os);
  return os.str();
}

// ---- terms ----

namespace {

std::shared_ptr<Term> node(Term::Kind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

}  // namespace

TermPtr Term::var(std::string x) {
  auto t = node(Kind::Var);
  t->x = std::move(x);
  return t;
}

TermPtr Term::lam(std::string x, TypePtr ann, TermPtr body) {
  auto t = node(Kind::Lam);
  t->x = std::move(x);
  t->ty = std::move(ann);
  t->a = std::move(body);
  return t;
}

TermPtr Term::fold(TermPtr v) {
  auto t = node(Kind::Fold);
  t->a = std::move(v);
  return t;
}

TermPtr Term::box(Grade j, TermPtr v) {
  auto t = node(Kind::Box);
  t->grade = std::move(j);
  t->a = std::move(v);
  return t;
}

TermPtr Term::inl(TermPtr v) {
  auto t = node(Kind::Inl);
  t->a = std::move(v);
  return t;
}

TermPtr Term::inr(TermPtr v) {
  auto t = node(Kind::Inr);
  t->a = std::move(v);
  return t;
}

TermPtr Term::ann(TermPtr v, TypePtr ty) {
  auto t = node(Kind::Ann);
  t->a = std::move(v);
  t->ty = std::move(ty);
  return t;
}

TermPtr Term::app(TermPtr v, TermPtr w) {
  auto t = node(Kind::App);
  t->a = std::move(v);
  t->b = std::move(w);
  return t;
}

TermPtr Term::unfold(TermPtr v) {
  auto t = node(Kind::Unfold);
  t->a = std::move(v);
  return t;
}

TermPtr Term::let(std::string x, TermPtr e, TermPtr f) {
  auto t = node(Kind::Let);
  t->x = std::move(x);
  t->a = std::move(e);
  t->b = std::move(f);
  return t;
}

TermPtr Term::letbox(Grade i, std::string x, TermPtr v, TermPtr e) {
  auto t = node(Kind::LetBox);
  t->grade = std::move(i);
  t->x = std::move(x);
  t->a = std::move(v);
  t->b = std::move(e);
  return t;
}

TermPtr Term::case_(Grade j, TermPtr v, std::string x, TermPtr e1, std::string y, TermPtr e2) {
  auto t = node(Kind::Case);
  t->grade = std::move(j);
  t->a = std::move(v);
  t->x = std::move(x);
  t->b = std::move(e1);
  t->y = std::move(y);
  t->c = std::move(e2);
  return t;
}

bool is_value(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Lam:
      return true;
    case Term::Kind::Fold:
    case Term::Kind::Box:
    case Term::Kind::Inl:
    case Term::Kind::Inr:
    case Term::Kind::Ann:
      return is_value(t->a);
    default:
      return false;
  }
}

namespace {

void fv(const TermPtr& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto under = [&](const std::string& x, const TermPtr& body) {
    bound.push_back(x);
    fv(body, bound, out);
    bound.pop_back();
  };
  switch (t->kind) {
    case Term::Kind::Var: {
      for (const auto& b : bound)
        if (b == t->x) return;
      out.insert(t->x);
      return;
    }
    case Term::Kind::Lam:
      under(t->x, t->a);
      return;
    case Term::Kind::Fold:
    case Term::Kind::Box:
    case Term::Kind::Inl:
    case Term::Kind::Inr:
    case Term::Kind::Ann:
    case Term::Kind::Unfold:
      fv(t->a, bound, out);
      return;
    case Term::Kind::App:
      fv(t->a, bound, out);
      fv(t->b, bound, out);
      return;
    case Term::Kind::Let:
    case Term::Kind::LetBox:
      fv(t->a, bound, out);
      under(t->x, t->b);
      return;
    case Term::Kind::Case:
      fv(t->a, bound, out);
      under(t->x, t->b);
      under(t->y, t->c);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  fv(t, bound, out);
  return out;
}

bool closed(const TermPtr& t) { return free_vars(t).empty(); }

namespace {

TermPtr subst(const TermPtr& e, const std::string& x, const TermPtr& v) {
  if (e->kind == Term::Kind::Var) return e->x == x ? v : e;
  auto sub = [&](const TermPtr& t, bool binds) { return t && !binds ? subst(t, x, v) : t; };
  bool a_binds = e->kind == Term::Kind::Lam && e->x == x;
  bool bound = e->kind == Term::Kind::Let || e->kind == Term::Kind::LetBox || e->kind == Term::Kind::Case;
  TermPtr a = sub(e->a, a_binds);
  TermPtr b = sub(e->b, bound && e->x == x);
  TermPtr c = sub(e->c, bound && e->y == x);
  // unchanged subtrees are shared
  if (a == e->a && b == e->b && c == e->c) return e;
  auto t = std::make_shared<Term>();
  t->kind = e->kind;
  t->x = e->x;
  t->y = e->y;
  t->ty = e->ty;
  t->grade = e->grade;
  t->a = std::move(a);
  t->b = std::move(b);
  t->c = std::move(c);
  return t;
}

}  // namespace

TermPtr substitute(const TermPtr& e, const std::string& x, const TermPtr& v) { return subst(e, x, v); }

namespace {

bool atomic(const TermPtr& t) { return t->kind == Term::Kind::Var || t->kind == Term::Kind::Ann; }

void show_tm(const GradeAlgebra& A, const TermPtr& t, std::ostream& os);

void show_atom(const GradeAlgebra& A, const TermPtr& t, std::ostream& os) {
  if (atomic(t)) return show_tm(A, t, os);
  os << "(";
  show_tm(A, t, os);
  os << ")";
}

void show_tm(const GradeAlgebra& A, const TermPtr& t, std::ostream& os) {
  switch (t->kind) {
    case Term::Kind::Var:
      os << t->x;
      return;
    case Term::Kind::Lam:
      os << "\\" << t->x;
      if (t->ty) os << " : " << show_type(A, t->ty);
      os << ". ";
      show_tm(A, t->a, os);
      return;
    case Term::Kind::Fold:
      os << "fold ";
      show_atom(A, t->a, os);
      return;
    case Term::Kind::Box:
      os << "box_" << grade_text(A, t->grade) << " ";
      show_atom(A, t->a, os);
      return;
    case Term::Kind::Inl:
    case Term::Kind::Inr:
      os << (t->kind == Term::Kind::Inl ? "inl " : "inr ");
      show_atom(A, t->a, os);
      return;
    case Term::Kind::Ann:
      os << "(";
      show_tm(A, t->a, os);
      os << " : " << show_type(A, t->ty) << ")";
      return;
    case Term::Kind::App:
      show_atom(A, t->a, os);
      os << " ";
      show_atom(A, t->b, os);
      return;
    case Term::Kind::Unfold:
      os << "unfold ";
      show_atom(A, t->a, os);
      return;
    case Term::Kind::Let:
      os << "let " << t->x << " = ";
      show_tm(A, t->a, os);
      os << " in ";
      show_tm(A, t->b, os);
      return;
    case Term::Kind::LetBox:
      os << "letbox_" << grade_text(A, t->grade) << " " << t->x << " = ";
      show_atom(A, t->a, os);
      os << " in ";
      show_tm(A, t->b, os);
      return;
    case Term::Kind::Case:
      os << "case_" << grade_text(A, t->grade) << " ";
      show_atom(A, t->a, os);
      os << " of inl " << t->x << " -> ";
      show_tm(A, t->b, os);
      os << " | inr " << t->y << " -> ";
      show_tm(A, t->c, os);
      return;
  }
}

void canon(const GradeAlgebra& A, const TermPtr& t, std::vector<std::string>& env, std::ostream& os) {
  auto under = [&](const std::string& x, const TermPtr& body) {
    env.push_back(x);
    canon(A, body, env, os);
    env.pop_back();
  };
  switch (t->kind) {
    case Term::Kind::Var: {
      for (std::size_t k = env.size(); k-- > 0;)
        if (env[k] == t->x) {
          os << "#" << env.size() - 1 - k;
          return;
        }
      os << t->x;
      return;
    }
    case Term::Kind::Lam:
      os << "L(";
      under(t->x, t->a);
      os << ")";
      return;
    case Term::Kind::Ann:
      canon(A, t->a, env, os);
      return;
    case Term::Kind::Fold:
    case Term::Kind::Inl:
    case Term::Kind::Inr:
    case Term::Kind::Unfold:
      os << (t->kind == Term::Kind::Fold ? "F(" : t->kind == Term::Kind::Inl ? "I(" : t->kind == Term::Kind::Inr ? "J(" : "U(");
      canon(A, t->a, env, os);
      os << ")";
      return;
    case Term::Kind::Box:
      os << "B" << A.show(t->grade) << "(";
      canon(A, t->a, env, os);
      os << ")";
      return;
    case Term::Kind::App:
      os << "A(";
      canon(A, t->a, env, os);
      os << ",";
      canon(A, t->b, env, os);
      os << ")";
      return;
    case Term::Kind::Let:
      os << "T(";
      canon(A, t->a, env, os);
      os << ",";
      under(t->x, t->b);
      os << ")";
      return;
    case Term::Kind::LetBox:
      os << "X" << A.show(t->grade) << "(";
      canon(A, t->a, env, os);
      os << ",";
      under(t->x, t->b);
      os << ")";
      return;
    case Term::Kind::Case:
      os << "C" << A.show(t->grade) << "(";
      canon(A, t->a, env, os);
      os << ",";
      under(t->x, t->b);
      os << ",";
      under(t->y, t->c);
      os << ")";
      return;
  }
}

bool aeq(const GradeAlgebra& A, const TermPtr& s, const TermPtr& t, Binders& env) {
  if (s->kind != t->kind) return false;
  auto under = [&](const std::string& x, const std::string& y, const TermPtr& p, const TermPtr& q) {
    env.emplace_back(x, y);
    bool ok = aeq(A, p, q, env);
    env.pop_back();
    return ok;
  };
  auto ty_eq = [&](const TypePtr& a, const TypePtr& b) {
    if (!a || !b) return !a && !b;
    return type_equal(A, a, b);
  };
  switch (s->kind) {
    case Term::Kind::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == s->x || it->second == t->x) return it->first == s->x && it->second == t->x;
      return s->x == t->x;
    case Term::Kind::Lam:
      return ty_eq(s->ty, t->ty) && under(s->x, t->x, s->a, t->a);
    case Term::Kind::Ann:
      return ty_eq(s->ty, t->ty) && aeq(A, s->a, t->a, env);
    case Term::Kind::Fold:
    case Term::Kind::Inl:
    case Term::Kind::Inr:
    case Term::Kind::Unfold:
      return aeq(A, s->a, t->a, env);
    case Term::Kind::Box:
      return A.equiv(s->grade, t->grade) && aeq(A, s->a, t->a, env);
    case Term::Kind::App:
      return aeq(A, s->a, t->a, env) && aeq(A, s->b, t->b, env);
    case Term::Kind::Let:
      return aeq(A, s->a, t->a, env) && under(s->x, t->x, s->b, t->b);
    case Term::Kind::LetBox:
      return A.equiv(s->grade, t->grade) && aeq(A, s->a, t->a, env) && under(s->x, t->x, s->b, t->b);
    case Term::Kind::Case:
      return A.equiv(s->grade, t->grade) && aeq(A, s->a, t->a, env) && under(s->x, t->x, s->b, t->b) &&
             under(s->y, t->y, s->c, t->c);
  }
  return false;
}

}  // namespace

std::string show_term(const GradeAlgebra& A, const TermPtr& t) {
  std::ostringstream os;
  show_tm(A, t, os);
  return os.str();
}

std::string canonical(const GradeAlgebra& A, const TermPtr& t) {
  std::ostringstream os;
  std::vector<std::string> env;
  canon(A, t, env, os);
  return os.str();
}

bool alpha_equal(const GradeAlgebra& A, const TermPtr& s, const TermPtr& t) {
  Binders env;
  return aeq(A, s, t, env);
}

std::size_t term_size(const TermPtr& t) {
  if (!t) return 0;
  return 1 + term_size(t->a) + term_size(t->b) + term_size(t->c);
}

}  // namespace lj
