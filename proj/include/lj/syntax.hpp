#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lj/grades.hpp"

namespace lj {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

// a | t -o s | mu a. t | Box_j t | t + s | Void
struct Type {
  enum class Kind { Var, Arrow, Mu, Box, Sum, Void };
  Kind kind = Kind::Void;
  std::string name;  // Var, and the Mu binder
  TypePtr a, b;
  Grade grade;  // Box

  static TypePtr var(std::string n);
  static TypePtr arrow(TypePtr a, TypePtr b);
  static TypePtr mu(std::string n, TypePtr body);
  static TypePtr box(Grade j, TypePtr t);
  static TypePtr sum(TypePtr a, TypePtr b);
  static TypePtr void_();
};

// Unit = Void -o Void, Bool = Unit + Unit
TypePtr unit_type();
TypePtr bool_type();

bool type_closed(const TypePtr& t);
// t[s/a]; s is closed so no capture can happen
TypePtr type_subst(const TypePtr& t, const std::string& a, const TypePtr& s);
// mu a. t  ->  t[mu a. t / a]
TypePtr unroll(const TypePtr& mu);
// alpha-equivalence, box grades compared up to leq-equivalence
bool type_equal(const GradeAlgebra& A, const TypePtr& s, const TypePtr& t);
std::string show_type(const GradeAlgebra& A, const TypePtr& t);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Values: x, \x. e, fold v, box_j v, inl v, inr v, (v : T).
// Terms: v w, unfold v, let x = e in f, letbox_i x = v in e,
// case_j v of inl x -> e1 | inr y -> e2.
struct Term {
  enum class Kind { Var, Lam, Fold, Box, Inl, Inr, Ann, App, Unfold, Let, LetBox, Case };
  Kind kind = Kind::Var;
  std::string x, y;  // variable name or binders
  TypePtr ty;        // optional Lam annotation; Ann type
  Grade grade;       // Box j, LetBox i, Case j
  TermPtr a, b, c;

  static TermPtr var(std::string x);
  static TermPtr lam(std::string x, TypePtr ann, TermPtr body);
  static TermPtr fold(TermPtr v);
  static TermPtr box(Grade j, TermPtr v);
  static TermPtr inl(TermPtr v);
  static TermPtr inr(TermPtr v);
  static TermPtr ann(TermPtr v, TypePtr t);
  static TermPtr app(TermPtr v, TermPtr w);
  static TermPtr unfold(TermPtr v);
  static TermPtr let(std::string x, TermPtr e, TermPtr f);
  static TermPtr letbox(Grade i, std::string x, TermPtr v, TermPtr e);
  static TermPtr case_(Grade j, TermPtr v, std::string x, TermPtr e1, std::string y, TermPtr e2);
};

bool is_value(const TermPtr& t);
std::set<std::string> free_vars(const TermPtr& t);
bool closed(const TermPtr& t);

// e[v/x] for a closed value v; only free occurrences of x are replaced
TermPtr substitute(const TermPtr& e, const std::string& x, const TermPtr& v);

// Concrete syntax accepted by the parser.
std::string show_term(const GradeAlgebra& A, const TermPtr& t);
// Nameless rendering without annotations: equal for alpha-equivalent terms that differ
// only in binder names and type annotations.
std::string canonical(const GradeAlgebra& A, const TermPtr& t);
// alpha-equivalence including annotations
bool alpha_equal(const GradeAlgebra& A, const TermPtr& s, const TermPtr& t);

// number of constructors
std::size_t term_size(const TermPtr& t);

}  // namespace lj
