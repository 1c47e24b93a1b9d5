#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lj/grades.hpp"
#include "lj/report.hpp"
#include "lj/syntax.hpp"

namespace lj {

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// x :_g T
struct Binding {
  std::string name;
  TypePtr type;
  Grade grade;
};

// Ordered, names distinct.
using TypeEnv = std::vector<Binding>;

// variable -> grade; absent means zero
using Usage = std::map<std::string, Grade>;

const Binding* env_find(const TypeEnv& env, const std::string& x);

// Pointwise Gamma + Delta, keeping variables that occur on one side only. Throws
// TypeError when a shared variable has different types.
TypeEnv env_add(const GradeAlgebra& A, const TypeEnv& g, const TypeEnv& d);
// j * Gamma
TypeEnv env_scale(const GradeAlgebra& A, const Grade& j, const TypeEnv& g);

Grade usage_of(const GradeAlgebra& A, const Usage& u, const std::string& x);
Usage usage_add(const GradeAlgebra& A, const Usage& u, const Usage& v);
Usage usage_scale(const GradeAlgebra& A, const Grade& j, const Usage& u);
std::string show_usage(const GradeAlgebra& A, const Usage& u);

struct Typing {
  TypePtr type;
  Usage usage;
};

// One node of the algorithmic derivation, with the synthesized usage as context.
// `grade` is the binder grade the rule assigns: 1 for lam, U_f(x) for let, i*j for
// letbox, j for case.
struct Derivation {
  std::string rule;  // var lam app val let fold unfold box letbox inl inr case ann
  TermPtr term;
  TypePtr type;
  Usage ctx;
  Grade grade;
  std::vector<Derivation> premises;
};

// Synthesizes a type (checking against `expected` when given) and the usage of every
// free variable. Binder side conditions are checked as order constraints. Declared
// grades of `env` are not checked here; see check_declared.
Typing typecheck(const GradeAlgebra& A, const TypeEnv& env, const TermPtr& e, const TypePtr& expected = nullptr,
                 Derivation* out = nullptr);

// usage(x) <= g for every x :_g T in env
void check_declared(const GradeAlgebra& A, const TypeEnv& env, const Usage& u);

// typecheck + check_declared
Typing typecheck_def(const GradeAlgebra& A, const TypeEnv& env, const TermPtr& e, const TypePtr& type);

// Re-checks a derivation rule by rule: each conclusion context must equal the
// combination of its premises' contexts prescribed by the rule (up to
// leq-equivalence), types must match, and binder grades must bound the premise usage
// with a slack d such that usage + d is equivalent to the binder grade.
LawReport verify_derivation(const GradeAlgebra& A, const TypeEnv& env, const Derivation& d);

}  // namespace lj
