#include <random>

#include "doctest.h"
#include "lj/corpus.hpp"
#include "lj/parser.hpp"
#include "lj/typecheck.hpp"

using namespace lj;

namespace {

const std::string kPrograms = std::string(LJ_SOURCE_DIR) + "/programs/";

const std::vector<std::string> kCorpus = {"typing/natinf.gml", "noninterference.gml", "core.gml"};

struct Gen {
  std::mt19937_64 rng{11};
  const GradeAlgebra& A;
  std::vector<Grade> grades;

  explicit Gen(const GradeAlgebra& a) : A(a) {
    for (const char* g : {"0", "1", "2", "inf"}) grades.push_back(A.parse(g));
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  std::string name() { return std::string(1, "xyzw"[pick(4)]); }
  Grade grade() { return grades[pick(static_cast<int>(grades.size()))]; }

  TypePtr type(int d) {
    int k = d <= 0 ? pick(2) : pick(6);
    switch (k) {
      case 0: return Type::void_();
      case 1: return unit_type();
      case 2: return Type::arrow(type(d - 1), type(d - 1));
      case 3: return Type::sum(type(d - 1), type(d - 1));
      case 4: return Type::box(grade(), type(d - 1));
      default: return Type::mu("a", Type::sum(unit_type(), Type::box(grade(), Type::var("a"))));
    }
  }

  TermPtr value(int d) {
    int k = d <= 0 ? 0 : pick(7);
    switch (k) {
      case 0: return Term::var(name());
      case 1: return Term::lam(name(), pick(2) ? type(1) : nullptr, term(d - 1));
      case 2: return Term::fold(value(d - 1));
      case 3: return Term::box(grade(), value(d - 1));
      case 4: return Term::inl(value(d - 1));
      case 5: return Term::inr(value(d - 1));
      default: return Term::ann(value(d - 1), type(2));
    }
  }

  TermPtr term(int d) {
    int k = d <= 0 ? 0 : pick(6);
    switch (k) {
      case 0: return value(d);
      case 1: return Term::app(value(d - 1), value(d - 1));
      case 2: return Term::unfold(value(d - 1));
      case 3: return Term::let(name(), term(d - 1), term(d - 1));
      case 4: return Term::letbox(grade(), name(), value(d - 1), term(d - 1));
      default: return Term::case_(grade(), value(d - 1), name(), term(d - 1), name(), term(d - 1));
    }
  }
};

// closed values of simple closed types, for substitution tests
std::optional<TermPtr> some_value(const GradeAlgebra& A, const TypePtr& t, int depth = 4) {
  if (depth < 0) return std::nullopt;
  switch (t->kind) {
    case Type::Kind::Void:
    case Type::Kind::Var:
      return std::nullopt;
    case Type::Kind::Arrow: {
      if (auto body = some_value(A, t->b, depth - 1)) return Term::lam("fresh", t->a, *body);
      if (t->a->kind == Type::Kind::Void && t->b->kind == Type::Kind::Void) return Term::lam("u", t->a, Term::var("u"));
      return std::nullopt;
    }
    case Type::Kind::Sum:
      if (auto l = some_value(A, t->a, depth - 1)) return Term::inl(*l);
      if (auto r = some_value(A, t->b, depth - 1)) return Term::inr(*r);
      return std::nullopt;
    case Type::Kind::Box:
      if (auto v = some_value(A, t->a, depth - 1)) return Term::box(t->grade, *v);
      return std::nullopt;
    case Type::Kind::Mu:
      if (auto v = some_value(A, unroll(t), depth - 1)) return Term::fold(*v);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("parser builds the expected nodes") {
  auto P = empty_program("natinf");
  auto lam = parse_term(P, "\\x. x");
  REQUIRE(lam->kind == Term::Kind::Lam);
  CHECK(lam->x == "x");
  CHECK(lam->a->kind == Term::Kind::Var);

  auto lb = parse_term(P, "letbox_[1] x = box_2 v in e");
  REQUIRE(lb->kind == Term::Kind::LetBox);
  CHECK(lb->grade == Grade::number(1));
  REQUIRE(lb->a->kind == Term::Kind::Box);
  CHECK(lb->a->grade == Grade::number(2));
  CHECK(lb->b->x == "e");

  auto S = empty_program("sec2");
  auto cs = parse_term(S, "case_[high] y of inl a -> tt | inr b -> ff");
  REQUIRE(cs->kind == Term::Kind::Case);
  CHECK(S.algebra->show(cs->grade) == "high");
  CHECK(cs->x == "a");
  CHECK(cs->y == "b");
  CHECK(cs->b->kind == Term::Kind::Ann);
  CHECK(cs->b->a->kind == Term::Kind::Inl);
  CHECK(cs->c->a->kind == Term::Kind::Inr);

  // default case grade is one
  CHECK(parse_term(P, "case y of inl a -> a | inr b -> b")->grade == Grade::number(1));

  auto t = parse_type(P, "mu a. Box_[2] a + Unit -o Bool");
  REQUIRE(t->kind == Type::Kind::Mu);
  CHECK(t->a->kind == Type::Kind::Arrow);
  CHECK(t->a->a->kind == Type::Kind::Sum);
  CHECK_THROWS_AS(parse_type(P, "Box_[0.5] Unit"), ParseError);  // natinf has no 0.5
  CHECK(parse_type(empty_program("extreal"), "Box_0.5 Unit")->grade == Grade::number(ExtRat(1, 2)));
}

TEST_CASE("parse errors carry positions") {
  auto P = empty_program("natinf");
  try {
    parse_term(P, "let x = \n  in y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 3);
  }
  CHECK_THROWS_AS(parse_term(P, "f x y"), ParseError);
  CHECK_THROWS_AS(parse_term(P, "(let x = y in x) z"), ParseError);
  CHECK_THROWS_AS(parse_term(P, "box_[zz] x"), ParseError);
  CHECK_THROWS_AS(parse_program("#algebra nosuch\n"), ParseError);
  CHECK_THROWS_AS(parse_program("def x : Unit = \\u. u\n"), ParseError);
  try {
    parse_program("#algebra natinf\n\ndef x : Unit = \\u. u $\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col == 22);
  }
}

TEST_CASE("print then parse is the identity up to alpha") {
  auto P = empty_program("natinf");
  Gen g(*P.algebra);
  for (int i = 0; i < 2000; ++i) {
    TermPtr t = g.term(4);
    std::string s = show_term(*P.algebra, t);
    TermPtr back = parse_term(P, s);
    INFO(s);
    REQUIRE(alpha_equal(*P.algebra, t, back));
    CHECK(show_term(*P.algebra, back) == s);
  }
  for (const auto& f : kCorpus) {
    auto prog = load_program(kPrograms + f);
    for (const auto& d : prog.defs) {
      std::string s = show_term(*prog.algebra, d.term);
      INFO(s);
      CHECK(alpha_equal(*prog.algebra, d.term, parse_term(prog, s)));
      CHECK(type_equal(*prog.algebra, d.type, parse_type(prog, show_type(*prog.algebra, d.type))));
    }
  }
}

TEST_CASE("alpha equivalence") {
  auto P = empty_program("natinf");
  const auto& A = *P.algebra;
  CHECK(alpha_equal(A, parse_term(P, "\\x. x"), parse_term(P, "\\y. y")));
  CHECK_FALSE(alpha_equal(A, parse_term(P, "\\x. y"), parse_term(P, "\\y. y")));
  CHECK(alpha_equal(A, parse_term(P, "let x = a in \\y. x"), parse_term(P, "let z = a in \\w. z")));
  CHECK_FALSE(alpha_equal(A, parse_term(P, "box_1 x"), parse_term(P, "box_2 x")));
  CHECK(canonical(A, parse_term(P, "\\x : Unit. x")) == canonical(A, parse_term(P, "\\y. y")));
  CHECK(type_equal(A, parse_type(P, "mu a. a -o Unit"), parse_type(P, "mu b. b -o Unit")));
}

TEST_CASE("substitution") {
  auto P = empty_program("natinf");
  const auto& A = *P.algebra;
  auto v = parse_term(P, "\\u. u");
  CHECK(alpha_equal(A, substitute(Term::var("x"), "x", v), v));
  auto shadow = parse_term(P, "\\x. x");
  CHECK(substitute(shadow, "x", v) == shadow);
  CHECK(alpha_equal(A, substitute(parse_term(P, "let y = x in y"), "x", v), parse_term(P, "let y = \\u. u in y")));
  CHECK(alpha_equal(A, substitute(parse_term(P, "let x = x in x"), "x", v), parse_term(P, "let x = \\u. u in x")));
  auto cs = parse_term(P, "case z of inl x -> x | inr y -> x");
  CHECK(alpha_equal(A, substitute(cs, "x", v), parse_term(P, "case z of inl x -> x | inr y -> \\u. u")));
  CHECK(free_vars(substitute(cs, "z", v)) == std::set<std::string>{"x"});
}

TEST_CASE("environment combination") {
  auto A = natinf_algebra();
  auto t = unit_type(), s = bool_type();
  TypeEnv a{{"x", t, Grade::number(2)}}, b{{"x", t, Grade::number(3)}};
  auto sum = env_add(*A, a, b);
  REQUIRE(sum.size() == 1);
  CHECK(sum[0].grade == Grade::number(5));

  auto sc = env_scale(*A, Grade::number(2), b);
  CHECK(sc[0].grade == Grade::number(6));

  TypeEnv c{{"y", s, Grade::number(1)}};
  auto both = env_add(*A, TypeEnv{{"x", t, Grade::number(1)}}, c);
  REQUIRE(both.size() == 2);
  CHECK(both[0].name == "x");
  CHECK(both[0].grade == Grade::number(1));
  CHECK(both[1].name == "y");
  CHECK(both[1].grade == Grade::number(1));

  CHECK_THROWS_AS(env_add(*A, a, TypeEnv{{"x", s, Grade::number(1)}}), TypeError);
}

TEST_CASE("typing examples") {
  auto P = empty_program("natinf");
  const auto& A = *P.algebra;
  auto tau = unit_type();
  auto x = Term::var("x");
  CHECK_NOTHROW(typecheck_def(A, {{"x", tau, A.one()}}, x, tau));
  CHECK_THROWS_WITH_AS(typecheck_def(A, {{"x", tau, A.zero()}}, x, tau), doctest::Contains("grade violation: x"),
                       TypeError);

  // x :_1 ⊢ v : τ gives x :_3 ⊢ box_3 v : Box_3 τ
  auto three = Grade::number(3);
  auto boxed = typecheck_def(A, {{"x", tau, three}}, Term::box(three, x), Type::box(three, tau));
  CHECK(boxed.usage.at("x") == three);

  // an unused let result still counts the bound computation once
  auto e = parse_term(P, "let y = x in \\u. u");
  auto t = typecheck(A, {{"x", tau, A.one()}}, e, tau);
  CHECK(t.usage.at("x") == A.one());

  CHECK_THROWS_WITH_AS(typecheck(A, {}, parse_term(P, "z"), nullptr), "unbound variable z", TypeError);
  CHECK_THROWS_WITH_AS(typecheck(A, {{"x", tau, A.one()}}, x, bool_type()), doctest::Contains("expected"),
                       TypeError);
  CHECK_THROWS_WITH_AS(typecheck(A, {}, Term::lam("x", Type::var("a"), x), nullptr),
                       doctest::Contains("not closed"), TypeError);

  // same input, same output
  auto prog = load_program(kPrograms + "core.gml");
  for (const auto& d : prog.defs) {
    auto a1 = typecheck(*prog.algebra, d.ctx, d.term, d.type);
    auto a2 = typecheck(*prog.algebra, d.ctx, d.term, d.type);
    CHECK(type_equal(*prog.algebra, a1.type, a2.type));
    CHECK(a1.usage == a2.usage);
  }
}

TEST_CASE("information-flow program is rejected") {
  auto prog = load_program(kPrograms + "noninterference.gml");
  auto v = check_def(prog, prog.get("leak"));
  CHECK_FALSE(v.accepted);
  CHECK(v.message.find("grade violation: y") != std::string::npos);
}

TEST_CASE("typechecker corpus verdicts") {
  std::size_t n = 0, accepted = 0, rejected = 0;
  for (const auto& f : kCorpus) {
    auto prog = load_program(kPrograms + f);
    auto ex = read_expectations(kPrograms + f);
    for (const auto& e : ex) {
      auto v = check_def(prog, prog.get(e.def));
      INFO(f << ":" << e.line << " " << e.def << " -> " << (v.accepted ? "accepted" : v.message));
      CHECK(matches(e, v));
      ++n;
      (e.accept ? accepted : rejected)++;
    }
    // defs without an expectation must typecheck
    for (const auto& d : prog.defs) {
      bool listed = false;
      for (const auto& e : ex) listed = listed || e.def == d.name;
      if (!listed) {
        auto v = check_def(prog, d);
        INFO(d.name << ": " << v.message);
        CHECK(v.accepted);
      }
    }
  }
  CHECK(n >= 12);
  CHECK(accepted >= 6);
  CHECK(rejected >= 6);
}

TEST_CASE("accepted programs have verified derivations") {
  for (const auto& f : kCorpus) {
    auto prog = load_program(kPrograms + f);
    const auto& A = *prog.algebra;
    for (const auto& d : prog.defs) {
      if (!check_def(prog, d).accepted) continue;
      Derivation der;
      auto t = typecheck(A, d.ctx, d.term, d.type, &der);
      auto rep = verify_derivation(A, d.ctx, der);
      INFO(d.name << "\n" << rep);
      CHECK(rep.ok());
      CHECK(der.ctx == t.usage);
      CHECK(der.rule != "");
    }
  }

  // a tampered context is caught
  auto prog = load_program(kPrograms + "typing/natinf.gml");
  const auto& d = prog.get("letbox_arith");
  Derivation der;
  typecheck(*prog.algebra, d.ctx, d.term, d.type, &der);
  der.ctx["v"] = Grade::number(1);
  CHECK_FALSE(verify_derivation(*prog.algebra, d.ctx, der).ok());
  Derivation der2;
  typecheck(*prog.algebra, d.ctx, d.term, d.type, &der2);
  der2.premises[1].ctx["x"] = Grade::number(5);
  CHECK_FALSE(verify_derivation(*prog.algebra, d.ctx, der2).ok());
}

TEST_CASE("weakening preserves acceptance") {
  std::mt19937_64 rng(3);
  std::size_t checked = 0;
  for (const auto& f : kCorpus) {
    auto prog = load_program(kPrograms + f);
    const auto& A = *prog.algebra;
    auto samples = A.carrier() ? *A.carrier() : std::vector<Grade>{A.parse("0"), A.parse("1"), A.parse("2"), A.top()};
    auto g = [&] { return samples[std::uniform_int_distribution<std::size_t>(0, samples.size() - 1)(rng)]; };
    for (const auto& d : prog.defs) {
      if (!check_def(prog, d).accepted) continue;
      for (int k = 0; k < 20; ++k) {
        TypeEnv delta;
        for (const auto& b : d.ctx)
          if (rng() % 2) delta.push_back({b.name, b.type, g()});
        for (int m = static_cast<int>(rng() % 3); m > 0; --m)
          delta.push_back({"extra" + std::to_string(m), rng() % 2 ? unit_type() : bool_type(), g()});
        auto wide = env_add(A, d.ctx, delta);
        INFO(d.name);
        CHECK_NOTHROW(typecheck_def(A, wide, d.term, d.type));
        ++checked;
      }
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("substitution preserves typing") {
  std::size_t checked = 0;
  for (const auto& f : kCorpus) {
    auto prog = load_program(kPrograms + f);
    const auto& A = *prog.algebra;
    for (const auto& d : prog.defs) {
      if (!check_def(prog, d).accepted) continue;
      for (const auto& b : d.ctx) {
        auto v = some_value(A, b.type);
        if (!v) continue;
        REQUIRE_NOTHROW(typecheck(A, {}, *v, b.type));
        TypeEnv rest;
        for (const auto& c : d.ctx)
          if (c.name != b.name) rest.push_back(c);
        // ascribed, so that inference positions stay inferable
        auto e = substitute(d.term, b.name, Term::ann(*v, b.type));
        INFO(d.name << " [" << b.name << " := " << show_term(A, *v) << "]");
        auto t = typecheck_def(A, rest, e, d.type);
        CHECK(type_equal(A, t.type, d.type));
        ++checked;
      }
    }
  }
  CHECK(checked >= 15);
}
