#include "lj/typecheck.hpp"

#include <set>
#include <sstream>

namespace lj {

const Binding* env_find(const TypeEnv& env, const std::string& x) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->name == x) return &*it;
  return nullptr;
}

namespace {

// Grade errors raised while combining (e.g. a missing join) surface as type errors.
template <class Fn>
auto grade_op(Fn&& fn) {
  try {
    return fn();
  } catch (const GradeError& e) {
    throw TypeError(e.what());
  }
}

}  // namespace

TypeEnv env_add(const GradeAlgebra& A, const TypeEnv& g, const TypeEnv& d) {
  TypeEnv out = g;
  for (const auto& b : d) {
    bool found = false;
    for (auto& o : out) {
      if (o.name != b.name) continue;
      if (!type_equal(A, o.type, b.type))
        throw TypeError("incompatible environments: " + b.name + " has type " + show_type(A, o.type) + " and " +
                        show_type(A, b.type));
      o.grade = A.add(o.grade, b.grade);
      found = true;
    }
    if (!found) out.push_back(b);
  }
  return out;
}

TypeEnv env_scale(const GradeAlgebra& A, const Grade& j, const TypeEnv& g) {
  TypeEnv out = g;
  for (auto& b : out) b.grade = A.mul(j, b.grade);
  return out;
}

Grade usage_of(const GradeAlgebra& A, const Usage& u, const std::string& x) {
  auto it = u.find(x);
  return it == u.end() ? A.zero() : it->second;
}

Usage usage_add(const GradeAlgebra& A, const Usage& u, const Usage& v) {
  Usage out = u;
  for (const auto& [x, g] : v) {
    auto it = out.find(x);
    if (it == out.end())
      out.emplace(x, g);
    else
      it->second = A.add(it->second, g);
  }
  return out;
}

Usage usage_scale(const GradeAlgebra& A, const Grade& j, const Usage& u) {
  Usage out;
  for (const auto& [x, g] : u) out.emplace(x, A.mul(j, g));
  return out;
}

std::string show_usage(const GradeAlgebra& A, const Usage& u) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [x, g] : u) {
    os << (first ? "" : ", ") << x << ":" << A.show(g);
    first = false;
  }
  os << "}";
  return os.str();
}

namespace {

Usage without(Usage u, const std::string& x) {
  u.erase(x);
  return u;
}

Usage usage_lub(const GradeAlgebra& A, const Usage& u, const Usage& v) {
  Usage out;
  std::set<std::string> names;
  for (const auto& kv : u) names.insert(kv.first);
  for (const auto& kv : v) names.insert(kv.first);
  for (const auto& x : names) {
    Grade a = usage_of(A, u, x), b = usage_of(A, v, x);
    auto j = A.join(a, b);
    if (!j) throw TypeError("case branches use " + x + " at " + A.show(a) + " and " + A.show(b) + ", which have no join");
    out.emplace(x, *j);
  }
  return out;
}

struct Checker {
  const GradeAlgebra& A;
  TypeEnv env;  // grades unused; binders pushed and popped

  std::string ty(const TypePtr& t) const { return show_type(A, t); }

  void expect(const TypePtr& expected, const TypePtr& actual, const TermPtr& e) const {
    if (expected && !type_equal(A, expected, actual))
      throw TypeError("type mismatch in " + show_term(A, e) + ": expected " + ty(expected) + ", got " + ty(actual));
  }

  void closed_annotation(const TypePtr& t) const {
    if (!type_closed(t)) throw TypeError("annotation is not closed: " + ty(t));
  }

  void binder_bound(const std::string& x, const Grade& used, const Grade& bound, const char* where) const {
    if (!A.leq(used, bound))
      throw TypeError("grade violation: " + x + " used at " + A.show(used) + " in " + where + ", but " +
                      A.show(used) + " <= " + A.show(bound) + " fails");
  }

  template <class Fn>
  Typing under(const std::string& x, const TypePtr& t, Fn&& fn) {
    env.push_back({x, t, A.one()});
    Typing r = fn();
    env.pop_back();
    return r;
  }

  Typing tc(const TermPtr& e, const TypePtr& expected, Derivation* out) {
    auto sub = [&](std::size_t k) -> Derivation* {
      if (!out) return nullptr;
      if (out->premises.size() <= k) out->premises.resize(k + 1);
      return &out->premises[k];
    };
    Typing r = infer(e, expected, sub, out ? &out->grade : nullptr);
    if (out) {
      out->term = e;
      out->type = r.type;
      out->ctx = r.usage;
    }
    return r;
  }

  template <class Sub>
  Typing infer(const TermPtr& e, const TypePtr& expected, Sub&& sub, Grade* binder) {
    switch (e->kind) {
      case Term::Kind::Var: {
        const Binding* b = env_find(env, e->x);
        if (!b) throw TypeError("unbound variable " + e->x);
        expect(expected, b->type, e);
        return {b->type, {{e->x, A.one()}}};
      }
      case Term::Kind::Lam: {
        TypePtr dom = e->ty, cod;
        if (expected) {
          if (expected->kind != Type::Kind::Arrow)
            throw TypeError("type mismatch in " + show_term(A, e) + ": expected " + ty(expected) + ", got a function");
          if (dom && !type_equal(A, dom, expected->a))
            throw TypeError("type mismatch for " + e->x + ": expected " + ty(expected->a) + ", got " + ty(dom));
          dom = expected->a;
          cod = expected->b;
        }
        if (!dom) throw TypeError("cannot infer the type of " + e->x + " in " + show_term(A, e) + "; annotate it");
        closed_annotation(dom);
        Typing body = under(e->x, dom, [&] { return tc(e->a, cod, sub(0)); });
        binder_bound(e->x, usage_of(A, body.usage, e->x), A.one(), "a lambda body");
        if (binder) *binder = A.one();
        return {Type::arrow(dom, body.type), without(body.usage, e->x)};
      }
      case Term::Kind::App: {
        Typing f = tc(e->a, nullptr, sub(0));
        if (f.type->kind != Type::Kind::Arrow)
          throw TypeError("application of a non-function of type " + ty(f.type) + " in " + show_term(A, e));
        Typing a = tc(e->b, f.type->a, sub(1));
        expect(expected, f.type->b, e);
        return {f.type->b, usage_add(A, f.usage, a.usage)};
      }
      case Term::Kind::Fold: {
        if (!expected) throw TypeError("cannot infer the type of " + show_term(A, e) + "; annotate it");
        if (expected->kind != Type::Kind::Mu)
          throw TypeError("type mismatch in " + show_term(A, e) + ": expected " + ty(expected) + ", got a fold");
        Typing v = tc(e->a, unroll(expected), sub(0));
        return {expected, v.usage};
      }
      case Term::Kind::Unfold: {
        Typing v = tc(e->a, nullptr, sub(0));
        if (v.type->kind != Type::Kind::Mu)
          throw TypeError("unfold of a non-recursive type " + ty(v.type) + " in " + show_term(A, e));
        TypePtr t = unroll(v.type);
        expect(expected, t, e);
        return {t, v.usage};
      }
      case Term::Kind::Box: {
        TypePtr inner;
        if (expected) {
          if (expected->kind != Type::Kind::Box || !A.equiv(expected->grade, e->grade))
            throw TypeError("type mismatch in " + show_term(A, e) + ": expected " + ty(expected) + ", got a box_[" +
                            A.show(e->grade) + "]");
          inner = expected->a;
        }
        Typing v = tc(e->a, inner, sub(0));
        return {Type::box(e->grade, v.type), usage_scale(A, e->grade, v.usage)};
      }
      case Term::Kind::Inl:
      case Term::Kind::Inr: {
        if (!expected) throw TypeError("cannot infer the type of " + show_term(A, e) + "; annotate it");
        if (expected->kind != Type::Kind::Sum)
          throw TypeError("type mismatch in " + show_term(A, e) + ": expected " + ty(expected) + ", got an injection");
        Typing v = tc(e->a, e->kind == Term::Kind::Inl ? expected->a : expected->b, sub(0));
        return {expected, v.usage};
      }
      case Term::Kind::Ann: {
        closed_annotation(e->ty);
        Typing v = tc(e->a, e->ty, sub(0));
        expect(expected, e->ty, e);
        return {e->ty, v.usage};
      }
      case Term::Kind::Let: {
        Typing a = tc(e->a, nullptr, sub(0));
        Typing f = under(e->x, a.type, [&] { return tc(e->b, expected, sub(1)); });
        Grade j = usage_of(A, f.usage, e->x);
        if (binder) *binder = j;
        Grade s = grade_op([&] { return A.join1(j); });
        return {f.type, usage_add(A, usage_scale(A, s, a.usage), without(f.usage, e->x))};
      }
      case Term::Kind::LetBox: {
        Typing v = tc(e->a, nullptr, sub(0));
        if (v.type->kind != Type::Kind::Box)
          throw TypeError("letbox of a non-box type " + ty(v.type) + " in " + show_term(A, e));
        Typing b = under(e->x, v.type->a, [&] { return tc(e->b, expected, sub(1)); });
        Grade ij = A.mul(e->grade, v.type->grade);
        binder_bound(e->x, usage_of(A, b.usage, e->x), ij, "a letbox body");
        if (binder) *binder = ij;
        return {b.type, usage_add(A, usage_scale(A, e->grade, v.usage), without(b.usage, e->x))};
      }
      case Term::Kind::Case: {
        Typing v = tc(e->a, nullptr, sub(0));
        if (v.type->kind != Type::Kind::Sum)
          throw TypeError("case on a non-sum type " + ty(v.type) + " in " + show_term(A, e));
        Typing l = under(e->x, v.type->a, [&] { return tc(e->b, expected, sub(1)); });
        Typing r = under(e->y, v.type->b, [&] { return tc(e->c, expected ? expected : l.type, sub(2)); });
        binder_bound(e->x, usage_of(A, l.usage, e->x), e->grade, "a case branch");
        binder_bound(e->y, usage_of(A, r.usage, e->y), e->grade, "a case branch");
        if (binder) *binder = e->grade;
        Grade s = grade_op([&] { return A.join1(e->grade); });
        Usage branches = usage_lub(A, without(l.usage, e->x), without(r.usage, e->y));
        return {l.type, usage_add(A, usage_scale(A, s, v.usage), branches)};
      }
    }
    throw TypeError("unknown term");
  }
};

const char* rule_name(Term::Kind k) {
  switch (k) {
    case Term::Kind::Var: return "var";
    case Term::Kind::Lam: return "lam";
    case Term::Kind::Fold: return "fold";
    case Term::Kind::Box: return "box";
    case Term::Kind::Inl: return "inl";
    case Term::Kind::Inr: return "inr";
    case Term::Kind::Ann: return "ann";
    case Term::Kind::App: return "app";
    case Term::Kind::Unfold: return "unfold";
    case Term::Kind::Let: return "let";
    case Term::Kind::LetBox: return "letbox";
    case Term::Kind::Case: return "case";
  }
  return "?";
}

void name_rules(Derivation& d) {
  if (d.term) d.rule = rule_name(d.term->kind);
  for (auto& p : d.premises) name_rules(p);
}

}  // namespace

Typing typecheck(const GradeAlgebra& A, const TypeEnv& env, const TermPtr& e, const TypePtr& expected,
                 Derivation* out) {
  std::set<std::string> seen;
  for (const auto& b : env) {
    if (!seen.insert(b.name).second) throw TypeError("duplicate variable " + b.name + " in context");
    if (!type_closed(b.type)) throw TypeError("annotation is not closed: " + show_type(A, b.type));
  }
  if (expected && !type_closed(expected)) throw TypeError("annotation is not closed: " + show_type(A, expected));
  Checker c{A, env};
  Typing t = c.tc(e, expected, out);
  if (out) name_rules(*out);
  return t;
}

void check_declared(const GradeAlgebra& A, const TypeEnv& env, const Usage& u) {
  for (const auto& b : env) {
    Grade used = usage_of(A, u, b.name);
    if (!A.leq(used, b.grade))
      throw TypeError("grade violation: " + b.name + " used at " + A.show(used) + ", declared " + A.show(b.grade) +
                      ", but " + A.show(used) + " <= " + A.show(b.grade) + " fails");
  }
}

Typing typecheck_def(const GradeAlgebra& A, const TypeEnv& env, const TermPtr& e, const TypePtr& type) {
  Typing t = typecheck(A, env, e, type);
  check_declared(A, env, t.usage);
  return t;
}

// ---- derivation checking ----

namespace {

bool usage_equiv(const GradeAlgebra& A, const Usage& u, const Usage& v) {
  for (const auto& [x, g] : u)
    if (!A.equiv(g, usage_of(A, v, x))) return false;
  for (const auto& [x, g] : v)
    if (!A.equiv(g, usage_of(A, u, x))) return false;
  return true;
}

// u <= g and some d has u + d equivalent to g
bool slack(const GradeAlgebra& A, const Grade& u, const Grade& g) {
  if (!A.leq(u, g)) return false;
  std::vector<Grade> cands = A.slack_hints(u, g);
  cands.push_back(g);
  cands.push_back(A.zero());
  if (auto c = A.carrier()) cands.insert(cands.end(), c->begin(), c->end());
  for (const auto& d : cands)
    if (A.member(d) && A.equiv(A.add(u, d), g)) return true;
  return false;
}

struct Verifier {
  const GradeAlgebra& A;
  LawReport& rep;
  std::vector<std::pair<std::string, TypePtr>> env;

  TypePtr lookup(const std::string& x) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == x) return it->second;
    return nullptr;
  }

  bool teq(const TypePtr& a, const TypePtr& b) const { return a && b && type_equal(A, a, b); }

  void check(const Derivation& d, bool ok, const char* what) {
    rep.check_lazy(d.rule, ok, [&] { return std::string(what) + " at " + show_term(A, d.term); });
  }

  void under(const std::string& x, const TypePtr& t, const Derivation& p) {
    env.emplace_back(x, t);
    go(p);
    env.pop_back();
  }

  void go(const Derivation& d) {
    const TermPtr& e = d.term;
    const auto& P = d.premises;
    auto arity = [&](std::size_t n) {
      check(d, P.size() == n, "premise count");
      return P.size() == n;
    };
    switch (e->kind) {
      case Term::Kind::Var:
        if (!arity(0)) return;
        check(d, teq(lookup(e->x), d.type), "variable type");
        check(d, usage_equiv(A, d.ctx, {{e->x, A.one()}}), "context is x:1");
        return;
      case Term::Kind::Lam: {
        if (!arity(1)) return;
        check(d, d.type->kind == Type::Kind::Arrow, "arrow type");
        if (d.type->kind != Type::Kind::Arrow) return;
        under(e->x, d.type->a, P[0]);
        check(d, teq(P[0].type, d.type->b), "body type");
        check(d, slack(A, usage_of(A, P[0].ctx, e->x), A.one()), "binder graded 1");
        check(d, usage_equiv(A, d.ctx, without(P[0].ctx, e->x)), "context");
        return;
      }
      case Term::Kind::App:
        if (!arity(2)) return;
        go(P[0]);
        go(P[1]);
        check(d, teq(P[0].type, Type::arrow(P[1].type, d.type)), "function type");
        check(d, usage_equiv(A, d.ctx, usage_add(A, P[0].ctx, P[1].ctx)), "context is a sum");
        return;
      case Term::Kind::Fold:
        if (!arity(1)) return;
        go(P[0]);
        check(d, d.type->kind == Type::Kind::Mu && teq(P[0].type, unroll(d.type)), "unrolled type");
        check(d, usage_equiv(A, d.ctx, P[0].ctx), "context");
        return;
      case Term::Kind::Unfold:
        if (!arity(1)) return;
        go(P[0]);
        check(d, P[0].type->kind == Type::Kind::Mu && teq(d.type, unroll(P[0].type)), "unrolled type");
        check(d, usage_equiv(A, d.ctx, P[0].ctx), "context");
        return;
      case Term::Kind::Box:
        if (!arity(1)) return;
        go(P[0]);
        check(d, teq(d.type, Type::box(e->grade, P[0].type)), "box type");
        check(d, usage_equiv(A, d.ctx, usage_scale(A, e->grade, P[0].ctx)), "context is j * premise");
        return;
      case Term::Kind::Inl:
      case Term::Kind::Inr:
        if (!arity(1)) return;
        go(P[0]);
        check(d,
              d.type->kind == Type::Kind::Sum &&
                  teq(P[0].type, e->kind == Term::Kind::Inl ? d.type->a : d.type->b),
              "injection type");
        check(d, usage_equiv(A, d.ctx, P[0].ctx), "context");
        return;
      case Term::Kind::Ann:
        if (!arity(1)) return;
        go(P[0]);
        check(d, teq(d.type, e->ty) && teq(P[0].type, e->ty), "ascribed type");
        check(d, usage_equiv(A, d.ctx, P[0].ctx), "context");
        return;
      case Term::Kind::Let: {
        if (!arity(2)) return;
        go(P[0]);
        under(e->x, P[0].type, P[1]);
        Grade j = usage_of(A, P[1].ctx, e->x);
        check(d, A.equiv(j, d.grade), "binder grade is the body usage");
        check(d, teq(d.type, P[1].type), "result type");
        Usage want = usage_add(A, usage_scale(A, A.join1(j), P[0].ctx), without(P[1].ctx, e->x));
        check(d, usage_equiv(A, d.ctx, want), "context is (j v 1) * Gamma + Delta");
        return;
      }
      case Term::Kind::LetBox: {
        if (!arity(2)) return;
        go(P[0]);
        const TypePtr& bt = P[0].type;
        check(d, bt->kind == Type::Kind::Box, "box type");
        if (bt->kind != Type::Kind::Box) return;
        under(e->x, bt->a, P[1]);
        Grade ij = A.mul(e->grade, bt->grade);
        check(d, A.equiv(d.grade, ij), "binder grade is i * j");
        check(d, slack(A, usage_of(A, P[1].ctx, e->x), ij), "binder graded i * j");
        check(d, teq(d.type, P[1].type), "result type");
        Usage want = usage_add(A, usage_scale(A, e->grade, P[0].ctx), without(P[1].ctx, e->x));
        check(d, usage_equiv(A, d.ctx, want), "context is i * Gamma + Delta");
        return;
      }
      case Term::Kind::Case: {
        if (!arity(3)) return;
        go(P[0]);
        const TypePtr& st = P[0].type;
        check(d, st->kind == Type::Kind::Sum, "sum type");
        if (st->kind != Type::Kind::Sum) return;
        under(e->x, st->a, P[1]);
        under(e->y, st->b, P[2]);
        check(d, teq(d.type, P[1].type) && teq(d.type, P[2].type), "branch types");
        check(d, slack(A, usage_of(A, P[1].ctx, e->x), e->grade), "left binder graded j");
        check(d, slack(A, usage_of(A, P[2].ctx, e->y), e->grade), "right binder graded j");
        // Delta: the rest of the context after the scrutinee part
        Usage scr = usage_scale(A, A.join1(e->grade), P[0].ctx);
        Usage l = without(P[1].ctx, e->x), r = without(P[2].ctx, e->y);
        Usage delta = usage_lub(A, l, r);
        check(d, usage_equiv(A, d.ctx, usage_add(A, scr, delta)), "context is (j v 1) * Gamma + Delta");
        bool weak = true;
        for (const auto& [x, g] : delta)
          weak = weak && slack(A, usage_of(A, l, x), g) && slack(A, usage_of(A, r, x), g);
        check(d, weak, "branches weaken to Delta");
        return;
      }
    }
  }
};

}  // namespace

LawReport verify_derivation(const GradeAlgebra& A, const TypeEnv& env, const Derivation& d) {
  LawReport rep("derivation");
  Verifier v{A, rep, {}};
  for (const auto& b : env) v.env.emplace_back(b.name, b.type);
  v.go(d);
  return rep;
}

}  // namespace lj
