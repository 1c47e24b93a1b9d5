#include "lj/eval.hpp"

#include <string>

namespace lj {

TermPtr strip_ann(const TermPtr& v) {
  TermPtr t = v;
  while (t->kind == Term::Kind::Ann) t = t->a;
  return t;
}

namespace {

[[noreturn]] void stuck(const TermPtr& e, const char* why) {
  throw StuckError(std::string("stuck term (") + why + "): node kind " + std::to_string(static_cast<int>(e->kind)));
}

Outcome run(TermPtr e, std::uint64_t n) {
  // tail positions loop; only the first premise of let recurses
  for (;;) {
    if (n == 0) return {};
    if (is_value(e)) return {e};
    --n;
    switch (e->kind) {
      case Term::Kind::App: {
        TermPtr f = strip_ann(e->a);
        if (f->kind != Term::Kind::Lam) stuck(e, "application of a non-function");
        e = substitute(f->a, f->x, e->b);
        break;
      }
      case Term::Kind::Unfold: {
        TermPtr v = strip_ann(e->a);
        if (v->kind != Term::Kind::Fold) stuck(e, "unfold of a non-fold");
        e = v->a;
        break;
      }
      case Term::Kind::LetBox: {
        TermPtr v = strip_ann(e->a);
        if (v->kind != Term::Kind::Box) stuck(e, "letbox of a non-box");
        e = substitute(e->b, e->x, v->a);
        break;
      }
      case Term::Kind::Case: {
        TermPtr v = strip_ann(e->a);
        if (v->kind == Term::Kind::Inl)
          e = substitute(e->b, e->x, v->a);
        else if (v->kind == Term::Kind::Inr)
          e = substitute(e->c, e->y, v->a);
        else
          stuck(e, "case on a non-injection");
        break;
      }
      case Term::Kind::Let: {
        Outcome r = run(e->a, n);
        if (r.diverged()) return {};
        e = substitute(e->b, e->x, r.value);
        break;
      }
      default:
        stuck(e, "free variable or malformed term");
    }
  }
}

}  // namespace

Outcome eval_fuel(const TermPtr& e, std::uint64_t n) { return run(e, n); }

}  // namespace lj
