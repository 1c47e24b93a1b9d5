#include <bit>

#include "lj/equiv.hpp"

namespace lj {

void Config::validate() const {
  if (!universe) throw std::invalid_argument("config has no universe");
  const std::string a = universe->algebra().name();
  if (extension && extension->algebra().name() != a)
    throw std::invalid_argument("extension " + extension->name() + " is over " + extension->algebra().name() +
                                ", the universe over " + a);
  if (qextension && qextension->algebra().name() != a)
    throw std::invalid_argument("quantale extension " + qextension->name() + " is over " +
                                qextension->algebra().name() + ", the universe over " + a);
}

const char* status_name(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Pass: return "pass";
    case Verdict::Status::Fail: return "fail";
    case Verdict::Status::Inconclusive: return "inconclusive";
    case Verdict::Status::Rejected: return "rejected";
  }
  return "?";
}

std::size_t Candidate::triples() const {
  std::size_t n = 0;
  for (const WRelation* r : {&terms, &values})
    for (int x = 0; x < r->nx(); ++x)
      for (int y = 0; y < r->ny(); ++y) n += std::popcount(r->at(x, y));
  return n;
}

bool admissible(const Universe& U, bool value_layer, int x, int y) {
  if (U[x].type != U[y].type) return false;
  return !value_layer || (U[x].value && U[y].value);
}

Candidate empty_candidate(const Universe& U) { return {WRelation(U.size(), U.size()), WRelation(U.size(), U.size())}; }

Candidate full_candidate(const Universe& U, const FiniteFrame& F) {
  Candidate R = empty_candidate(U);
  for (int x = 0; x < U.size(); ++x)
    for (int y = 0; y < U.size(); ++y) {
      if (admissible(U, false, x, y)) R.terms.set(x, y, F.all());
      if (admissible(U, true, x, y)) R.values.set(x, y, F.all());
    }
  return R;
}

Candidate identity_candidate(const Universe& U, const FiniteFrame& F) {
  Candidate R = empty_candidate(U);
  for (int x = 0; x < U.size(); ++x) {
    R.terms.set(x, x, F.all());
    if (U[x].value) R.values.set(x, x, F.all());
  }
  return R;
}

void check_candidate(const Config& cfg, const Candidate& R) {
  const Universe& U = *cfg.universe;
  const FiniteFrame& F = cfg.frame();
  for (bool layer : {false, true}) {
    const WRelation& r = layer ? R.values : R.terms;
    if (r.nx() != U.size() || r.ny() != U.size())
      throw std::invalid_argument("candidate has " + std::to_string(r.nx()) + " rows, the universe " +
                                  std::to_string(U.size()) + " members");
    for (int x = 0; x < U.size(); ++x)
      for (int y = 0; y < U.size(); ++y) {
        WorldSet s = r.at(x, y);
        if (s && !admissible(U, layer, x, y))
          throw std::invalid_argument("candidate relates " + U.label(x) + " and " + U.label(y) +
                                      (layer ? " as values" : " as terms") + ", which are not comparable");
        if (!F.is_upset(s))
          throw std::invalid_argument("candidate is not monotone at " + U.label(x) + ", " + U.label(y));
      }
  }
}

namespace {

const TypePtr& type_at(const Universe& U, int x) { return U.type_of(x); }

}  // namespace

std::string simulation_clause(const Universe& U, bool value_layer, int x, int) {
  if (!value_layer) return "eval";
  switch (type_at(U, x)->kind) {
    case Type::Kind::Arrow: return "abs";
    case Type::Kind::Mu: return "fold";
    case Type::Kind::Box: return "box";
    case Type::Kind::Sum: return "sum";
    default: return "value";
  }
}

Candidate simulation_step(const Config& cfg, const Candidate& R) {
  const Universe& U = *cfg.universe;
  U.require_closed();
  check_candidate(cfg, R);
  const FiniteFrame& F = cfg.frame();
  const Extension& E = *cfg.extension;
  Candidate out = empty_candidate(U);
  for (int x = 0; x < U.size(); ++x)
    for (int y = 0; y < U.size(); ++y) {
      if (admissible(U, false, x, y)) {
        // (eval e, eval f, w) in R_bot
        int ox = U[x].outcome, oy = U[y].outcome;
        out.terms.set(x, y, ox < 0 ? F.all() : oy < 0 ? 0 : R.values.at(ox, oy));
      }
      if (!admissible(U, true, x, y)) continue;
      const Member& v = U[x];
      const Member& w = U[y];
      const TypePtr& ty = type_at(U, x);
      WorldSet s = 0;
      switch (ty->kind) {
        case Type::Kind::Arrow:
          s = F.all();
          for (std::size_t k = 0; k < v.apps.size(); ++k) s &= R.terms.at(v.apps[k], w.apps[k]);
          break;
        case Type::Kind::Mu:
          s = R.values.at(v.payload, w.payload);
          break;
        case Type::Kind::Box:
          s = E.apply(ty->grade, R.values.at(v.payload, w.payload));
          break;
        case Type::Kind::Sum:
          s = v.term->kind == w.term->kind ? R.values.at(v.payload, w.payload) : 0;
          break;
        default:
          break;
      }
      out.values.set(x, y, s);
    }
  return out;
}

Verdict check_simulation(const Config& cfg, const Candidate& R) {
  const Universe& U = *cfg.universe;
  const FiniteFrame& F = cfg.frame();
  Candidate S = simulation_step(cfg, R);
  Verdict v;
  v.depth = U.fuel();
  v.checked = R.triples();
  for (bool layer : {false, true}) {
    auto miss = missing_triple(layer ? R.values : R.terms, layer ? S.values : S.terms);
    if (!miss) continue;
    auto [x, y, w] = *miss;
    v.status = Verdict::Status::Fail;
    v.value_layer = layer;
    v.x = x;
    v.y = y;
    v.world = w;
    v.clause = simulation_clause(U, layer, x, y);
    v.witness = "(" + U.label(x) + ", " + U.label(y) + ", " + F.element(w) + ")";
    if (v.clause == "box") {
      v.grade = type_at(U, x)->grade;
      v.witness += " grade=" + U.algebra().show(*v.grade);
    }
    v.message = std::string(layer ? "value" : "term") + " pair related at " + F.element(w) + " but not by the " +
                v.clause + " clause";
    return v;
  }
  return v;
}

Pruning prune(const Config& cfg, Candidate R) {
  Pruning p;
  for (;;) {
    Candidate S = simulation_step(cfg, R);
    Candidate next{rel_meet(R.terms, S.terms), rel_meet(R.values, S.values)};
    if (next == R) break;
    R = std::move(next);
    ++p.steps;
  }
  p.result = std::move(R);
  return p;
}

Candidate refine_compatible(const Config& cfg, const Candidate& R) {
  const Universe& U = *cfg.universe;
  U.require_closed(true);
  check_candidate(cfg, R);
  const GradeAlgebra& A = U.algebra();
  const FiniteFrame& F = cfg.frame();
  const Extension& E = *cfg.extension;
  using K = Term::Kind;

  auto val = [&](int a, int b) -> WorldSet { return admissible(U, true, a, b) ? R.values.at(a, b) : 0; };
  auto term = [&](int a, int b) -> WorldSet { return admissible(U, false, a, b) ? R.terms.at(a, b) : 0; };
  // open extension: related after substituting each test value for the binder
  auto opened = [&](const std::vector<int>& a, const std::vector<int>& b) -> WorldSet {
    if (a.size() != b.size()) return 0;
    WorldSet s = F.all();
    for (std::size_t k = 0; k < a.size(); ++k) s &= term(a[k], b[k]);
    return s;
  };

  Candidate out = empty_candidate(U);
  for (int x = 0; x < U.size(); ++x)
    for (int y = 0; y < U.size(); ++y) {
      const Member& m = U[x];
      const Member& n = U[y];
      const TermPtr& s = m.term;
      const TermPtr& t = n.term;
      if (admissible(U, false, x, y)) {
        WorldSet r = 0;
        if (m.value && n.value) {
          r = R.values.at(x, y);
        } else if (!m.value && !n.value && s->kind == t->kind) {
          switch (s->kind) {
            case K::App:
              r = F.tensor(val(m.parts[0], n.parts[0]), val(m.parts[1], n.parts[1]));
              break;
            case K::Unfold:
              r = val(m.parts[0], n.parts[0]);
              break;
            case K::Let: {
              // both bodies typed with x :_j, j the larger usage
              auto j = A.join(m.binder, n.binder);
              if (!j) break;
              r = F.tensor(E.apply(A.join1(*j), term(m.parts[0], n.parts[0])), opened(m.instances[0], n.instances[0]));
              break;
            }
            case K::LetBox:
              if (!A.equiv(s->grade, t->grade)) break;
              r = F.tensor(E.apply(s->grade, val(m.parts[0], n.parts[0])), opened(m.instances[0], n.instances[0]));
              break;
            case K::Case:
              if (!A.equiv(s->grade, t->grade)) break;
              r = F.tensor(E.apply(A.join1(s->grade), val(m.parts[0], n.parts[0])),
                           opened(m.instances[0], n.instances[0]) & opened(m.instances[1], n.instances[1]));
              break;
            default:
              break;
          }
        }
        out.terms.set(x, y, F.up_close(r));
      }
      if (admissible(U, true, x, y) && s->kind == t->kind) {
        WorldSet r = 0;
        switch (s->kind) {
          case K::Lam:
            r = opened(m.instances[0], n.instances[0]);
            break;
          case K::Fold:
          case K::Inl:
          case K::Inr:
            r = val(m.payload, n.payload);
            break;
          case K::Box:
            if (A.equiv(s->grade, t->grade)) r = E.apply(s->grade, val(m.payload, n.payload));
            break;
          default:
            break;
        }
        out.values.set(x, y, F.up_close(r));
      }
    }
  return out;
}

}  // namespace lj
