#include "lj/equiv.hpp"

namespace lj {

namespace {

const Quantale& quantale(const Config& cfg) {
  if (!cfg.qextension) throw std::invalid_argument("distance needs a quantale extension");
  return cfg.qextension->quantale();
}

}  // namespace

Distance top_distance(const Config& cfg) {
  const Universe& U = *cfg.universe;
  const Quantale& V = quantale(cfg);
  Distance d{VMatrix(U.size(), U.size(), V.bottom()), VMatrix(U.size(), U.size(), V.bottom())};
  for (int x = 0; x < U.size(); ++x)
    for (int y = 0; y < U.size(); ++y) {
      if (admissible(U, false, x, y)) d.terms.set(x, y, V.top());
      if (admissible(U, true, x, y)) d.values.set(x, y, V.top());
    }
  return d;
}

QVal lifted(const Config& cfg, const Distance& d, int x, int y) {
  const Universe& U = *cfg.universe;
  const Quantale& V = quantale(cfg);
  int ox = U[x].outcome, oy = U[y].outcome;
  if (ox < 0) return V.unit();
  if (oy < 0) return V.bottom();
  return d.values.at(ox, oy);
}

Distance distance_step(const Config& cfg, const Distance& d) {
  const Universe& U = *cfg.universe;
  U.require_closed();
  const Quantale& V = quantale(cfg);
  const QExtension& D = *cfg.qextension;
  Distance out = top_distance(cfg);
  for (int x = 0; x < U.size(); ++x)
    for (int y = 0; y < U.size(); ++y) {
      if (admissible(U, false, x, y)) out.terms.set(x, y, lifted(cfg, d, x, y));
      if (!admissible(U, true, x, y)) continue;
      const Member& v = U[x];
      const Member& w = U[y];
      const TypePtr& ty = U.type_of(x);
      QVal q = V.bottom();
      switch (ty->kind) {
        case Type::Kind::Arrow:
          q = V.top();
          for (std::size_t k = 0; k < v.apps.size(); ++k) q = V.meet(q, d.terms.at(v.apps[k], w.apps[k]));
          break;
        case Type::Kind::Mu:
          q = d.values.at(v.payload, w.payload);
          break;
        case Type::Kind::Box:
          q = D.apply(ty->grade, d.values.at(v.payload, w.payload));
          break;
        case Type::Kind::Sum:
          if (v.term->kind == w.term->kind) q = d.values.at(v.payload, w.payload);
          break;
        default:
          break;
      }
      out.values.set(x, y, q);
    }
  return out;
}

Distance distance_fix(const Config& cfg, int k) {
  cfg.validate();
  Distance d = top_distance(cfg);
  for (int i = 1; i <= k; ++i) {
    Distance next = distance_step(cfg, d);
    next.iterations = i;
    if (next == d) {
      next.stable = true;
      return next;
    }
    d = std::move(next);
  }
  return d;
}

}  // namespace lj
