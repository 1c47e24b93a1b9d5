#include <random>

#include "lj/extension.hpp"

namespace lj {

namespace {

std::string missing(const FiniteFrame& F, const WRelation& a, const WRelation& b) {
  auto t = missing_triple(a, b);
  if (!t) return "none";
  auto [x, y, w] = *t;
  return "(" + std::to_string(x) + "," + std::to_string(y) + "," + F.element(w) + ")";
}

WRelation random_relation(const FiniteFrame& F, int nx, int ny, std::mt19937_64& rng) {
  const auto& ups = F.upsets();
  std::uniform_int_distribution<std::size_t> pick(0, ups.size() - 1);
  WRelation r(nx, ny);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) r.set(x, y, ups[pick(rng)]);
  return r;
}

// Calls fn(a, b) on index pairs accepted by `ok`: all of them when there are at most
// `budget`, otherwise `budget` seeded draws among them.
template <class Ok, class Fn>
void for_pairs(std::size_t n, std::size_t budget, std::uint64_t seed, Ok ok, Fn fn) {
  std::vector<std::vector<std::size_t>> partners(n);
  std::size_t total = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (ok(a, b)) {
        partners[a].push_back(b);
        ++total;
      }
  if (total <= budget) {
    for (std::size_t a = 0; a < n; ++a)
      for (auto b : partners[a]) fn(a, b);
    return;
  }
  std::vector<std::size_t> firsts;
  for (std::size_t a = 0; a < n; ++a)
    if (!partners[a].empty()) firsts.push_back(a);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pa(0, firsts.size() - 1);
  for (std::size_t k = 0; k < budget; ++k) {
    auto a = firsts[pa(rng)];
    std::uniform_int_distribution<std::size_t> pb(0, partners[a].size() - 1);
    fn(a, partners[a][pb(rng)]);
  }
}

// Pair laws over a universe: the exhaustive part first, then pairs touching the samples.
template <class Ok, class Fn>
void universe_pairs(const RelUniverse& U, std::size_t budget, std::uint64_t salt, Ok ok, Fn fn) {
  const std::size_t ex = U.exhaustive;
  for_pairs(ex, budget, U.seed + salt, ok, fn);
  if (U.singles.size() > ex)
    for_pairs(
        U.singles.size(), std::max<std::size_t>(1, budget / 5), U.seed + salt + 100,
        [&](std::size_t a, std::size_t b) { return (a >= ex || b >= ex) && ok(a, b); }, fn);
}

}  // namespace

RelUniverse standard_universe(const FiniteFrame& F, std::size_t sampled, std::uint64_t seed) {
  RelUniverse U;
  U.seed = seed;
  for (auto [nx, ny] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 1}}) {
    for_each_relation(F, nx, ny, [&](const WRelation& r) { U.singles.push_back(r); });
    U.shapes.emplace_back(nx, ny);
  }
  U.exhaustive = U.singles.size();
  std::mt19937_64 rng(seed);
  for (auto [nx, ny] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {3, 3}}) {
    for (std::size_t k = 0; k < sampled; ++k) U.singles.push_back(random_relation(F, nx, ny, rng));
    if (sampled) U.shapes.emplace_back(nx, ny);
  }
  return U;
}

WRelation contract(const FiniteFrame& F, const WRelation& R, const WRelation& S) {
  if (R.nx() != S.nx() || R.ny() != S.ny()) throw std::invalid_argument("contract: shape mismatch");
  WRelation out(R.nx(), R.ny());
  for (int x = 0; x < R.nx(); ++x)
    for (int y = 0; y < R.ny(); ++y) out.set(x, y, F.tensor(R.at(x, y), S.at(x, y)));
  return out;
}

LawReport check_cle(const Extension& E, const std::vector<Grade>& grades, const RelUniverse& U) {
  const auto& A = E.algebra();
  const auto& F = E.frame();
  LawReport rep("extension " + E.name() + " on " + F.name());
  auto D = [&](const Grade& j, const WRelation& R) { return cle_apply(E, j, R); };
  const auto& rels = U.singles;

  for (const auto& j : grades) {
    const std::string js = "j=" + A.show(j);
    for (int n = 1; n <= 3; ++n) {
      auto I = rel_identity(F, n);
      rep.check_lazy("lax-identity", I.subset_of(D(j, I)), [&] { return js + " n=" + std::to_string(n) + " missing " + missing(F, I, D(j, I)); });
    }
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m)
        for (const auto& f : all_functions(n, m)) {
          auto g = rel_graph(F, f, m);
          auto gc = rel_converse(g);
          auto wit = [&](const WRelation& r) {
            std::string s = js + " f=[";
            for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
            return s + "] missing " + missing(F, r, D(j, r));
          };
          rep.check_lazy("graph-stability", g.subset_of(D(j, g)), [&] { return wit(g); });
          rep.check_lazy("converse-graph-stability", gc.subset_of(D(j, gc)), [&] { return wit(gc); });
        }
    for (const auto& R : rels) {
      auto DR = D(j, R);
      auto wit = [&](const WRelation& lhs, const WRelation& rhs) {
        return js + " R=" + R.show(F) + " missing " + missing(F, lhs, rhs);
      };
      rep.check_lazy("preserves-monotone", DR.monotone(F), [&] { return js + " R=" + R.show(F) + " gives " + DR.show(F); });
      if (A.equiv(j, A.one())) rep.check_lazy("Com1", DR.subset_of(R), [&] { return wit(DR, R); });
      if (A.leq(A.one(), j)) rep.check_lazy("antitone-consequence", DR.subset_of(R), [&] { return wit(DR, R); });
      for (const auto& i : grades) {
        const std::string is = " i=" + A.show(i);
        auto DiR = D(i, R);
        auto lhs2 = D(A.mul(j, i), R);
        auto rhs2 = D(j, DiR);
        rep.check_lazy("Com2", lhs2.subset_of(rhs2), [&] { return wit(lhs2, rhs2) + is; });
        auto lhs3 = D(A.add(j, i), R);
        auto rhs3 = contract(F, DR, DiR);
        rep.check_lazy("Mon2", lhs3.subset_of(rhs3), [&] { return wit(lhs3, rhs3) + is; });
        if (A.leq(j, i)) rep.check_lazy("Contra", DiR.subset_of(DR), [&] { return wit(DiR, DR) + is; });
      }
    }
  }

  const std::size_t per_grade = std::max<std::size_t>(1, U.pair_budget / std::max<std::size_t>(1, grades.size()));
  auto pair_wit = [&](const Grade& j, const WRelation& R, const WRelation& S, const WRelation& l, const WRelation& r) {
    return "j=" + A.show(j) + " R=" + R.show(F) + " S=" + S.show(F) + " missing " + missing(F, l, r);
  };
  universe_pairs(
      U, per_grade, 1, [&](std::size_t a, std::size_t b) { return rels[a].ny() == rels[b].nx(); },
      [&](std::size_t a, std::size_t b) {
        const auto &R = rels[a], &S = rels[b];
        auto RS = rel_compose(F, R, S);
        for (const auto& j : grades) {
          auto l = rel_compose(F, D(j, R), D(j, S));
          auto r = D(j, RS);
          rep.check_lazy("lax-composition", l.subset_of(r), [&] { return pair_wit(j, R, S, l, r); });
        }
      });
  universe_pairs(
      U, per_grade, 2,
      [&](std::size_t a, std::size_t b) { return rels[a].nx() * rels[b].nx() <= 4 && rels[a].ny() * rels[b].ny() <= 4; },
      [&](std::size_t a, std::size_t b) {
        const auto &R = rels[a], &S = rels[b];
        auto RS = rel_tensor(F, R, S);
        for (const auto& j : grades) {
          auto l = rel_tensor(F, D(j, R), D(j, S));
          auto r = D(j, RS);
          rep.check_lazy("Mon1", l.subset_of(r), [&] { return pair_wit(j, R, S, l, r); });
        }
      });
  universe_pairs(
      U, per_grade, 3,
      [&](std::size_t a, std::size_t b) { return rels[a].nx() == rels[b].nx() && rels[a].ny() == rels[b].ny() && rels[a].subset_of(rels[b]); },
      [&](std::size_t a, std::size_t b) {
        const auto &R = rels[a], &S = rels[b];
        for (const auto& j : grades) {
          auto l = D(j, R), r = D(j, S);
          rep.check_lazy("monotone-in-relation", l.subset_of(r), [&] { return pair_wit(j, R, S, l, r); });
        }
      });
  return rep;
}

WRelation lift_bot(const FiniteFrame& F, const WRelation& R) {
  WRelation out(R.nx() + 1, R.ny() + 1);
  for (int y = 0; y <= R.ny(); ++y) out.set(R.nx(), y, F.all());
  for (int x = 0; x < R.nx(); ++x)
    for (int y = 0; y < R.ny(); ++y) out.set(x, y, R.at(x, y));
  return out;
}

LawReport check_monad_laws(const FiniteFrame& F, const RelUniverse& U, const Lifting& lift) {
  LawReport rep("partiality lifting on " + F.name());
  const auto& rels = U.singles;
  // eta : X -> X_bot
  auto eta = [&](int n) {
    std::vector<int> f(n);
    for (int x = 0; x < n; ++x) f[x] = x;
    return rel_graph(F, f, n + 1);
  };
  // f_bot : X_bot -> Y_bot for f : X -> Y_bot, sending bot to bot
  auto kleisli = [&](const std::vector<int>& f, int ny) {
    auto g = f;
    g.push_back(ny);
    return rel_graph(F, g, ny + 1);
  };

  for (const auto& R : rels) {
    auto L = lift(F, R);
    auto wit = [&](const WRelation& l, const WRelation& r) { return "R=" + R.show(F) + " missing " + missing(F, l, r); };
    rep.check_lazy("lift-monotone", L.monotone(F), [&] { return "R=" + R.show(F); });
    bool row = L.nx() == R.nx() + 1 && L.ny() == R.ny() + 1;
    for (int y = 0; row && y < L.ny(); ++y) row = L.at(R.nx(), y) == F.all();
    rep.check_lazy("bot-related-to-all", row, [&] { return "R=" + R.show(F) + " lifted " + L.show(F); });
    if (L.nx() != R.nx() + 1 || L.ny() != R.ny() + 1) continue;
    auto back = rel_compose(F, rel_compose(F, eta(R.nx()), L), rel_converse(eta(R.ny())));
    rep.check_lazy("unit", R.subset_of(back), [&] { return wit(R, back); });
  }

  for (int n = 1; n <= 3; ++n) {
    auto I = rel_identity(F, n);
    auto II = rel_identity(F, n + 1);
    auto L = lift(F, I);
    rep.check_lazy("lift-identity", L.nx() == n + 1 && II.subset_of(L), [&] { return "n=" + std::to_string(n) + " missing " + missing(F, II, L); });
    for (int m = 1; m <= 3; ++m)
      for (const auto& f : all_functions(n, m)) {
        auto g = rel_graph(F, f, m);
        auto Ff = kleisli(f, m);  // the functor image of f
        auto Lg = lift(F, g);
        auto Lgc = lift(F, rel_converse(g));
        auto wit = [&] {
          std::string s = "f=[";
          for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
          return s + "]";
        };
        rep.check_lazy("lift-graph-stability", Lg.nx() == Ff.nx() && Ff.subset_of(Lg), wit);
        auto Ffc = rel_converse(Ff);
        rep.check_lazy("lift-converse-graph-stability", Lgc.nx() == Ffc.nx() && Ffc.subset_of(Lgc), wit);
      }
  }

  universe_pairs(
      U, U.pair_budget, 4, [&](std::size_t a, std::size_t b) { return rels[a].ny() == rels[b].nx(); },
      [&](std::size_t a, std::size_t b) {
        const auto &R = rels[a], &S = rels[b];
        auto LR = lift(F, R), LS = lift(F, S), LRS = lift(F, rel_compose(F, R, S));
        if (LR.ny() != LS.nx() || LRS.nx() != LR.nx() || LRS.ny() != LS.ny()) {
          rep.check("lift-lax-composition", false, "shape");
          return;
        }
        auto l = rel_compose(F, LR, LS);
        rep.check_lazy("lift-lax-composition", l.subset_of(LRS),
                       [&] { return "R=" + R.show(F) + " S=" + S.show(F) + " missing " + missing(F, l, LRS); });
      });
  universe_pairs(
      U, U.pair_budget, 5,
      [&](std::size_t a, std::size_t b) { return rels[a].nx() == rels[b].nx() && rels[a].ny() == rels[b].ny() && rels[a].subset_of(rels[b]); },
      [&](std::size_t a, std::size_t b) {
        auto l = lift(F, rels[a]), r = lift(F, rels[b]);
        rep.check_lazy("lift-monotone-in-relation", l.subset_of(r),
                       [&] { return "R=" + rels[a].show(F) + " S=" + rels[b].show(F) + " missing " + missing(F, l, r); });
      });

  // bind: R <= f ; S_bot ; g°  implies  R_bot <= f_bot ; S_bot ; (g_bot)°, for R : X -> X',
  // S : Y -> Y', f : X -> Y_bot, g : X' -> Y'_bot, all carriers of size two
  std::vector<const WRelation*> sq;
  for (const auto& r : rels)
    if (r.nx() == 2 && r.ny() == 2) sq.push_back(&r);
  auto fs = all_functions(2, 3);
  const std::size_t combos = fs.size() * fs.size() * sq.size();
  std::mt19937_64 rng(U.seed + 6);
  const bool sample = combos * sq.size() > 20 * U.pair_budget;
  const std::size_t rounds = sample ? std::max<std::size_t>(1, 20 * U.pair_budget / sq.size()) : combos;
  for (std::size_t k = 0; k < rounds; ++k) {
    std::size_t c = sample ? std::uniform_int_distribution<std::size_t>(0, combos - 1)(rng) : k;
    const auto& f = fs[c % fs.size()];
    const auto& g = fs[c / fs.size() % fs.size()];
    const auto& S = *sq[c / fs.size() / fs.size()];
    auto LS = lift(F, S);
    if (LS.nx() != 3 || LS.ny() != 3) continue;
    auto hyp = rel_compose(F, rel_compose(F, rel_graph(F, f, 3), LS), rel_converse(rel_graph(F, g, 3)));
    auto con = rel_compose(F, rel_compose(F, kleisli(f, 2), LS), rel_converse(kleisli(g, 2)));
    for (const auto* R : sq) {
      if (!R->subset_of(hyp)) continue;
      auto LR = lift(F, *R);
      rep.check_lazy("bind", LR.subset_of(con), [&] {
        return "R=" + R->show(F) + " S=" + S.show(F) + " f=[" + std::to_string(f[0]) + "," + std::to_string(f[1]) +
               "] g=[" + std::to_string(g[0]) + "," + std::to_string(g[1]) + "] missing " + missing(F, LR, con);
      });
    }
  }
  return rep;
}

LawReport check_distributivity(const Extension& E, const std::vector<Grade>& grades, const RelUniverse& U,
                               const Lifting& lift) {
  const auto& A = E.algebra();
  const auto& F = E.frame();
  LawReport rep("distributivity " + E.name() + " on " + F.name());
  for (const auto& j : grades) {
    auto j1 = A.join1(j);
    for (const auto& R : U.singles) {
      auto l = cle_apply(E, j1, lift(F, R));
      auto r = lift(F, cle_apply(E, j1, R));
      rep.check_lazy("distributivity", l.subset_of(r),
                     [&] { return "j=" + A.show(j) + " R=" + R.show(F) + " missing " + missing(F, l, r); });
    }
  }
  return rep;
}

}  // namespace lj
