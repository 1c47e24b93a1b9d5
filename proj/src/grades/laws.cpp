#include <random>

#include "lj/grades.hpp"

namespace lj {

LawReport check_algebra(const GradeAlgebra& A, const std::vector<Grade>& samples, std::size_t max_triples) {
  LawReport rep("algebra " + A.name());
  const auto& S = samples;
  const std::size_t n = S.size();
  auto sh = [&](const Grade& g) { return A.show(g); };
  auto eq = [&](const Grade& a, const Grade& b) { return A.equiv(a, b); };
  const Grade zero = A.zero(), one = A.one(), top = A.top();

  for (const auto& g : S)
    rep.check_lazy("carrier-membership", A.member(g), [&] { return sh(g); });

  // unary laws
  for (const auto& x : S) {
    rep.check_lazy("leq-reflexive", A.leq(x, x), [&] { return sh(x); });
    rep.check_lazy("add-unit", eq(A.add(x, zero), x) && eq(A.add(zero, x), x), [&] { return "x=" + sh(x); });
    rep.check_lazy("mul-unit", eq(A.mul(x, one), x) && eq(A.mul(one, x), x), [&] { return "x=" + sh(x); });
    rep.check_lazy("mul-annihilates", eq(A.mul(x, zero), zero) && eq(A.mul(zero, x), zero),
                   [&] { return "x=" + sh(x); });
    rep.check_lazy("zero-bottom", A.leq(zero, x), [&] { return "x=" + sh(x); });
    rep.check_lazy("top-top", A.leq(x, top), [&] { return "x=" + sh(x); });
    std::optional<Grade> j1;
    try {
      j1 = A.join1(x);
    } catch (const GradeError& e) {
      rep.check("join1-upper-bound", false, "x=" + sh(x) + " (" + e.what() + ")");
      continue;
    }
    rep.check_lazy("join1-upper-bound", A.leq(x, *j1) && A.leq(one, *j1),
                   [&] { return "x=" + sh(x) + " join1=" + sh(*j1); });
    for (const auto& k : S) {
      bool undercut = A.leq(x, k) && A.leq(one, k) && A.lt(k, *j1);
      rep.check_lazy("join1-least", !undercut,
                     [&] { return "x=" + sh(x) + " join1=" + sh(*j1) + " smaller bound " + sh(k); });
    }
  }

  // binary laws
  for (const auto& x : S)
    for (const auto& y : S) {
      rep.check_lazy("add-commutative", eq(A.add(x, y), A.add(y, x)),
                     [&] { return "x=" + sh(x) + " y=" + sh(y); });
      if (A.leq(x, y)) {
        bool found = false;
        for (const auto& d : A.slack_hints(x, y))
          if (A.member(d) && eq(A.add(x, d), y)) found = true;
        for (std::size_t i = 0; i < n && !found; ++i)
          if (eq(A.add(x, S[i]), y)) found = true;
        rep.check_lazy("slack-decomposability", found,
                       [&] { return "u=" + sh(x) + " g=" + sh(y) + " has no d with u+d = g"; });
      }
    }

  // ternary laws
  auto triple = [&](const Grade& x, const Grade& y, const Grade& z) {
    auto w3 = [&] { return "x=" + sh(x) + " y=" + sh(y) + " z=" + sh(z); };
    rep.check_lazy("add-associative", eq(A.add(A.add(x, y), z), A.add(x, A.add(y, z))), w3);
    rep.check_lazy("mul-associative", eq(A.mul(A.mul(x, y), z), A.mul(x, A.mul(y, z))), w3);
    rep.check_lazy("distributive-left", eq(A.mul(x, A.add(y, z)), A.add(A.mul(x, y), A.mul(x, z))), w3);
    rep.check_lazy("distributive-right", eq(A.mul(A.add(y, z), x), A.add(A.mul(y, x), A.mul(z, x))), w3);
    if (A.leq(x, y)) {
      rep.check_lazy("leq-transitive", !A.leq(y, z) || A.leq(x, z), w3);
      rep.check_lazy("add-monotone", A.leq(A.add(x, z), A.add(y, z)) && A.leq(A.add(z, x), A.add(z, y)),
                     [&] { return "x<=y but x+z !<= y+z: " + w3(); });
      rep.check_lazy("mul-monotone", A.leq(A.mul(x, z), A.mul(y, z)) && A.leq(A.mul(z, x), A.mul(z, y)),
                     [&] { return "x<=y but x*z !<= y*z: " + w3(); });
    }
  };
  if (n * n * n <= max_triples) {
    for (const auto& x : S)
      for (const auto& y : S)
        for (const auto& z : S) triple(x, y, z);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < max_triples; ++t) triple(S[pick(rng)], S[pick(rng)], S[pick(rng)]);
  }
  return rep;
}

}  // namespace lj
