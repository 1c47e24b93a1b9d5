#include <random>

#include "doctest.h"
#include "lj/grades.hpp"

using namespace lj;

namespace {

Grade n(std::int64_t k) { return Grade::number(k); }
Grade inf() { return Grade::number(ExtRat::inf()); }

}  // namespace

TEST_CASE("extended rationals") {
  CHECK(ExtRat(1, 2) + ExtRat(1, 2) == ExtRat(1));
  CHECK(ExtRat::inf() * ExtRat(0) == ExtRat(0));
  CHECK(ExtRat(0) * ExtRat::inf() == ExtRat(0));
  CHECK(ExtRat::inf() + ExtRat(1) == ExtRat::inf());
  CHECK(ExtRat(5, 2).str() == "2.5");
  CHECK(ExtRat(1, 3).str() == "1/3");
  CHECK(*ExtRat::parse("2.25") == ExtRat(9, 4));
  CHECK(*ExtRat::parse("5/2") == ExtRat(5, 2));
  CHECK(ExtRat::parse("inf")->is_inf());
  CHECK_FALSE(ExtRat::parse("-1"));
  CHECK(ExtRat(3).monus(ExtRat(5)) == ExtRat(0));
  CHECK(ExtRat(1) < ExtRat::inf());
}

TEST_CASE("natinf operations") {
  auto A = natinf_algebra();
  CHECK(g_add(*A, n(2), n(3)) == n(5));
  CHECK(g_mul(*A, n(2), n(3)) == n(6));
  CHECK(g_leq(*A, n(0), n(7)));
  CHECK(g_join1(*A, n(0)) == n(1));
  CHECK(g_mul(*A, inf(), n(0)) == n(0));
  CHECK(A->parse("inf") == inf());
  CHECK_THROWS_AS(A->parse("2.5"), GradeError);
  CHECK_THROWS_AS(g_add(*A, n(1), Grade::atom(0)), GradeError);
}

TEST_CASE("extreal operations") {
  auto A = extreal_algebra();
  CHECK(g_add(*A, inf(), n(1)) == inf());
  CHECK(g_mul(*A, inf(), n(0)) == n(0));
  Grade two_half = A->parse("2.5");
  CHECK(g_join1(*A, two_half) == two_half);
  CHECK(g_join1(*A, A->parse("0.5")) == n(1));
}

TEST_CASE("sec2 against a brute-force lattice table") {
  auto A = sec2_algebra();
  Grade low = A->parse("low"), high = A->parse("high");
  // oracle: security order low < high; grade order reversed; + is meet, * is join
  auto lat_leq = [](int a, int b) { return a <= b; };  // 0 = low, 1 = high
  auto g_of = [&](int i) { return i == 0 ? low : high; };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CHECK(g_leq(*A, g_of(a), g_of(b)) == lat_leq(b, a));
      CHECK(g_add(*A, g_of(a), g_of(b)) == g_of(std::min(a, b)));
      CHECK(g_mul(*A, g_of(a), g_of(b)) == g_of(std::max(a, b)));
    }
  // join with one by enumeration of upper bounds in the grade order
  for (int j = 0; j < 2; ++j) {
    int best = -1;
    for (int k = 0; k < 2; ++k) {
      bool ub = lat_leq(k, j) && lat_leq(k, 0);
      if (!ub) continue;
      bool least = true;
      for (int m = 0; m < 2; ++m)
        if (lat_leq(m, j) && lat_leq(m, 0) && !lat_leq(m, k)) least = false;
      if (least) best = k;
    }
    CHECK(g_join1(*A, g_of(j)) == g_of(best));
  }
  CHECK(g_add(*A, high, low) == low);
  CHECK(g_mul(*A, high, low) == high);
  CHECK(g_leq(*A, high, low));
  CHECK(g_join1(*A, high) == low);
  CHECK(A->zero() == high);
  CHECK(A->one() == low);
}

TEST_CASE("interval order is pointwise") {
  auto A = make_algebra("interval:natinf");
  CHECK(g_leq(*A, A->parse("[0,1]"), A->parse("[0,2]")));
  CHECK_FALSE(g_leq(*A, A->parse("[1,1]"), A->parse("[0,2]")));
  CHECK_THROWS_AS(A->parse("[2,1]"), GradeError);
  CHECK(A->show(g_join1(*A, A->parse("[0,2]"))) == "[1,2]");
}

TEST_CASE("product and lattice files") {
  auto P = make_algebra("product:natinf,sec2");
  Grade g = P->parse("(2,high)");
  CHECK(P->show(g_add(*P, g, P->parse("(3,low)"))) == "(5,low)");
  auto L = parse_lattice("bot\na\nb\ntop\nbot <= a\nbot <= b\na <= top\nb <= top\n", "diamond");
  auto r = check_algebra(*L, *L->carrier());
  CHECK(r.ok());
  CHECK(L->show(L->zero()) == "top");
  CHECK(L->show(L->add(L->parse("a"), L->parse("b"))) == "bot");
}

TEST_CASE("law suites pass on shipped algebras") {
  std::mt19937_64 rng(7);
  for (const char* name : {"trivial", "sec2", "interval:sec2", "product:sec2,trivial", "end:F2", "end:lawvere4"}) {
    CAPTURE(name);
    auto A = make_algebra(name);
    auto rep = check_algebra(*A, *A->carrier());
    for (const auto& l : rep.laws()) {
      CAPTURE(l.law);
      CAPTURE(l.witness);
      CHECK(l.ok);
    }
  }
  for (const char* name : {"natinf", "extreal"}) {
    CAPTURE(name);
    auto A = make_algebra(name);
    auto rep = check_algebra(*A, A->sample(rng, 40));
    CHECK(rep.ok());
  }
  auto N = natinf_algebra();
  CHECK(check_algebra(*N, {n(0), n(1), n(2), n(3), inf()}).ok());
}

TEST_CASE("intervals over natinf are not slack-decomposable") {
  auto A = make_algebra("interval:natinf");
  auto rep = check_algebra(*A, {A->parse("[0,2]"), A->parse("[2,2]"), A->zero(), A->one()});
  const auto* s = rep.find("slack-decomposability");
  REQUIRE(s);
  CHECK_FALSE(s->ok);
  const auto* m = rep.find("add-monotone");
  REQUIRE(m);
  CHECK(m->ok);
}

TEST_CASE("a corrupted table is caught with a witness") {
  auto base = std::dynamic_pointer_cast<const FiniteAlgebra>(sec2_algebra());
  auto t = base->tables();
  // low + low = high breaks monotonicity of + (high <= low, yet high+low = low !<= high)
  t.add[0][0] = 1;
  FiniteAlgebra bad(t);
  auto rep = check_algebra(bad, *bad.carrier());
  const auto* m = rep.find("add-monotone");
  REQUIRE(m);
  CHECK_FALSE(m->ok);
  CHECK_FALSE(m->witness.empty());
}

TEST_CASE("endomorphisms of small frames") {
  auto f2 = std::make_shared<FiniteFrame>(frame_f2());
  EndAlgebra e2(f2);
  CHECK(e2.size() == 2);
  auto l4 = std::make_shared<FiniteFrame>(frame_lawvere4());
  EndAlgebra e4(l4);
  CHECK(e4.size() == 4);
  CHECK(e4.apply(e4.top(), 1) == 3);
  CHECK(e4.apply(e4.top(), 0) == 0);

  // composition and pointwise addition over all monotone endomaps of a 4-world frame
  const auto& F = *l4;
  auto maps = monotone_endomaps(F);
  using Map = std::vector<int>;
  auto comp = [](const Map& x, const Map& y) {
    Map r(x.size());
    for (std::size_t w = 0; w < x.size(); ++w) r[w] = x[y[w]];
    return r;
  };
  auto plus = [&](const Map& x, const Map& y) {
    Map r(x.size());
    for (std::size_t w = 0; w < x.size(); ++w) r[w] = F.op(x[w], y[w]);
    return r;
  };
  const Map id = {0, 1, 2, 3}, zero = {0, 0, 0, 0};
  std::size_t bad = 0;
  for (const auto& h : maps) {
    bad += comp(h, id) != h || comp(id, h) != h || plus(h, zero) != h;
  }
  for (const auto& a : maps)
    for (const auto& b : maps) {
      bad += plus(a, b) != plus(b, a);
      for (const auto& c : maps) {
        bad += comp(comp(a, b), c) != comp(a, comp(b, c));
        bad += plus(plus(a, b), c) != plus(a, plus(b, c));
        bad += comp(plus(a, b), c) != plus(comp(a, c), comp(b, c));
      }
    }
  CHECK(maps.size() > e4.size());
  CHECK(bad == 0);
}
