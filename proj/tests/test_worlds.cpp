#include <random>

#include "doctest.h"
#include "lj/quantale.hpp"
#include "lj/relation.hpp"

using namespace lj;

namespace {

const std::string kData = std::string(LJ_SOURCE_DIR) + "/data/";

// Direct reading of the composition clause, quantifying over all worlds.
WRelation compose_oracle(const FiniteFrame& F, const WRelation& R, const WRelation& S) {
  WRelation out(R.nx(), S.ny());
  for (int x = 0; x < R.nx(); ++x)
    for (int z = 0; z < S.ny(); ++z)
      for (int w = 0; w < F.size(); ++w) {
        bool hit = false;
        for (int y = 0; y < R.ny(); ++y)
          for (int v = 0; v < F.size(); ++v)
            for (int u = 0; u < F.size(); ++u)
              if (F.leq(F.op(v, u), w) && R.has(x, y, v) && S.has(y, z, u)) hit = true;
        if (hit) out.set(x, z, out.at(x, z) | WorldSet(1) << w);
      }
  return out;
}

}  // namespace

TEST_CASE("frame loader") {
  auto l4 = load_frame(kData + "frames/lawvere4.frame");
  CHECK(l4.size() == 4);
  auto builtin = frame_lawvere4();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(l4.op(a, b) == builtin.op(a, b));
      CHECK(l4.leq(a, b) == builtin.leq(a, b));
    }
  CHECK_THROWS_WITH_AS(load_frame(kData + "frames/lawvere5_ceiling.frame"),
                       doctest::Contains("not associative"), FrameError);
  CHECK_THROWS_AS(parse_frame("elements: a b\norder:\n a <= b\nmonoid:\n b . b = a\nunit: a\n", "bad"), FrameError);
  CHECK_THROWS_AS(parse_frame("elements: a b\norder:\n b <= a\nunit: a\nmonoid:\n b . b = b\n", "bad"), FrameError);
  CHECK(load_frame(kData + "frames/diamond_join.frame").is_join_frame());
  CHECK_FALSE(frame_lawvere4().is_join_frame());
}

TEST_CASE("monotone closure") {
  auto F = frame_f2();
  auto r = monotone_close(F, {"a"}, {"b"}, {{"a", "b", "0"}});
  CHECK(r.has(0, 0, 0));
  CHECK(r.has(0, 0, 1));
  CHECK(monotone_close(F, 1, 1, {{0, 0, 0}, {0, 0, 1}}) == r);
  CHECK(monotone_close(F, 2, 2, {}).empty());
  CHECK_THROWS_AS(monotone_close(F, {"a"}, {"b"}, {{"a", "c", "0"}}), FrameError);
  CHECK_THROWS_AS(monotone_close(F, {"a"}, {"b"}, {{"a", "b", "7"}}), FrameError);
}

TEST_CASE("composition on F2") {
  auto F = frame_f2();
  // carriers {a, b, c} as 0, 1, 2
  auto R = monotone_close(F, 3, 3, {{0, 1, 0}});
  auto S = monotone_close(F, 3, 3, {{1, 2, 1}});
  auto RS = rel_compose(F, R, S);
  CHECK(RS.has(0, 2, 1));
  CHECK_FALSE(RS.has(0, 2, 0));
  CHECK(rel_compose(F, rel_identity(F, 3), R) == R);
  CHECK(rel_compose(F, R, WRelation(3, 3)).empty());

  std::size_t n = 0;
  auto rels = all_relations(F, 2, 2);
  CHECK(rels.size() == 81);
  for (const auto& a : rels)
    for (const auto& b : rels) {
      REQUIRE(rel_compose(F, a, b) == compose_oracle(F, a, b));
      ++n;
    }
  CHECK(n == 81 * 81);
}

TEST_CASE("composition is associative with identity; converse laws") {
  auto F = frame_f2();
  auto rels = all_relations(F, 2, 2);
  auto I = rel_identity(F, 2);
  std::size_t bad = 0;
  for (const auto& r : rels) {
    bad += rel_compose(F, I, r) != r || rel_compose(F, r, I) != r;
    bad += rel_converse(rel_converse(r)) != r;
    CHECK(r.monotone(F));
  }
  for (const auto& r : rels)
    for (const auto& s : rels) {
      auto rs = rel_compose(F, r, s);
      bad += rel_converse(rs) != rel_compose(F, rel_converse(s), rel_converse(r));
      for (const auto& t : rels) bad += rel_compose(F, rs, t) != rel_compose(F, r, rel_compose(F, s, t));
    }
  CHECK(bad == 0);
}

TEST_CASE("tensor") {
  auto F = frame_f2();
  auto R = monotone_close(F, 1, 1, {{0, 0, 0}});
  auto S = monotone_close(F, 1, 1, {{0, 0, 1}});
  auto T = rel_tensor(F, R, S);
  CHECK(T.has(0, 0, 1));
  CHECK_FALSE(T.has(0, 0, 0));
  auto unit = rel_identity(F, 1);
  for (const auto& r : all_relations(F, 2, 2)) {
    CHECK(rel_tensor(F, unit, r) == r);
    CHECK(rel_tensor(F, r, unit) == r);
  }
  CHECK(rel_tensor(F, WRelation(2, 2), WRelation(2, 2)).empty());
}

TEST_CASE("matrix composition") {
  auto B = boolean_quantale();
  auto unitF = frame_unit();
  // Boolean matrices agree with set-theoretic composition on 2x2x2 instances
  for (const auto& r : all_relations(unitF, 2, 2))
    for (const auto& s : all_relations(unitF, 2, 2)) {
      auto m = mat_compose(*B, psi_encode(unitF, r), psi_encode(unitF, s));
      for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
          bool set_comp = (r.has(x, 0, 0) && s.has(0, z, 0)) || (r.has(x, 1, 0) && s.has(1, z, 0));
          CHECK((m.at(x, z).p != 0) == set_comp);
        }
    }

  auto L = lawvere_quantale();
  VMatrix a(1, 1, L->parse("1.0")), b(1, 1, L->parse("2.5"));
  CHECK(mat_compose(*L, a, b).at(0, 0) == L->parse("3.5"));
  VMatrix c(2, 2, L->bottom());
  c.set(0, 1, L->parse("0.5"));
  c.set(1, 0, L->parse("2"));
  CHECK(mat_compose(*L, c, mat_identity(*L, 2)) == c);
  CHECK(mat_compose(*L, mat_identity(*L, 2), c) == c);
}

TEST_CASE("matrix composition is associative with identity") {
  std::mt19937_64 rng(11);
  auto L = lawvere_quantale();
  auto B = boolean_quantale();
  const std::vector<QVal> lv = {L->parse("0"), L->parse("0.5"), L->parse("1"), L->parse("inf")};
  const std::vector<QVal> bv = {B->parse("false"), B->parse("true")};
  for (auto [V, vals] : {std::pair{L, lv}, std::pair{B, bv}}) {
    for (int n = 1; n <= 3; ++n) {
      std::uniform_int_distribution<std::size_t> pick(0, vals.size() - 1);
      auto rnd = [&] {
        VMatrix m(n, n, vals[0]);
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) m.set(x, y, vals[pick(rng)]);
        return m;
      };
      auto I = mat_identity(*V, n);
      for (int t = 0; t < 3000; ++t) {
        auto a = rnd(), b = rnd(), c = rnd();
        REQUIRE(mat_compose(*V, mat_compose(*V, a, b), c) == mat_compose(*V, a, mat_compose(*V, b, c)));
        REQUIRE(mat_compose(*V, a, I) == a);
        REQUIRE(mat_compose(*V, I, a) == a);
      }
    }
  }
}

TEST_CASE("psi and phi are inverse and preserve the structure") {
  auto F = std::make_shared<FiniteFrame>(frame_f2());
  PredicateQuantale BW(F);
  auto rels = all_relations(*F, 2, 2);
  for (const auto& r : rels) CHECK(phi_decode(*F, psi_encode(*F, r)) == r);
  // every matrix of monotone predicates on the same universe
  for (const auto& r : rels) {
    VMatrix m(2, 2, PredicateQuantale::of(0));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) m.set(x, y, PredicateQuantale::of(r.at(x, y)));
    CHECK(psi_encode(*F, phi_decode(*F, m)) == m);
  }
  CHECK(psi_encode(*F, rel_identity(*F, 2)) == mat_identity(BW, 2));
  for (const auto& r : rels)
    for (const auto& s : rels) {
      REQUIRE(psi_encode(*F, rel_compose(*F, r, s)) == mat_compose(BW, psi_encode(*F, r), psi_encode(*F, s)));
      auto t = psi_encode(*F, rel_tensor(*F, r, s));
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          REQUIRE(t.at(x, y) == BW.tensor(PredicateQuantale::of(r.at(x / 2, y / 2)),
                                          PredicateQuantale::of(s.at(x % 2, y % 2))));
    }
  VMatrix bad(1, 1, PredicateQuantale::of(1));  // {0} alone is not up-closed in F2
  CHECK_THROWS_AS(phi_decode(*F, bad), std::invalid_argument);
}

TEST_CASE("quantale laws") {
  CHECK(check_quantale(*lawvere_quantale()).ok());
  CHECK(check_quantale(*strong_lawvere_quantale()).ok());
  CHECK(check_quantale(*boolean_quantale()).ok());
  PredicateQuantale bf2(std::make_shared<FiniteFrame>(frame_f2()));
  CHECK(bf2.samples().size() == 3);
  auto r = check_quantale(bf2);
  CHECK(r.ok());
  CHECK(r.find("tensor-distributes-over-join")->checked == 27);
  CHECK(check_quantale(PredicateQuantale(std::make_shared<FiniteFrame>(frame_lawvere4()))).ok());
}
