#include "lj/grades.hpp"

namespace lj {

bool NatInfAlgebra::member(const Grade& g) const {
  return g.idx == -1 && g.parts.empty() && (g.num.is_inf() || g.num.is_integer());
}

Grade NatInfAlgebra::join1(const Grade& j) const { return Grade::number(max(j.num, ExtRat(1))); }

std::optional<Grade> NatInfAlgebra::join(const Grade& a, const Grade& b) const {
  return Grade::number(max(a.num, b.num));
}

std::vector<Grade> NatInfAlgebra::sample(std::mt19937_64& rng, std::size_t n) const {
  std::vector<Grade> out{zero(), one(), top()};
  std::uniform_int_distribution<int> small(0, 12), big(0, 1000), pick(0, 9);
  while (out.size() < n) {
    int k = pick(rng);
    if (k == 0) out.push_back(top());
    else if (k < 7) out.push_back(Grade::number(small(rng)));
    else out.push_back(Grade::number(big(rng)));
  }
  out.resize(n);
  return out;
}

std::vector<Grade> NatInfAlgebra::slack_hints(const Grade& u, const Grade& g) const {
  return {Grade::number(g.num.monus(u.num))};
}

std::optional<Grade> NatInfAlgebra::parse_literal(std::string_view s) const {
  auto r = ExtRat::parse(s);
  if (!r || !(r->is_inf() || r->is_integer())) return std::nullopt;
  return Grade::number(*r);
}

bool ExtRealAlgebra::member(const Grade& g) const { return g.idx == -1 && g.parts.empty(); }

Grade ExtRealAlgebra::join1(const Grade& j) const { return Grade::number(max(j.num, ExtRat(1))); }

std::optional<Grade> ExtRealAlgebra::join(const Grade& a, const Grade& b) const {
  return Grade::number(max(a.num, b.num));
}

std::vector<Grade> ExtRealAlgebra::sample(std::mt19937_64& rng, std::size_t n) const {
  std::vector<Grade> out{zero(), one(), top(), Grade::number(ExtRat(1, 2))};
  static const std::int64_t dens[] = {1, 2, 3, 4, 5, 8, 10};
  std::uniform_int_distribution<int> num(0, 60), den(0, 6), pick(0, 11);
  while (out.size() < n) {
    if (pick(rng) == 0) out.push_back(top());
    else out.push_back(Grade::number(ExtRat(num(rng), dens[den(rng)])));
  }
  out.resize(n);
  return out;
}

std::vector<Grade> ExtRealAlgebra::slack_hints(const Grade& u, const Grade& g) const {
  return {Grade::number(g.num.monus(u.num))};
}

std::optional<Grade> ExtRealAlgebra::parse_literal(std::string_view s) const {
  auto r = ExtRat::parse(s);
  if (!r) return std::nullopt;
  return Grade::number(*r);
}

}  // namespace lj
