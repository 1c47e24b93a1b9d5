#include "lj/relation.hpp"

#include <sstream>
#include <stdexcept>

namespace lj {

bool WRelation::subset_of(const WRelation& o) const {
  if (nx_ != o.nx_ || ny_ != o.ny_) return false;
  for (std::size_t i = 0; i < m_.size(); ++i)
    if (m_[i] & ~o.m_[i]) return false;
  return true;
}

bool WRelation::empty() const {
  for (auto s : m_)
    if (s) return false;
  return true;
}

bool WRelation::monotone(const FiniteFrame& F) const {
  for (auto s : m_)
    if (!F.is_upset(s)) return false;
  return true;
}

std::string WRelation::show(const FiniteFrame& F) const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int x = 0; x < nx_; ++x)
    for (int y = 0; y < ny_; ++y)
      if (at(x, y)) {
        os << (first ? "" : ", ") << "(" << x << "," << y << ")@" << F.show(at(x, y));
        first = false;
      }
  os << "}";
  return os.str();
}

std::optional<std::tuple<int, int, int>> missing_triple(const WRelation& a, const WRelation& b) {
  for (int x = 0; x < a.nx(); ++x)
    for (int y = 0; y < a.ny(); ++y) {
      WorldSet d = a.at(x, y) & ~(x < b.nx() && y < b.ny() ? b.at(x, y) : 0);
      if (d) return std::tuple{x, y, __builtin_ctzll(d)};
    }
  return std::nullopt;
}

WRelation monotone_close(const FiniteFrame& F, int nx, int ny,
                         const std::vector<std::tuple<int, int, int>>& triples) {
  WRelation r(nx, ny);
  for (auto [x, y, w] : triples) {
    if (x < 0 || x >= nx || y < 0 || y >= ny || w < 0 || w >= F.size())
      throw FrameError("triple out of range");
    r.set(x, y, r.at(x, y) | F.up(w));
  }
  return r;
}

WRelation monotone_close(const FiniteFrame& F, const std::vector<std::string>& xs,
                         const std::vector<std::string>& ys,
                         const std::vector<std::tuple<std::string, std::string, std::string>>& triples) {
  auto find = [](const std::vector<std::string>& v, const std::string& s) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == s) return static_cast<int>(i);
    throw FrameError("unknown element '" + s + "'");
  };
  std::vector<std::tuple<int, int, int>> idx;
  for (const auto& [x, y, w] : triples) idx.emplace_back(find(xs, x), find(ys, y), F.index_or_throw(w));
  return monotone_close(F, static_cast<int>(xs.size()), static_cast<int>(ys.size()), idx);
}

WRelation rel_compose(const FiniteFrame& F, const WRelation& R, const WRelation& S) {
  if (R.ny() != S.nx()) throw std::invalid_argument("rel_compose: carrier mismatch");
  WRelation out(R.nx(), S.ny());
  for (int x = 0; x < R.nx(); ++x)
    for (int z = 0; z < S.ny(); ++z) {
      WorldSet acc = 0;
      for (int y = 0; y < R.ny(); ++y) {
        WorldSet a = R.at(x, y), b = S.at(y, z);
        if (a && b) acc |= F.tensor(a, b);
      }
      out.set(x, z, acc);
    }
  return out;
}

WRelation rel_tensor(const FiniteFrame& F, const WRelation& R, const WRelation& S) {
  WRelation out(R.nx() * S.nx(), R.ny() * S.ny());
  for (int x = 0; x < R.nx(); ++x)
    for (int x2 = 0; x2 < S.nx(); ++x2)
      for (int y = 0; y < R.ny(); ++y)
        for (int y2 = 0; y2 < S.ny(); ++y2)
          out.set(x * S.nx() + x2, y * S.ny() + y2, F.tensor(R.at(x, y), S.at(x2, y2)));
  return out;
}

WRelation rel_converse(const WRelation& R) {
  WRelation out(R.ny(), R.nx());
  for (int x = 0; x < R.nx(); ++x)
    for (int y = 0; y < R.ny(); ++y) out.set(y, x, R.at(x, y));
  return out;
}

WRelation rel_identity(const FiniteFrame& F, int n) {
  WRelation out(n, n);
  for (int x = 0; x < n; ++x) out.set(x, x, F.all());
  return out;
}

WRelation rel_meet(const WRelation& R, const WRelation& S) {
  WRelation out(R.nx(), R.ny());
  for (int x = 0; x < R.nx(); ++x)
    for (int y = 0; y < R.ny(); ++y) out.set(x, y, R.at(x, y) & S.at(x, y));
  return out;
}

WRelation rel_join(const WRelation& R, const WRelation& S) {
  WRelation out(R.nx(), R.ny());
  for (int x = 0; x < R.nx(); ++x)
    for (int y = 0; y < R.ny(); ++y) out.set(x, y, R.at(x, y) | S.at(x, y));
  return out;
}

WRelation rel_graph(const FiniteFrame& F, const std::vector<int>& f, int ny) {
  WRelation out(static_cast<int>(f.size()), ny);
  for (std::size_t x = 0; x < f.size(); ++x) out.set(static_cast<int>(x), f[x], F.all());
  return out;
}

void for_each_relation(const FiniteFrame& F, int nx, int ny, const std::function<void(const WRelation&)>& fn) {
  const auto& ups = F.upsets();
  const int cells = nx * ny;
  std::vector<std::size_t> pick(cells, 0);
  WRelation r(nx, ny);
  for (int c = 0; c < cells; ++c) r.set(c / ny, c % ny, ups[0]);
  while (true) {
    fn(r);
    int c = 0;
    while (c < cells && ++pick[c] == ups.size()) {
      pick[c] = 0;
      r.set(c / ny, c % ny, ups[0]);
      ++c;
    }
    if (c == cells) break;
    r.set(c / ny, c % ny, ups[pick[c]]);
  }
}

std::vector<WRelation> all_relations(const FiniteFrame& F, int nx, int ny) {
  std::vector<WRelation> out;
  for_each_relation(F, nx, ny, [&](const WRelation& r) { out.push_back(r); });
  return out;
}

std::vector<std::vector<int>> all_functions(int n, int m) {
  std::vector<std::vector<int>> out;
  if (m == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  std::vector<int> f(n, 0);
  while (true) {
    out.push_back(f);
    int i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace lj
