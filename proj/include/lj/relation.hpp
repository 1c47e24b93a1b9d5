#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lj/frame.hpp"

namespace lj {

// Monotone ternary relation R <= X x Y x W over index carriers X = [0, nx) and
// Y = [0, ny), stored as one up-closed world set per pair.
class WRelation {
 public:
  WRelation() = default;
  WRelation(int nx, int ny) : nx_(nx), ny_(ny), m_(static_cast<std::size_t>(nx) * ny, 0) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  WorldSet at(int x, int y) const { return m_[static_cast<std::size_t>(x) * ny_ + y]; }
  bool has(int x, int y, int w) const { return at(x, y) >> w & 1; }
  // raw write; callers keep the set up-closed
  void set(int x, int y, WorldSet s) { m_[static_cast<std::size_t>(x) * ny_ + y] = s; }

  bool subset_of(const WRelation& o) const;
  bool empty() const;
  friend bool operator==(const WRelation& a, const WRelation& b) = default;

  bool monotone(const FiniteFrame& F) const;
  std::string show(const FiniteFrame& F) const;

 private:
  int nx_ = 0, ny_ = 0;
  std::vector<WorldSet> m_;
};

// First (x, y, w) in `a` but not in `b`, if any.
std::optional<std::tuple<int, int, int>> missing_triple(const WRelation& a, const WRelation& b);

// Smallest monotone relation containing the triples (x, y, w).
WRelation monotone_close(const FiniteFrame& F, int nx, int ny,
                         const std::vector<std::tuple<int, int, int>>& triples);
// Same with named elements; throws FrameError on unknown names.
WRelation monotone_close(const FiniteFrame& F, const std::vector<std::string>& xs,
                         const std::vector<std::string>& ys,
                         const std::vector<std::tuple<std::string, std::string, std::string>>& triples);

// (R;S)(x,z,w) iff exists y, v, u with w >= v.u, R(x,y,v) and S(y,z,u)
WRelation rel_compose(const FiniteFrame& F, const WRelation& R, const WRelation& S);
// pairs are indexed as x * n' + x'
WRelation rel_tensor(const FiniteFrame& F, const WRelation& R, const WRelation& S);
WRelation rel_converse(const WRelation& R);
WRelation rel_identity(const FiniteFrame& F, int n);
WRelation rel_meet(const WRelation& R, const WRelation& S);
WRelation rel_join(const WRelation& R, const WRelation& S);
// graph of f : [0,nx) -> [0,ny), related at every world
WRelation rel_graph(const FiniteFrame& F, const std::vector<int>& f, int ny);

// Calls `fn` on every monotone relation of the given shape.
void for_each_relation(const FiniteFrame& F, int nx, int ny, const std::function<void(const WRelation&)>& fn);
std::vector<WRelation> all_relations(const FiniteFrame& F, int nx, int ny);
// all functions [0,n) -> [0,m)
std::vector<std::vector<int>> all_functions(int n, int m);

}  // namespace lj
