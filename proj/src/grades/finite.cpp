#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "lj/grades.hpp"
#include "text.hpp"

namespace lj {

FiniteAlgebra::FiniteAlgebra(Tables t) : t_(std::move(t)) {
  const int n = size();
  if (n == 0) throw GradeError("algebra " + t_.name + ": empty carrier");
  auto square = [&](const auto& m) {
    if (static_cast<int>(m.size()) != n) return false;
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != n) return false;
    return true;
  };
  if (!square(t_.leq) || !square(t_.add) || !square(t_.mul))
    throw GradeError("algebra " + t_.name + ": tables have wrong size");
  for (auto* m : {&t_.add, &t_.mul})
    for (const auto& row : *m)
      for (int c : row)
        if (c < 0 || c >= n) throw GradeError("algebra " + t_.name + ": table entry out of range");
  for (int c : {t_.zero, t_.one, t_.top})
    if (c < 0 || c >= n) throw GradeError("algebra " + t_.name + ": constant out of range");

  lub_.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (!t_.leq[a][c] || !t_.leq[b][c]) continue;
        bool least = true;
        for (int d = 0; d < n && least; ++d)
          if (t_.leq[a][d] && t_.leq[b][d] && !t_.leq[c][d]) least = false;
        if (least) {
          lub_[a][b] = c;
          break;
        }
      }
}

bool FiniteAlgebra::member(const Grade& g) const {
  return g.parts.empty() && g.idx >= 0 && g.idx < size();
}

Grade FiniteAlgebra::join1(const Grade& j) const {
  int c = lub_[j.idx][t_.one];
  if (c < 0) throw GradeError("algebra " + t_.name + ": no join of " + show(j) + " with one");
  return Grade::atom(c);
}

std::optional<Grade> FiniteAlgebra::join(const Grade& a, const Grade& b) const {
  int c = lub_[a.idx][b.idx];
  if (c < 0) return std::nullopt;
  return Grade::atom(c);
}

std::optional<std::vector<Grade>> FiniteAlgebra::carrier() const {
  std::vector<Grade> out;
  for (int i = 0; i < size(); ++i) out.push_back(Grade::atom(i));
  return out;
}

std::optional<Grade> FiniteAlgebra::parse_literal(std::string_view s) const {
  for (int i = 0; i < size(); ++i)
    if (t_.elements[i] == s) return Grade::atom(i);
  return std::nullopt;
}

// ---- lattices ----

LatticeAlgebra::LatticeAlgebra(std::string name, std::vector<std::string> elements,
                               const std::vector<std::pair<std::string, std::string>>& covers)
    : FiniteAlgebra(build(std::move(name), std::move(elements), covers)) {}

FiniteAlgebra::Tables LatticeAlgebra::build(
    std::string name, std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& covers) {
  const int n = static_cast<int>(elements.size());
  if (n == 0) throw GradeError("lattice " + name + ": no elements");
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i)
    if (!idx.emplace(elements[i], i).second)
      throw GradeError("lattice " + name + ": duplicate element " + elements[i]);
  auto lookup = [&](const std::string& s) {
    auto it = idx.find(s);
    if (it == idx.end()) throw GradeError("lattice " + name + ": unknown element '" + s + "'");
    return it->second;
  };
  // lat[a][b]: a <= b in the security lattice
  std::vector<std::vector<bool>> lat(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) lat[a][a] = true;
  for (const auto& [a, b] : covers) lat[lookup(a)][lookup(b)] = true;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (lat[a][k] && lat[k][b]) lat[a][b] = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && lat[a][b] && lat[b][a])
        throw GradeError("lattice " + name + ": order has a cycle through " + elements[a] +
                         " and " + elements[b]);

  auto bound = [&](int a, int b, bool upper) {
    for (int c = 0; c < n; ++c) {
      bool is_bound = upper ? (lat[a][c] && lat[b][c]) : (lat[c][a] && lat[c][b]);
      if (!is_bound) continue;
      bool best = true;
      for (int d = 0; d < n && best; ++d) {
        bool other = upper ? (lat[a][d] && lat[b][d]) : (lat[d][a] && lat[d][b]);
        if (other && !(upper ? lat[c][d] : lat[d][c])) best = false;
      }
      if (best) return c;
    }
    throw GradeError("lattice " + name + ": " + elements[a] + " and " + elements[b] + " have no " +
                     (upper ? "join" : "meet"));
  };

  Tables t;
  t.name = std::move(name);
  t.elements = std::move(elements);
  t.leq.assign(n, std::vector<bool>(n));
  t.add.assign(n, std::vector<int>(n));
  t.mul.assign(n, std::vector<int>(n));
  int lat_top = 0, lat_bot = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      t.leq[a][b] = lat[b][a];
      t.add[a][b] = bound(a, b, false);
      t.mul[a][b] = bound(a, b, true);
    }
    lat_top = bound(lat_top, a, true);
    lat_bot = bound(lat_bot, a, false);
  }
  t.zero = lat_top;
  t.one = lat_bot;
  t.top = lat_bot;
  return t;
}

AlgebraPtr parse_lattice(std::string_view text, std::string name) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  int lineno = 0;
  for (auto raw : text::lines(text)) {
    ++lineno;
    auto line = text::trim(text::strip_comment(raw));
    if (line.empty()) continue;
    auto w = text::words(line);
    if (w.size() == 3 && w[1] == "<=") {
      covers.emplace_back(w[0], w[2]);
    } else if (w.size() == 1 && covers.empty()) {
      elements.push_back(w[0]);
    } else {
      throw GradeError(name + ":" + std::to_string(lineno) + ": expected an element name or 'a <= b'");
    }
  }
  return std::make_shared<LatticeAlgebra>(std::move(name), std::move(elements), covers);
}

AlgebraPtr load_lattice(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw GradeError("cannot read lattice file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lattice(ss.str(), "lattice:" + file.filename().string());
}

AlgebraPtr sec2_algebra() {
  static const AlgebraPtr a =
      std::make_shared<LatticeAlgebra>("sec2", std::vector<std::string>{"low", "high"},
                                       std::vector<std::pair<std::string, std::string>>{{"low", "high"}});
  return a;
}

AlgebraPtr trivial_algebra() {
  static const AlgebraPtr a = std::make_shared<FiniteAlgebra>(
      FiniteAlgebra::Tables{"trivial", {"*"}, {{true}}, {{0}}, {{0}}, 0, 0, 0});
  return a;
}

FiniteFrame self_frame(const FiniteAlgebra& A) {
  const auto& t = A.tables();
  const int n = A.size();
  std::vector<std::pair<int, int>> order;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t.leq[a][b]) order.emplace_back(a, b);
  return FiniteFrame(t.name, t.elements, order, t.add, t.zero);
}

// ---- endomorphisms ----

std::vector<std::vector<int>> monotone_endomaps(const FiniteFrame& f) {
  const int n = f.size();
  std::vector<std::vector<int>> out;
  std::vector<int> h(n, 0);
  while (true) {
    bool mono = true;
    for (int a = 0; a < n && mono; ++a)
      for (int b = 0; b < n && mono; ++b)
        if (f.leq(a, b) && !f.leq(h[a], h[b])) mono = false;
    if (mono) out.push_back(h);
    int i = 0;
    while (i < n && ++h[i] == n) h[i++] = 0;
    if (i == n) break;
  }
  return out;
}

std::vector<std::vector<int>> strict_endomorphisms(const FiniteFrame& f) {
  std::vector<std::vector<int>> out;
  for (auto& h : monotone_endomaps(f)) {
    bool ok = h[f.unit()] == f.unit();
    for (int a = 0; a < f.size() && ok; ++a)
      for (int b = 0; b < f.size() && ok; ++b)
        if (h[f.op(a, b)] != f.op(h[a], h[b])) ok = false;
    if (ok) out.push_back(std::move(h));
  }
  return out;
}

namespace {

int find_map(const std::vector<std::vector<int>>& maps, const std::vector<int>& h,
             const std::string& what) {
  auto it = std::find(maps.begin(), maps.end(), h);
  if (it == maps.end()) throw GradeError("endomorphism carrier not closed under " + what);
  return static_cast<int>(it - maps.begin());
}

}  // namespace

EndAlgebra::EndAlgebra(FramePtr frame) : EndAlgebra(frame, strict_endomorphisms(*frame)) {}

EndAlgebra::EndAlgebra(FramePtr frame, std::vector<std::vector<int>> maps)
    : FiniteAlgebra(build(*frame, maps)), frame_(std::move(frame)), maps_(std::move(maps)) {}

FiniteAlgebra::Tables EndAlgebra::build(const FiniteFrame& f, const std::vector<std::vector<int>>& maps) {
  const int n = static_cast<int>(maps.size());
  const int w = f.size();
  Tables t;
  t.name = "end:" + f.name();
  std::vector<int> zero(w, f.unit()), id(w);
  for (int a = 0; a < w; ++a) id[a] = a;
  for (int i = 0; i < n; ++i) {
    const auto& h = maps[i];
    if (h == zero) t.elements.push_back("0");
    else if (h == id) t.elements.push_back("id");
    else {
      std::string s = "<";
      for (int a = 0; a < w; ++a) s += (a ? "," : "") + f.element(h[a]);
      t.elements.push_back(s + ">");
    }
  }
  t.leq.assign(n, std::vector<bool>(n));
  t.add.assign(n, std::vector<int>(n));
  t.mul.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      bool le = true;
      std::vector<int> sum(w), comp(w);
      for (int a = 0; a < w; ++a) {
        le = le && f.leq(maps[i][a], maps[k][a]);
        sum[a] = f.op(maps[i][a], maps[k][a]);
        comp[a] = maps[i][maps[k][a]];
      }
      t.leq[i][k] = le;
      t.add[i][k] = find_map(maps, sum, "pointwise addition");
      t.mul[i][k] = find_map(maps, comp, "composition");
    }
  t.zero = find_map(maps, zero, "the constant unit map");
  t.one = find_map(maps, id, "the identity");
  t.top = -1;
  for (int i = 0; i < n && t.top < 0; ++i) {
    bool is_top = true;
    for (int k = 0; k < n && is_top; ++k) is_top = t.leq[k][i];
    if (is_top) t.top = i;
  }
  if (t.top < 0) throw GradeError(t.name + ": no greatest endomorphism");
  t.elements[t.top] = t.elements[t.top] == "id" ? "id" : "top";
  return t;
}

}  // namespace lj
