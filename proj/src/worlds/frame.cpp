#include "lj/frame.hpp"

#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "text.hpp"

namespace lj {

FiniteFrame::FiniteFrame(std::string name, std::vector<std::string> elements,
                         const std::vector<std::pair<int, int>>& order,
                         std::vector<std::vector<int>> table, int unit)
    : name_(std::move(name)), elems_(std::move(elements)), table_(std::move(table)), unit_(unit) {
  const int n = size();
  if (n == 0) throw FrameError("frame " + name_ + ": no elements");
  if (n > 64) throw FrameError("frame " + name_ + ": more than 64 worlds");
  if (unit_ < 0 || unit_ >= n) throw FrameError("frame " + name_ + ": bad unit");
  if (static_cast<int>(table_.size()) != n)
    throw FrameError("frame " + name_ + ": monoid table has wrong size");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n)
      throw FrameError("frame " + name_ + ": monoid table has wrong size");
    for (int c : row)
      if (c < 0 || c >= n) throw FrameError("frame " + name_ + ": monoid table is not total");
  }

  leq_.assign(n * n, false);
  for (int a = 0; a < n; ++a) leq_[a * n + a] = true;
  for (auto [a, b] : order) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw FrameError("frame " + name_ + ": bad order pair");
    leq_[a * n + b] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (leq_[a * n + k] && leq_[k * n + b]) leq_[a * n + b] = true;

  auto bad = [&](const std::string& what) {
    throw FrameError("frame " + name_ + ": " + what);
  };
  for (int a = 0; a < n; ++a) {
    if (!leq(unit_, a)) bad("unit " + elems_[unit_] + " is not below " + elems_[a]);
    if (op(unit_, a) != a) bad("unit law fails at " + elems_[a]);
    for (int b = 0; b < n; ++b) {
      if (op(a, b) != op(b, a)) bad("not commutative at " + elems_[a] + " . " + elems_[b]);
      for (int c = 0; c < n; ++c)
        if (op(op(a, b), c) != op(a, op(b, c)))
          bad("not associative at " + elems_[a] + ", " + elems_[b] + ", " + elems_[c]);
    }
  }
  for (int a = 0; a < n; ++a)
    for (int a2 = 0; a2 < n; ++a2)
      if (leq(a, a2))
        for (int b = 0; b < n; ++b)
          if (!leq(op(a, b), op(a2, b)))
            bad("monoid not monotone: " + elems_[a] + " <= " + elems_[a2] + " but " +
                elems_[op(a, b)] + " !<= " + elems_[op(a2, b)]);

  up_.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    all_ |= WorldSet(1) << a;
    for (int b = 0; b < n; ++b)
      if (leq(a, b)) up_[a] |= WorldSet(1) << b;
  }
  if (n <= 20) {
    for (WorldSet s = 0; s <= all_; ++s)
      if (is_upset(s)) upsets_.push_back(s);
  }
}

std::optional<int> FiniteFrame::index(std::string_view s) const {
  for (int i = 0; i < size(); ++i)
    if (elems_[i] == s) return i;
  return std::nullopt;
}

int FiniteFrame::index_or_throw(std::string_view s) const {
  auto i = index(s);
  if (!i) throw FrameError("frame " + name_ + ": unknown world '" + std::string(s) + "'");
  return *i;
}

WorldSet FiniteFrame::up_close(WorldSet s) const {
  WorldSet r = 0;
  for (int a = 0; a < size(); ++a)
    if (s >> a & 1) r |= up_[a];
  return r;
}

WorldSet FiniteFrame::tensor(WorldSet a, WorldSet b) const {
  WorldSet r = 0;
  for (int v = 0; v < size(); ++v) {
    if (!(a >> v & 1)) continue;
    for (int u = 0; u < size(); ++u)
      if (b >> u & 1) r |= up_[op(v, u)];
  }
  return r;
}

bool FiniteFrame::is_join_frame() const {
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) {
      int j = op(a, b);
      if (!leq(a, j) || !leq(b, j)) return false;
      for (int c = 0; c < size(); ++c)
        if (leq(a, c) && leq(b, c) && !leq(j, c)) return false;
    }
  return true;
}

std::string FiniteFrame::show(WorldSet s) const {
  std::string out = "{";
  bool first = true;
  for (int a = 0; a < size(); ++a)
    if (s >> a & 1) {
      if (!first) out += ",";
      out += elems_[a];
      first = false;
    }
  return out + "}";
}

std::string FiniteFrame::describe() const {
  std::ostringstream os;
  os << "elements:";
  for (const auto& e : elems_) os << ' ' << e;
  os << "\norder:\n";
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (a != b && leq(a, b)) os << "  " << elems_[a] << " <= " << elems_[b] << '\n';
  os << "monoid:\n";
  for (int a = 0; a < size(); ++a)
    for (int b = a; b < size(); ++b)
      os << "  " << elems_[a] << " . " << elems_[b] << " = " << elems_[op(a, b)] << '\n';
  os << "unit: " << elems_[unit_] << '\n';
  return os.str();
}

FiniteFrame parse_frame(std::string_view text, std::string name) {
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> order;
  std::vector<std::array<std::string, 3>> monoid;
  std::string unit;
  enum { None, Order, Monoid } block = None;
  int lineno = 0;
  for (auto raw : text::lines(text)) {
    ++lineno;
    auto line = text::trim(text::strip_comment(raw));
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw FrameError(name + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (text::starts_with(line, "elements:")) {
      for (auto& w : text::words(line.substr(9))) elems.push_back(w);
      block = None;
    } else if (text::starts_with(line, "order:")) {
      block = Order;
      if (auto rest = text::trim(line.substr(6)); !rest.empty()) fail("expected order lines below 'order:'");
    } else if (text::starts_with(line, "monoid:")) {
      block = Monoid;
      if (auto rest = text::trim(line.substr(7)); !rest.empty()) fail("expected monoid lines below 'monoid:'");
    } else if (text::starts_with(line, "unit:")) {
      unit = std::string(text::trim(line.substr(5)));
      block = None;
    } else if (block == Order) {
      auto w = text::words(line);
      if (w.size() != 3 || w[1] != "<=") fail("expected 'a <= b'");
      order.emplace_back(w[0], w[2]);
    } else if (block == Monoid) {
      auto w = text::words(line);
      if (w.size() != 5 || w[1] != "." || w[3] != "=") fail("expected 'a . b = c'");
      monoid.push_back({w[0], w[2], w[4]});
    } else {
      fail("unexpected line '" + std::string(line) + "'");
    }
  }
  const int n = static_cast<int>(elems.size());
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i) {
    if (!idx.emplace(elems[i], i).second) throw FrameError(name + ": duplicate element " + elems[i]);
  }
  auto lookup = [&](const std::string& s) {
    auto it = idx.find(s);
    if (it == idx.end()) throw FrameError(name + ": unknown element '" + s + "'");
    return it->second;
  };
  std::vector<std::pair<int, int>> ord;
  for (auto& [a, b] : order) ord.emplace_back(lookup(a), lookup(b));
  std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
  for (auto& [a, b, c] : monoid) {
    int ia = lookup(a), ib = lookup(b), ic = lookup(c);
    for (auto [x, y] : {std::pair{ia, ib}, std::pair{ib, ia}}) {
      if (table[x][y] != -1 && table[x][y] != ic)
        throw FrameError(name + ": conflicting monoid entries for " + a + " . " + b);
      table[x][y] = ic;
    }
  }
  if (unit.empty()) throw FrameError(name + ": missing unit");
  int u = lookup(unit);
  for (int a = 0; a < n; ++a) {
    if (table[u][a] == -1) table[u][a] = table[a][u] = a;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table[a][b] == -1)
        throw FrameError(name + ": monoid entry missing for " + elems[a] + " . " + elems[b]);
  return FiniteFrame(std::move(name), std::move(elems), ord, std::move(table), u);
}

FiniteFrame load_frame(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw FrameError("cannot read frame file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_frame(ss.str(), file.stem().string());
}

namespace {

FiniteFrame max_chain(std::string name, int n) {
  std::vector<std::string> el;
  std::vector<std::pair<int, int>> ord;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    el.push_back(std::to_string(a));
    if (a + 1 < n) ord.emplace_back(a, a + 1);
    for (int b = 0; b < n; ++b) t[a][b] = std::max(a, b);
  }
  return FiniteFrame(std::move(name), el, ord, t, 0);
}

}  // namespace

FiniteFrame frame_unit() { return FiniteFrame("unit", {"*"}, {}, {{0}}, 0); }
FiniteFrame frame_f2() { return max_chain("F2", 2); }
FiniteFrame frame_chain3() { return max_chain("chain3", 3); }

FiniteFrame frame_lawvere4() {
  // worlds count halves: 0, 1, 2 halves, and 3 or more halves collapse to inf
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = std::min(a + b, 3);
  return FiniteFrame("lawvere4", {"0", "0.5", "1", "inf"}, {{0, 1}, {1, 2}, {2, 3}}, t, 0);
}

FramePtr named_frame(std::string_view name, const std::filesystem::path& base) {
  if (name == "unit") return std::make_shared<FiniteFrame>(frame_unit());
  if (name == "F2" || name == "f2") return std::make_shared<FiniteFrame>(frame_f2());
  if (name == "chain3") return std::make_shared<FiniteFrame>(frame_chain3());
  if (name == "lawvere4") return std::make_shared<FiniteFrame>(frame_lawvere4());
  std::filesystem::path p(name);
  if (p.is_relative() && !base.empty()) p = base / p;
  return std::make_shared<FiniteFrame>(load_frame(p));
}

}  // namespace lj
