#include "lj/grades.hpp"
#include "text.hpp"

namespace lj {

namespace {

// "[a,b]" or "(a,b)" -> {"a", "b"}
std::optional<std::pair<std::string, std::string>> split_pair(std::string_view s, char open, char close) {
  s = text::trim(s);
  if (s.size() < 2 || s.front() != open || s.back() != close) return std::nullopt;
  auto parts = text::split_top(s.substr(1, s.size() - 2), ',');
  if (parts.size() != 2) return std::nullopt;
  return std::pair{parts[0], parts[1]};
}

}  // namespace

// ---- intervals ----

bool IntervalAlgebra::member(const Grade& g) const {
  return g.parts.size() == 2 && base_->member(g.parts[0]) && base_->member(g.parts[1]) &&
         base_->leq(g.parts[0], g.parts[1]);
}

bool IntervalAlgebra::leq(const Grade& a, const Grade& b) const {
  return base_->leq(a.parts[0], b.parts[0]) && base_->leq(a.parts[1], b.parts[1]);
}

Grade IntervalAlgebra::add(const Grade& a, const Grade& b) const {
  return Grade::pair(base_->add(a.parts[0], b.parts[0]), base_->add(a.parts[1], b.parts[1]));
}

Grade IntervalAlgebra::mul(const Grade& a, const Grade& b) const {
  return Grade::pair(base_->mul(a.parts[0], b.parts[0]), base_->mul(a.parts[1], b.parts[1]));
}

Grade IntervalAlgebra::zero() const { return Grade::pair(base_->zero(), base_->zero()); }
Grade IntervalAlgebra::one() const { return Grade::pair(base_->one(), base_->one()); }
Grade IntervalAlgebra::top() const { return Grade::pair(base_->top(), base_->top()); }

Grade IntervalAlgebra::join1(const Grade& j) const {
  return Grade::pair(base_->join1(j.parts[0]), base_->join1(j.parts[1]));
}

std::optional<Grade> IntervalAlgebra::join(const Grade& a, const Grade& b) const {
  auto lo = base_->join(a.parts[0], b.parts[0]);
  auto hi = base_->join(a.parts[1], b.parts[1]);
  if (!lo || !hi) return std::nullopt;
  return Grade::pair(*lo, *hi);
}

std::optional<std::vector<Grade>> IntervalAlgebra::carrier() const {
  auto c = base_->carrier();
  if (!c) return std::nullopt;
  std::vector<Grade> out;
  for (const auto& a : *c)
    for (const auto& b : *c)
      if (base_->leq(a, b)) out.push_back(Grade::pair(a, b));
  return out;
}

std::vector<Grade> IntervalAlgebra::sample(std::mt19937_64& rng, std::size_t n) const {
  if (auto c = carrier()) return *c;
  auto pts = base_->sample(rng, n);
  std::vector<Grade> out{zero(), one(), top()};
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  while (out.size() < n) {
    Grade a = pts[pick(rng)], b = pts[pick(rng)];
    if (base_->leq(a, b)) out.push_back(Grade::pair(a, b));
    else if (base_->leq(b, a)) out.push_back(Grade::pair(b, a));
  }
  out.resize(n);
  return out;
}

std::vector<Grade> IntervalAlgebra::slack_hints(const Grade& u, const Grade& g) const {
  std::vector<Grade> out;
  for (const auto& lo : base_->slack_hints(u.parts[0], g.parts[0]))
    for (const auto& hi : base_->slack_hints(u.parts[1], g.parts[1]))
      if (base_->leq(lo, hi)) out.push_back(Grade::pair(lo, hi));
  return out;
}

std::string IntervalAlgebra::show(const Grade& g) const {
  return "[" + base_->show(g.parts[0]) + "," + base_->show(g.parts[1]) + "]";
}

std::optional<Grade> IntervalAlgebra::parse_literal(std::string_view s) const {
  auto p = split_pair(s, '[', ']');
  if (!p) return std::nullopt;
  Grade g = Grade::pair(base_->parse(p->first), base_->parse(p->second));
  if (!member(g)) return std::nullopt;
  return g;
}

// ---- products ----

bool ProductAlgebra::member(const Grade& g) const {
  return g.parts.size() == 2 && a_->member(g.parts[0]) && b_->member(g.parts[1]);
}

bool ProductAlgebra::leq(const Grade& x, const Grade& y) const {
  return a_->leq(x.parts[0], y.parts[0]) && b_->leq(x.parts[1], y.parts[1]);
}

Grade ProductAlgebra::add(const Grade& x, const Grade& y) const {
  return Grade::pair(a_->add(x.parts[0], y.parts[0]), b_->add(x.parts[1], y.parts[1]));
}

Grade ProductAlgebra::mul(const Grade& x, const Grade& y) const {
  return Grade::pair(a_->mul(x.parts[0], y.parts[0]), b_->mul(x.parts[1], y.parts[1]));
}

Grade ProductAlgebra::zero() const { return Grade::pair(a_->zero(), b_->zero()); }
Grade ProductAlgebra::one() const { return Grade::pair(a_->one(), b_->one()); }
Grade ProductAlgebra::top() const { return Grade::pair(a_->top(), b_->top()); }

Grade ProductAlgebra::join1(const Grade& j) const {
  return Grade::pair(a_->join1(j.parts[0]), b_->join1(j.parts[1]));
}

std::optional<Grade> ProductAlgebra::join(const Grade& x, const Grade& y) const {
  auto l = a_->join(x.parts[0], y.parts[0]);
  auto r = b_->join(x.parts[1], y.parts[1]);
  if (!l || !r) return std::nullopt;
  return Grade::pair(*l, *r);
}

std::optional<std::vector<Grade>> ProductAlgebra::carrier() const {
  auto ca = a_->carrier(), cb = b_->carrier();
  if (!ca || !cb) return std::nullopt;
  std::vector<Grade> out;
  for (const auto& x : *ca)
    for (const auto& y : *cb) out.push_back(Grade::pair(x, y));
  return out;
}

std::vector<Grade> ProductAlgebra::sample(std::mt19937_64& rng, std::size_t n) const {
  if (auto c = carrier()) return *c;
  auto xs = a_->sample(rng, n), ys = b_->sample(rng, n);
  std::vector<Grade> out{zero(), one(), top()};
  std::uniform_int_distribution<std::size_t> px(0, xs.size() - 1), py(0, ys.size() - 1);
  while (out.size() < n) out.push_back(Grade::pair(xs[px(rng)], ys[py(rng)]));
  out.resize(n);
  return out;
}

std::vector<Grade> ProductAlgebra::slack_hints(const Grade& u, const Grade& g) const {
  auto l = a_->slack_hints(u.parts[0], g.parts[0]);
  auto r = b_->slack_hints(u.parts[1], g.parts[1]);
  // finite components have no hint: their whole carrier is a candidate set
  if (l.empty()) l = a_->carrier().value_or(std::vector<Grade>{});
  if (r.empty()) r = b_->carrier().value_or(std::vector<Grade>{});
  std::vector<Grade> out;
  for (const auto& x : l)
    for (const auto& y : r) out.push_back(Grade::pair(x, y));
  return out;
}

std::string ProductAlgebra::show(const Grade& g) const {
  return "(" + a_->show(g.parts[0]) + "," + b_->show(g.parts[1]) + ")";
}

std::optional<Grade> ProductAlgebra::parse_literal(std::string_view s) const {
  auto p = split_pair(s, '(', ')');
  if (!p) return std::nullopt;
  return Grade::pair(a_->parse(p->first), b_->parse(p->second));
}

// ---- generic ----

std::vector<Grade> GradeAlgebra::sample(std::mt19937_64&, std::size_t) const {
  auto c = carrier();
  if (!c) throw GradeError("algebra " + name() + " has no sampler");
  return *c;
}

std::vector<Grade> GradeAlgebra::slack_hints(const Grade&, const Grade&) const { return {}; }

Grade GradeAlgebra::parse(std::string_view s) const {
  s = text::trim(s);
  if (s == "top") return top();
  auto g = parse_literal(s);
  if (!g && s == "0") return zero();
  if (!g && s == "1") return one();
  if (!g) throw GradeError("malformed grade literal '" + std::string(s) + "' for algebra " + name());
  return *g;
}

namespace {

void require(const GradeAlgebra& A, const Grade& g) {
  if (!A.member(g)) throw GradeError("algebra mismatch: operand is not a grade of " + A.name());
}

}  // namespace

Grade g_add(const GradeAlgebra& A, const Grade& x, const Grade& y) {
  require(A, x);
  require(A, y);
  return A.add(x, y);
}

Grade g_mul(const GradeAlgebra& A, const Grade& x, const Grade& y) {
  require(A, x);
  require(A, y);
  return A.mul(x, y);
}

bool g_leq(const GradeAlgebra& A, const Grade& x, const Grade& y) {
  require(A, x);
  require(A, y);
  return A.leq(x, y);
}

Grade g_join1(const GradeAlgebra& A, const Grade& j) {
  require(A, j);
  return A.join1(j);
}

AlgebraPtr natinf_algebra() {
  static const AlgebraPtr a = std::make_shared<NatInfAlgebra>();
  return a;
}

AlgebraPtr extreal_algebra() {
  static const AlgebraPtr a = std::make_shared<ExtRealAlgebra>();
  return a;
}

AlgebraPtr make_algebra(std::string_view name, const std::filesystem::path& base_dir) {
  name = text::trim(name);
  auto resolve = [&](std::string_view file) {
    std::filesystem::path p(file);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return p;
  };
  if (name == "trivial") return trivial_algebra();
  if (name == "natinf") return natinf_algebra();
  if (name == "extreal") return extreal_algebra();
  if (name == "sec2") return sec2_algebra();
  if (text::starts_with(name, "lattice:")) return load_lattice(resolve(name.substr(8)));
  if (text::starts_with(name, "interval:"))
    return std::make_shared<IntervalAlgebra>(make_algebra(name.substr(9), base_dir));
  if (text::starts_with(name, "end:"))
    return std::make_shared<EndAlgebra>(named_frame(name.substr(4), base_dir));
  if (text::starts_with(name, "product:")) {
    auto rest = name.substr(8);
    // split at the first top-level comma whose left side names a whole algebra
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (rest[i] != ',') continue;
      try {
        auto a = make_algebra(rest.substr(0, i), base_dir);
        auto b = make_algebra(rest.substr(i + 1), base_dir);
        return std::make_shared<ProductAlgebra>(a, b);
      } catch (const GradeError&) {
      } catch (const FrameError&) {
      }
    }
    throw GradeError("malformed product algebra name '" + std::string(name) + "'");
  }
  throw GradeError("unknown algebra '" + std::string(name) + "'");
}

}  // namespace lj
