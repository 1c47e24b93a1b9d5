#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lj/frame.hpp"
#include "lj/rational.hpp"
#include "lj/report.hpp"

namespace lj {

struct GradeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A grade of some algebra. Which fields are meaningful depends on the algebra:
// numeric algebras use `num`, finite-table algebras use `idx`, and intervals and
// products keep their two components in `parts`.
struct Grade {
  ExtRat num;
  int idx = -1;
  std::vector<Grade> parts;

  static Grade number(ExtRat r) { return Grade{r, -1, {}}; }
  static Grade atom(int i) { return Grade{ExtRat(0), i, {}}; }
  static Grade pair(Grade a, Grade b) { return Grade{ExtRat(0), -1, {std::move(a), std::move(b)}}; }

  friend bool operator==(const Grade& a, const Grade& b) {
    return a.num == b.num && a.idx == b.idx && a.parts == b.parts;
  }
};

// Preordered semiring with top, plus the join with one. Implementations are
// immutable once built.
class GradeAlgebra {
 public:
  virtual ~GradeAlgebra() = default;

  virtual std::string name() const = 0;
  virtual bool member(const Grade& g) const = 0;

  virtual bool leq(const Grade& a, const Grade& b) const = 0;
  virtual Grade add(const Grade& a, const Grade& b) const = 0;
  virtual Grade mul(const Grade& a, const Grade& b) const = 0;
  virtual Grade zero() const = 0;
  virtual Grade one() const = 0;
  virtual Grade top() const = 0;
  // least upper bound of j and one
  virtual Grade join1(const Grade& j) const = 0;
  // least upper bound of a and b, when one exists
  virtual std::optional<Grade> join(const Grade& a, const Grade& b) const = 0;

  // full carrier for finite algebras
  virtual std::optional<std::vector<Grade>> carrier() const = 0;
  // pseudo-random samples; finite algebras return their carrier
  virtual std::vector<Grade> sample(std::mt19937_64& rng, std::size_t n) const;
  // extra candidates d with u + d equivalent to g (u <= g), e.g. g - u
  virtual std::vector<Grade> slack_hints(const Grade& u, const Grade& g) const;

  virtual std::string show(const Grade& g) const = 0;
  // parses a literal; `top`, `0` and `1` are accepted by every algebra
  Grade parse(std::string_view s) const;

  bool equiv(const Grade& a, const Grade& b) const { return leq(a, b) && leq(b, a); }
  bool lt(const Grade& a, const Grade& b) const { return leq(a, b) && !leq(b, a); }

 protected:
  virtual std::optional<Grade> parse_literal(std::string_view s) const = 0;
};

using AlgebraPtr = std::shared_ptr<const GradeAlgebra>;

// Checked operations: throw GradeError("algebra mismatch ...") on foreign operands.
Grade g_add(const GradeAlgebra& A, const Grade& x, const Grade& y);
Grade g_mul(const GradeAlgebra& A, const Grade& x, const Grade& y);
bool g_leq(const GradeAlgebra& A, const Grade& x, const Grade& y);
Grade g_join1(const GradeAlgebra& A, const Grade& j);

// Semiring axioms, monotonicity, bounds, join-with-one and slack decomposability over
// `samples` (all pairs; triple laws over all triples up to `max_triples`, otherwise a
// seeded random selection of that many).
LawReport check_algebra(const GradeAlgebra& A, const std::vector<Grade>& samples,
                        std::size_t max_triples = 10'000'000);

// ---- shipped instances ----

// Extended naturals N u {inf}.
class NatInfAlgebra final : public GradeAlgebra {
 public:
  std::string name() const override { return "natinf"; }
  bool member(const Grade& g) const override;
  bool leq(const Grade& a, const Grade& b) const override { return a.num <= b.num; }
  Grade add(const Grade& a, const Grade& b) const override { return Grade::number(a.num + b.num); }
  Grade mul(const Grade& a, const Grade& b) const override { return Grade::number(a.num * b.num); }
  Grade zero() const override { return Grade::number(0); }
  Grade one() const override { return Grade::number(1); }
  Grade top() const override { return Grade::number(ExtRat::inf()); }
  Grade join1(const Grade& j) const override;
  std::optional<Grade> join(const Grade& a, const Grade& b) const override;
  std::optional<std::vector<Grade>> carrier() const override { return std::nullopt; }
  std::vector<Grade> sample(std::mt19937_64& rng, std::size_t n) const override;
  std::vector<Grade> slack_hints(const Grade& u, const Grade& g) const override;
  std::string show(const Grade& g) const override { return g.num.str(); }

 protected:
  std::optional<Grade> parse_literal(std::string_view s) const override;
};

// Non-negative rationals with inf, standing in for [0, inf].
class ExtRealAlgebra final : public GradeAlgebra {
 public:
  std::string name() const override { return "extreal"; }
  bool member(const Grade& g) const override;
  bool leq(const Grade& a, const Grade& b) const override { return a.num <= b.num; }
  Grade add(const Grade& a, const Grade& b) const override { return Grade::number(a.num + b.num); }
  Grade mul(const Grade& a, const Grade& b) const override { return Grade::number(a.num * b.num); }
  Grade zero() const override { return Grade::number(0); }
  Grade one() const override { return Grade::number(1); }
  Grade top() const override { return Grade::number(ExtRat::inf()); }
  Grade join1(const Grade& j) const override;
  std::optional<Grade> join(const Grade& a, const Grade& b) const override;
  std::optional<std::vector<Grade>> carrier() const override { return std::nullopt; }
  std::vector<Grade> sample(std::mt19937_64& rng, std::size_t n) const override;
  std::vector<Grade> slack_hints(const Grade& u, const Grade& g) const override;
  std::string show(const Grade& g) const override { return g.num.str(); }

 protected:
  std::optional<Grade> parse_literal(std::string_view s) const override;
};

// Algebra given by explicit tables over named elements.
class FiniteAlgebra : public GradeAlgebra {
 public:
  struct Tables {
    std::string name;
    std::vector<std::string> elements;
    std::vector<std::vector<bool>> leq;
    std::vector<std::vector<int>> add, mul;
    int zero = 0, one = 0, top = 0;
  };
  explicit FiniteAlgebra(Tables t);

  std::string name() const override { return t_.name; }
  bool member(const Grade& g) const override;
  bool leq(const Grade& a, const Grade& b) const override { return t_.leq[a.idx][b.idx]; }
  Grade add(const Grade& a, const Grade& b) const override { return Grade::atom(t_.add[a.idx][b.idx]); }
  Grade mul(const Grade& a, const Grade& b) const override { return Grade::atom(t_.mul[a.idx][b.idx]); }
  Grade zero() const override { return Grade::atom(t_.zero); }
  Grade one() const override { return Grade::atom(t_.one); }
  Grade top() const override { return Grade::atom(t_.top); }
  // throws GradeError when the tables admit no join with one
  Grade join1(const Grade& j) const override;
  std::optional<Grade> join(const Grade& a, const Grade& b) const override;
  std::optional<std::vector<Grade>> carrier() const override;
  std::string show(const Grade& g) const override { return t_.elements.at(g.idx); }

  int size() const { return static_cast<int>(t_.elements.size()); }
  const Tables& tables() const { return t_; }

 protected:
  std::optional<Grade> parse_literal(std::string_view s) const override;

 private:
  Tables t_;
  std::vector<std::vector<int>> lub_;  // -1 when absent
};

// Distributive security lattice read as a grade algebra: the grade order is the
// opposite of the lattice order, add = meet, mul = join, zero = lattice top and
// one = lattice bottom.
class LatticeAlgebra final : public FiniteAlgebra {
 public:
  // `covers` are pairs (a, b) meaning a <= b in the security lattice.
  LatticeAlgebra(std::string name, std::vector<std::string> elements,
                 const std::vector<std::pair<std::string, std::string>>& covers);

  // lattice order (not the grade order)
  bool lattice_leq(int a, int b) const { return tables().leq[b][a]; }

 private:
  static Tables build(std::string name, std::vector<std::string> elements,
                      const std::vector<std::pair<std::string, std::string>>& covers);
};

// Pointwise intervals [a, b] with a <= b over a base algebra.
class IntervalAlgebra final : public GradeAlgebra {
 public:
  explicit IntervalAlgebra(AlgebraPtr base) : base_(std::move(base)) {}
  std::string name() const override { return "interval:" + base_->name(); }
  bool member(const Grade& g) const override;
  bool leq(const Grade& a, const Grade& b) const override;
  Grade add(const Grade& a, const Grade& b) const override;
  Grade mul(const Grade& a, const Grade& b) const override;
  Grade zero() const override;
  Grade one() const override;
  Grade top() const override;
  Grade join1(const Grade& j) const override;
  std::optional<Grade> join(const Grade& a, const Grade& b) const override;
  std::optional<std::vector<Grade>> carrier() const override;
  std::vector<Grade> sample(std::mt19937_64& rng, std::size_t n) const override;
  std::vector<Grade> slack_hints(const Grade& u, const Grade& g) const override;
  std::string show(const Grade& g) const override;
  const GradeAlgebra& base() const { return *base_; }

 protected:
  std::optional<Grade> parse_literal(std::string_view s) const override;

 private:
  AlgebraPtr base_;
};

// Pointwise product of two algebras.
class ProductAlgebra final : public GradeAlgebra {
 public:
  ProductAlgebra(AlgebraPtr a, AlgebraPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override { return "product:" + a_->name() + "," + b_->name(); }
  bool member(const Grade& g) const override;
  bool leq(const Grade& a, const Grade& b) const override;
  Grade add(const Grade& a, const Grade& b) const override;
  Grade mul(const Grade& a, const Grade& b) const override;
  Grade zero() const override;
  Grade one() const override;
  Grade top() const override;
  Grade join1(const Grade& j) const override;
  std::optional<Grade> join(const Grade& a, const Grade& b) const override;
  std::optional<std::vector<Grade>> carrier() const override;
  std::vector<Grade> sample(std::mt19937_64& rng, std::size_t n) const override;
  std::vector<Grade> slack_hints(const Grade& u, const Grade& g) const override;
  std::string show(const Grade& g) const override;
  const GradeAlgebra& first() const { return *a_; }
  const GradeAlgebra& second() const { return *b_; }

 protected:
  std::optional<Grade> parse_literal(std::string_view s) const override;

 private:
  AlgebraPtr a_, b_;
};

// End(W): strict monoid endomorphisms of a finite frame (monotone, h(e) = e,
// h(a.b) = h(a).h(b)). add is pointwise ., mul is composition (h*g)(w) = h(g(w)),
// zero is the constant-unit map, one the identity, top the largest endomorphism.
class EndAlgebra final : public FiniteAlgebra {
 public:
  explicit EndAlgebra(FramePtr frame);
  const FiniteFrame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  // image of world w under the endomorphism g
  int apply(const Grade& g, int w) const { return maps_.at(g.idx).at(w); }
  const std::vector<std::vector<int>>& maps() const { return maps_; }

 private:
  EndAlgebra(FramePtr frame, std::vector<std::vector<int>> maps);
  static Tables build(const FiniteFrame& f, const std::vector<std::vector<int>>& maps);
  FramePtr frame_;
  std::vector<std::vector<int>> maps_;
};

// every monotone endomap of the frame, as image tables
std::vector<std::vector<int>> monotone_endomaps(const FiniteFrame& f);
// the strict monoid endomorphisms among them
std::vector<std::vector<int>> strict_endomorphisms(const FiniteFrame& f);

AlgebraPtr trivial_algebra();
AlgebraPtr natinf_algebra();
AlgebraPtr extreal_algebra();
AlgebraPtr sec2_algebra();  // low <= high
AlgebraPtr load_lattice(const std::filesystem::path& file);
AlgebraPtr parse_lattice(std::string_view text, std::string name);

// trivial | natinf | extreal | sec2 | lattice:<file> | interval:<base> |
// product:<a>,<b> | end:<frame>; relative files resolve against `base_dir`.
AlgebraPtr make_algebra(std::string_view name, const std::filesystem::path& base_dir = {});

// The frame (J, <=, +, 0) of a finite algebra. For a security lattice this is the
// security frame (L, >=, meet, top).
FiniteFrame self_frame(const FiniteAlgebra& A);

}  // namespace lj
