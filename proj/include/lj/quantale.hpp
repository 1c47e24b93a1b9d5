#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lj/frame.hpp"
#include "lj/rational.hpp"
#include "lj/relation.hpp"
#include "lj/report.hpp"

namespace lj {

// A quantale value. Lawvere-style quantales use `d`; predicate quantales B^W use `p`
// (an up-closed world set).
struct QVal {
  ExtRat d;
  WorldSet p = 0;
  friend bool operator==(const QVal& a, const QVal& b) { return a.d == b.d && a.p == b.p; }
};

class Quantale {
 public:
  virtual ~Quantale() = default;
  virtual std::string name() const = 0;
  virtual bool leq(const QVal& a, const QVal& b) const = 0;
  virtual QVal join(const QVal& a, const QVal& b) const = 0;
  virtual QVal meet(const QVal& a, const QVal& b) const = 0;
  virtual QVal tensor(const QVal& a, const QVal& b) const = 0;
  virtual QVal unit() const = 0;
  virtual QVal top() const = 0;
  virtual QVal bottom() const = 0;
  virtual bool member(const QVal& a) const = 0;
  virtual std::string show(const QVal& a) const = 0;
  // throws std::invalid_argument
  virtual QVal parse(std::string_view s) const = 0;
  // small sample for law checks (all elements when the carrier is finite)
  virtual std::vector<QVal> samples() const = 0;
};

using QuantalePtr = std::shared_ptr<const Quantale>;

// ([0,inf], >=, +, 0): the order is reversed, joins are minima, 0 is the top and inf the
// bottom. The strong variant uses max instead of +.
class LawvereQuantale final : public Quantale {
 public:
  explicit LawvereQuantale(bool strong = false) : strong_(strong) {}
  std::string name() const override { return strong_ ? "strong-lawvere" : "lawvere"; }
  bool leq(const QVal& a, const QVal& b) const override { return b.d <= a.d; }
  QVal join(const QVal& a, const QVal& b) const override { return {min(a.d, b.d), 0}; }
  QVal meet(const QVal& a, const QVal& b) const override { return {max(a.d, b.d), 0}; }
  QVal tensor(const QVal& a, const QVal& b) const override {
    return {strong_ ? max(a.d, b.d) : a.d + b.d, 0};
  }
  QVal unit() const override { return {ExtRat(0), 0}; }
  QVal top() const override { return {ExtRat(0), 0}; }
  QVal bottom() const override { return {ExtRat::inf(), 0}; }
  bool member(const QVal& a) const override { return a.p == 0; }
  std::string show(const QVal& a) const override { return a.d.str(); }
  QVal parse(std::string_view s) const override;
  std::vector<QVal> samples() const override;
  static QVal of(ExtRat r) { return {r, 0}; }

 private:
  bool strong_;
};

// Monotone predicates W -> 2 ordered by inclusion; tensor is the Day convolution
// (exists v, u with w >= v.u), unit and top are the full set.
class PredicateQuantale final : public Quantale {
 public:
  explicit PredicateQuantale(FramePtr frame) : frame_(std::move(frame)) {}
  std::string name() const override;
  bool leq(const QVal& a, const QVal& b) const override { return (a.p & ~b.p) == 0; }
  QVal join(const QVal& a, const QVal& b) const override { return of(a.p | b.p); }
  QVal meet(const QVal& a, const QVal& b) const override { return of(a.p & b.p); }
  QVal tensor(const QVal& a, const QVal& b) const override { return of(frame_->tensor(a.p, b.p)); }
  QVal unit() const override { return of(frame_->all()); }
  QVal top() const override { return of(frame_->all()); }
  QVal bottom() const override { return of(0); }
  bool member(const QVal& a) const override { return a.d == ExtRat(0) && frame_->is_upset(a.p); }
  std::string show(const QVal& a) const override;
  QVal parse(std::string_view s) const override;
  std::vector<QVal> samples() const override;
  const FiniteFrame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  static QVal of(WorldSet s) { return {ExtRat(0), s}; }

 private:
  FramePtr frame_;
};

// The two-element quantale, as predicates over the one-world frame.
QuantalePtr boolean_quantale();
QuantalePtr lawvere_quantale();
QuantalePtr strong_lawvere_quantale();

// Commutativity, associativity and unit of the tensor, lattice laws, and distribution
// of the tensor over binary and empty joins, on the quantale's samples.
LawReport check_quantale(const Quantale& V);

// A V-valued matrix X x Y -> V.
class VMatrix {
 public:
  VMatrix() = default;
  VMatrix(int nx, int ny, QVal fill) : nx_(nx), ny_(ny), e_(static_cast<std::size_t>(nx) * ny, fill) {}
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const QVal& at(int x, int y) const { return e_[static_cast<std::size_t>(x) * ny_ + y]; }
  void set(int x, int y, QVal v) { e_[static_cast<std::size_t>(x) * ny_ + y] = std::move(v); }
  friend bool operator==(const VMatrix& a, const VMatrix& b) = default;

 private:
  int nx_ = 0, ny_ = 0;
  std::vector<QVal> e_;
};

// (a;b)(x,z) = join over y of a(x,y) (x) b(y,z)
VMatrix mat_compose(const Quantale& V, const VMatrix& a, const VMatrix& b);
// unit on the diagonal, bottom elsewhere
VMatrix mat_identity(const Quantale& V, int n);
VMatrix mat_converse(const VMatrix& a);
VMatrix mat_meet(const Quantale& V, const VMatrix& a, const VMatrix& b);
bool mat_leq(const Quantale& V, const VMatrix& a, const VMatrix& b);

// psi(R)(x,y)(w) iff R(x,y,w), and its inverse phi; phi throws on non-monotone entries.
VMatrix psi_encode(const FiniteFrame& F, const WRelation& R);
WRelation phi_decode(const FiniteFrame& F, const VMatrix& M);

}  // namespace lj
