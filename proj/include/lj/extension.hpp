#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lj/grades.hpp"
#include "lj/quantale.hpp"
#include "lj/relation.hpp"
#include "lj/report.hpp"

namespace lj {

struct ExtensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lax action J x W -> W, written j^(w).
class LaxAction {
 public:
  virtual ~LaxAction() = default;
  virtual std::string name() const = 0;
  virtual const GradeAlgebra& algebra() const = 0;
  virtual const FiniteFrame& frame() const = 0;
  virtual int act(const Grade& j, int w) const = 0;
};

using ActionPtr = std::shared_ptr<const LaxAction>;

// j^(w) = j * w on the self frame (J, <=, +, 0) of a finite algebra.
ActionPtr self_action(std::shared_ptr<const FiniteAlgebra> A);
// h^(w) = h(w) for End(W).
ActionPtr end_action(std::shared_ptr<const EndAlgebra> A);
// natinf or extreal grades scaling the distances of lawvere4 (halves saturate at inf).
ActionPtr scaling_action(AlgebraPtr numeric);
// the trivial algebra acting as the identity on an idempotent frame
ActionPtr trivial_action(FramePtr frame);
// any algebra acting on the one-world frame
ActionPtr unit_action(AlgebraPtr A);

// Monotonicity and the five lax-action inequalities over all worlds and the given grades.
LawReport check_action(const LaxAction& act, const std::vector<Grade>& grades);

// Comonadic lax extension of the identity functor. All shipped instances act on each
// pair separately, so Delta_j is given on the world set R(x, y).
class Extension {
 public:
  Extension(AlgebraPtr A, FramePtr F) : A_(std::move(A)), F_(std::move(F)) {}
  virtual ~Extension() = default;
  virtual std::string name() const = 0;
  virtual WorldSet apply(const Grade& j, WorldSet a) const = 0;

  const GradeAlgebra& algebra() const { return *A_; }
  const AlgebraPtr& algebra_ptr() const { return A_; }
  const FiniteFrame& frame() const { return *F_; }
  const FramePtr& frame_ptr() const { return F_; }

  // grades used by the law suites: the carrier, or {0, 1, 2, inf} style samples
  std::vector<Grade> sample_grades() const;

 protected:
  AlgebraPtr A_;
  FramePtr F_;
};

using ExtensionPtr = std::shared_ptr<const Extension>;

// (x,y,w) in !_j R iff exists v. w >= j^(v) and R(x,y,v)
class ActionExtension final : public Extension {
 public:
  explicit ActionExtension(ActionPtr act);
  std::string name() const override { return "bang[" + act_->name() + "]"; }
  WorldSet apply(const Grade& j, WorldSet a) const override;
  const LaxAction& action() const { return *act_; }

 private:
  ActionPtr act_;
};

// (x,y,w) in Box R iff R(x,y,v) for every v >= w. Trivial algebra, join frame.
class KripkeExtension final : public Extension {
 public:
  explicit KripkeExtension(FramePtr F);
  std::string name() const override { return "kripke"; }
  WorldSet apply(const Grade& j, WorldSet a) const override;
};

// (x,y,w) in M_j R iff not (j <=_L w) or R(x,y,w), on the security frame of a lattice.
class MaskExtension final : public Extension {
 public:
  explicit MaskExtension(std::shared_ptr<const LatticeAlgebra> L);
  std::string name() const override { return "mask"; }
  WorldSet apply(const Grade& j, WorldSet a) const override;
};

// Wraps another extension with a replaced membership, for seeded negative tests.
class CorruptedExtension final : public Extension {
 public:
  using Fn = std::function<WorldSet(const Extension&, const Grade&, WorldSet)>;
  CorruptedExtension(ExtensionPtr base, Fn fn, std::string label)
      : Extension(base->algebra_ptr(), base->frame_ptr()), base_(std::move(base)), fn_(std::move(fn)),
        label_(std::move(label)) {}
  std::string name() const override { return label_; }
  WorldSet apply(const Grade& j, WorldSet a) const override { return fn_(*base_, j, a); }

 private:
  ExtensionPtr base_;
  Fn fn_;
  std::string label_;
};

// membership negated
ExtensionPtr negated(ExtensionPtr base);

WRelation cle_apply(const Extension& E, const Grade& j, const WRelation& R);
bool cle_holds(const Extension& E, const Grade& j, const WRelation& R, int x, int y, int w);

// bang | kripke | mask, built for the given algebra and frame (null frame: the
// algebra's self frame where that makes sense).
ExtensionPtr make_extension(std::string_view name, AlgebraPtr A, FramePtr F);

// ---- partiality ----

// Carriers gain a divergence element at the last index: (x,y,w) in R_bot iff
// x = bot or (y != bot and R(x,y,w)).
WRelation lift_bot(const FiniteFrame& F, const WRelation& R);
using Lifting = std::function<WRelation(const FiniteFrame&, const WRelation&)>;

// Relation universes for the law suites.
// `singles` starts with every monotone relation of the exhaustive shapes (the first
// `exhaustive` entries), followed by seeded samples of larger shapes. Pair laws run
// over all pairs of the exhaustive part when there are at most `pair_budget` (pairs
// times grades), else over that many seeded draws; pairs touching the sampled part
// get a fifth of the budget.
struct RelUniverse {
  std::vector<WRelation> singles;
  std::size_t exhaustive = 0;
  std::vector<std::pair<int, int>> shapes;
  std::size_t pair_budget = 150'000;
  std::uint64_t seed = 7;
};
// Exhaustive shapes 1x1, 1x2, 2x1, 2x2, 1x3, 3x1; `sampled` seeded relations of each
// of 2x3, 3x2, 3x3.
RelUniverse standard_universe(const FiniteFrame& F, std::size_t sampled = 300, std::uint64_t seed = 7);

// d;(R (x) S);d° for the duplication d, i.e. the cell ((x,x),(y,y)) of R (x) S.
WRelation contract(const FiniteFrame& F, const WRelation& R, const WRelation& S);

// Lax-functor, Com1, Com2, Mon1, Mon2, Contra and the antitonicity consequence.
LawReport check_cle(const Extension& E, const std::vector<Grade>& grades, const RelUniverse& U);

// Unit and bind laws of the partiality lifting, and its lax-functor laws.
LawReport check_monad_laws(const FiniteFrame& F, const RelUniverse& U, const Lifting& lift = lift_bot);

// Delta_{j v 1}(R_bot) <= (Delta_{j v 1} R)_bot
LawReport check_distributivity(const Extension& E, const std::vector<Grade>& grades, const RelUniverse& U,
                               const Lifting& lift = lift_bot);

// ---- quantale side ----

// Delta_j on quantale values, matching an extension through psi/phi.
class QExtension {
 public:
  virtual ~QExtension() = default;
  virtual std::string name() const = 0;
  virtual const GradeAlgebra& algebra() const = 0;
  virtual const Quantale& quantale() const = 0;
  virtual QVal apply(const Grade& j, const QVal& a) const = 0;
};

using QExtensionPtr = std::shared_ptr<const QExtension>;

// j . a on the Lawvere quantale (0 . inf = 0), for natinf or extreal grades.
QExtensionPtr lawvere_scaling(AlgebraPtr numeric);
// Delta_j applied to monotone predicates, on B^W for the extension's frame.
QExtensionPtr predicate_lift(ExtensionPtr E);

}  // namespace lj
