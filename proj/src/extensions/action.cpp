#include "lj/extension.hpp"

namespace lj {

namespace {

bool same_frame(const FiniteFrame& a, const FiniteFrame& b) {
  if (a.elements() != b.elements() || a.unit() != b.unit()) return false;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (a.leq(x, y) != b.leq(x, y) || a.op(x, y) != b.op(x, y)) return false;
  return true;
}

class SelfAction final : public LaxAction {
 public:
  explicit SelfAction(std::shared_ptr<const FiniteAlgebra> A)
      : A_(std::move(A)), F_(std::make_shared<FiniteFrame>(self_frame(*A_))) {}
  std::string name() const override { return "self:" + A_->name(); }
  const GradeAlgebra& algebra() const override { return *A_; }
  const FiniteFrame& frame() const override { return *F_; }
  int act(const Grade& j, int w) const override { return A_->mul(j, Grade::atom(w)).idx; }

 private:
  std::shared_ptr<const FiniteAlgebra> A_;
  FramePtr F_;
};

class EndAction final : public LaxAction {
 public:
  explicit EndAction(std::shared_ptr<const EndAlgebra> A) : A_(std::move(A)) {}
  std::string name() const override { return "apply:" + A_->name(); }
  const GradeAlgebra& algebra() const override { return *A_; }
  const FiniteFrame& frame() const override { return A_->frame(); }
  int act(const Grade& j, int w) const override { return A_->apply(j, w); }

 private:
  std::shared_ptr<const EndAlgebra> A_;
};

// Worlds of lawvere4 counted in halves: 0, 1, 2 and saturated.
class ScalingAction final : public LaxAction {
 public:
  explicit ScalingAction(AlgebraPtr A) : A_(std::move(A)), F_(std::make_shared<FiniteFrame>(frame_lawvere4())) {
    for (const char* n : {"0", "0.5", "1", "inf"}) world_.push_back(F_->index_or_throw(n));
  }
  std::string name() const override { return "scale:" + A_->name(); }
  const GradeAlgebra& algebra() const override { return *A_; }
  const FiniteFrame& frame() const override { return *F_; }
  int act(const Grade& j, int w) const override {
    int h = 0;
    while (world_[h] != w) ++h;
    ExtRat halves = h == 3 ? ExtRat::inf() : ExtRat(h);
    ExtRat r = j.num * halves;
    if (r.is_inf() || ExtRat(3) <= r) return world_[3];
    return world_[static_cast<int>(r.value().numerator())];
  }

 private:
  AlgebraPtr A_;
  FramePtr F_;
  std::vector<int> world_;
};

class TrivialAction final : public LaxAction {
 public:
  TrivialAction(FramePtr F, AlgebraPtr A) : F_(std::move(F)), A_(std::move(A)) {}
  std::string name() const override { return "identity:" + F_->name(); }
  const GradeAlgebra& algebra() const override { return *A_; }
  const FiniteFrame& frame() const override { return *F_; }
  int act(const Grade&, int w) const override { return w; }

 private:
  FramePtr F_;
  AlgebraPtr A_;
};

}  // namespace

ActionPtr self_action(std::shared_ptr<const FiniteAlgebra> A) { return std::make_shared<SelfAction>(std::move(A)); }

ActionPtr end_action(std::shared_ptr<const EndAlgebra> A) { return std::make_shared<EndAction>(std::move(A)); }

ActionPtr scaling_action(AlgebraPtr numeric) {
  if (numeric->name() != "natinf")
    throw ExtensionError("scaling action on lawvere4 needs natinf grades (got " + numeric->name() + ")");
  return std::make_shared<ScalingAction>(std::move(numeric));
}

ActionPtr trivial_action(FramePtr frame) {
  for (int w = 0; w < frame->size(); ++w)
    if (!frame->leq(frame->op(w, w), w))
      throw ExtensionError("identity action needs an idempotent frame; " + frame->name() + " has " +
                           frame->element(w) + " . " + frame->element(w) + " above " + frame->element(w));
  return std::make_shared<TrivialAction>(std::move(frame), trivial_algebra());
}

ActionPtr unit_action(AlgebraPtr A) {
  return std::make_shared<TrivialAction>(std::make_shared<FiniteFrame>(frame_unit()), std::move(A));
}

LawReport check_action(const LaxAction& act, const std::vector<Grade>& grades) {
  const auto& A = act.algebra();
  const auto& F = act.frame();
  LawReport rep("lax action " + act.name());
  const int e = F.unit();
  auto hat = [&](const Grade& j, int w) { return act.act(j, w); };
  auto name = [&](int w) { return F.element(w); };
  for (const auto& j : grades) {
    for (int w = 0; w < F.size(); ++w) {
      rep.check_lazy("action-unit-grade", F.leq(hat(A.one(), w), w), [&] { return "w=" + name(w); });
      for (int v = 0; v < F.size(); ++v) {
        auto wit = [&] { return "j=" + A.show(j) + " w=" + name(w) + " v=" + name(v); };
        rep.check_lazy("action-monotone-world", !F.leq(w, v) || F.leq(hat(j, w), hat(j, v)), wit);
        rep.check_lazy("action-tensor", F.leq(hat(j, F.op(w, v)), F.op(hat(j, w), hat(j, v))), wit);
      }
    }
    rep.check_lazy("action-unit-world", F.leq(hat(j, e), e), [&] { return "j=" + A.show(j); });
    for (const auto& i : grades)
      for (int w = 0; w < F.size(); ++w) {
        auto wit = [&] { return "j=" + A.show(j) + " i=" + A.show(i) + " w=" + name(w); };
        rep.check_lazy("action-monotone-grade", !A.leq(j, i) || F.leq(hat(j, w), hat(i, w)), wit);
        rep.check_lazy("action-composition", F.leq(hat(j, hat(i, w)), hat(A.mul(j, i), w)), wit);
        rep.check_lazy("action-sum", F.leq(F.op(hat(j, w), hat(i, w)), hat(A.add(j, i), w)), wit);
      }
  }
  return rep;
}

std::vector<Grade> Extension::sample_grades() const {
  if (auto c = A_->carrier()) return *c;
  std::vector<Grade> out;
  for (auto r : {ExtRat(0), ExtRat(1), ExtRat(2), ExtRat::inf()}) out.push_back(Grade::number(r));
  if (A_->name() == "extreal") out.insert(out.begin() + 1, Grade::number(ExtRat(1, 2)));
  return out;
}

ActionExtension::ActionExtension(ActionPtr act)
    : Extension(nullptr, nullptr), act_(std::move(act)) {
  A_ = AlgebraPtr(act_, &act_->algebra());
  F_ = FramePtr(act_, &act_->frame());
}

WorldSet ActionExtension::apply(const Grade& j, WorldSet a) const {
  WorldSet out = 0;
  for (int v = 0; v < F_->size(); ++v)
    if (a >> v & 1) out |= F_->up(act_->act(j, v));
  return out;
}

KripkeExtension::KripkeExtension(FramePtr F) : Extension(trivial_algebra(), std::move(F)) {
  if (!F_->is_join_frame()) throw ExtensionError("kripke extension needs a frame whose monoid is the join; " + F_->name() + " is not");
}

WorldSet KripkeExtension::apply(const Grade&, WorldSet a) const {
  WorldSet out = 0;
  for (int w = 0; w < F_->size(); ++w)
    if ((F_->up(w) & ~a) == 0) out |= WorldSet(1) << w;
  return out;
}

MaskExtension::MaskExtension(std::shared_ptr<const LatticeAlgebra> L)
    : Extension(L, std::make_shared<FiniteFrame>(self_frame(*L))) {}

WorldSet MaskExtension::apply(const Grade& j, WorldSet a) const {
  WorldSet hidden = 0;
  for (int w = 0; w < F_->size(); ++w)
    if (!F_->leq(w, j.idx)) hidden |= WorldSet(1) << w;
  return hidden | a;
}

ExtensionPtr negated(ExtensionPtr base) {
  auto label = "not-" + base->name();
  return std::make_shared<CorruptedExtension>(
      std::move(base), [](const Extension& e, const Grade& j, WorldSet a) { return e.frame().all() & ~e.apply(j, a); },
      label);
}

WRelation cle_apply(const Extension& E, const Grade& j, const WRelation& R) {
  WRelation out(R.nx(), R.ny());
  for (int x = 0; x < R.nx(); ++x)
    for (int y = 0; y < R.ny(); ++y) out.set(x, y, E.apply(j, R.at(x, y)));
  return out;
}

bool cle_holds(const Extension& E, const Grade& j, const WRelation& R, int x, int y, int w) {
  return E.apply(j, R.at(x, y)) >> w & 1;
}

ExtensionPtr make_extension(std::string_view name, AlgebraPtr A, FramePtr F) {
  if (name == "kripke") {
    if (A && A->name() != "trivial") throw ExtensionError("kripke extension needs the trivial algebra");
    if (!F) throw ExtensionError("kripke extension needs --frame");
    return std::make_shared<KripkeExtension>(std::move(F));
  }
  if (name == "mask") {
    auto L = std::dynamic_pointer_cast<const LatticeAlgebra>(A);
    if (!L) throw ExtensionError("mask extension needs a lattice algebra (sec2 or lattice:<file>)");
    auto E = std::make_shared<MaskExtension>(L);
    if (F && !same_frame(*F, E->frame())) throw ExtensionError("mask extension runs on the security frame of its lattice");
    return E;
  }
  if (name == "bang") {
    if (!A) throw ExtensionError("bang extension needs --algebra");
    ActionPtr act;
    if (F && F->size() == 1 && A->name() != "trivial") {
      act = unit_action(A);
    } else if (auto end = std::dynamic_pointer_cast<const EndAlgebra>(A)) {
      act = end_action(end);
    } else if (A->name() == "trivial") {
      act = trivial_action(F ? F : std::make_shared<FiniteFrame>(frame_unit()));
    } else if (auto fin = std::dynamic_pointer_cast<const FiniteAlgebra>(A)) {
      act = self_action(fin);
    } else if (A->name() == "natinf") {
      act = scaling_action(A);
    } else {
      throw ExtensionError("no lax action known for algebra " + A->name());
    }
    if (F && !same_frame(*F, act->frame()))
      throw ExtensionError("action " + act->name() + " is defined on frame " + act->frame().name() + ", not " + F->name());
    return std::make_shared<ActionExtension>(act);
  }
  throw ExtensionError("unknown extension '" + std::string(name) + "' (bang, kripke, mask)");
}

}  // namespace lj
