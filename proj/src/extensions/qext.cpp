#include "lj/extension.hpp"

namespace lj {

namespace {

class LawvereScaling final : public QExtension {
 public:
  explicit LawvereScaling(AlgebraPtr A) : A_(std::move(A)) {}
  std::string name() const override { return "scale:" + A_->name(); }
  const GradeAlgebra& algebra() const override { return *A_; }
  const Quantale& quantale() const override { return *lawvere_quantale(); }
  QVal apply(const Grade& j, const QVal& a) const override { return LawvereQuantale::of(j.num * a.d); }

 private:
  AlgebraPtr A_;
};

class PredicateLift final : public QExtension {
 public:
  explicit PredicateLift(ExtensionPtr E)
      : E_(std::move(E)),
        V_(E_->frame().size() == 1 ? boolean_quantale()
                                   : std::make_shared<PredicateQuantale>(E_->frame_ptr())) {}
  std::string name() const override { return E_->name(); }
  const GradeAlgebra& algebra() const override { return E_->algebra(); }
  const Quantale& quantale() const override { return *V_; }
  QVal apply(const Grade& j, const QVal& a) const override { return PredicateQuantale::of(E_->apply(j, a.p)); }

 private:
  ExtensionPtr E_;
  QuantalePtr V_;
};

}  // namespace

QExtensionPtr lawvere_scaling(AlgebraPtr numeric) {
  if (numeric->name() != "natinf" && numeric->name() != "extreal")
    throw ExtensionError("Lawvere scaling needs natinf or extreal grades (got " + numeric->name() + ")");
  return std::make_shared<LawvereScaling>(std::move(numeric));
}

QExtensionPtr predicate_lift(ExtensionPtr E) { return std::make_shared<PredicateLift>(std::move(E)); }

}  // namespace lj
