#include "lj/quantale.hpp"

#include <stdexcept>

#include "text.hpp"

namespace lj {

QVal LawvereQuantale::parse(std::string_view s) const {
  auto r = ExtRat::parse(text::trim(s));
  if (!r) throw std::invalid_argument("malformed distance '" + std::string(s) + "'");
  return of(*r);
}

std::vector<QVal> LawvereQuantale::samples() const {
  return {of(ExtRat(0)), of(ExtRat(1, 2)), of(ExtRat(1)), of(ExtRat(5, 2)), of(ExtRat(7)), of(ExtRat::inf())};
}

std::string PredicateQuantale::name() const {
  return frame_->size() == 1 ? "boolean" : "B^" + frame_->name();
}

std::string PredicateQuantale::show(const QVal& a) const {
  if (frame_->size() == 1) return a.p ? "true" : "false";
  return frame_->show(a.p);
}

QVal PredicateQuantale::parse(std::string_view s) const {
  s = text::trim(s);
  if (frame_->size() == 1 && (s == "true" || s == "false")) return of(s == "true" ? 1 : 0);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw std::invalid_argument("malformed predicate '" + std::string(s) + "'");
  WorldSet set = 0;
  auto inner = text::trim(s.substr(1, s.size() - 2));
  if (!inner.empty())
    for (const auto& w : text::split_top(inner, ',')) set |= WorldSet(1) << frame_->index_or_throw(w);
  if (!frame_->is_upset(set)) throw std::invalid_argument("predicate " + std::string(s) + " is not monotone");
  return of(set);
}

std::vector<QVal> PredicateQuantale::samples() const {
  std::vector<QVal> out;
  for (auto s : frame_->upsets()) out.push_back(of(s));
  return out;
}

QuantalePtr boolean_quantale() {
  static const QuantalePtr q = std::make_shared<PredicateQuantale>(std::make_shared<FiniteFrame>(frame_unit()));
  return q;
}

QuantalePtr lawvere_quantale() {
  static const QuantalePtr q = std::make_shared<LawvereQuantale>(false);
  return q;
}

QuantalePtr strong_lawvere_quantale() {
  static const QuantalePtr q = std::make_shared<LawvereQuantale>(true);
  return q;
}

LawReport check_quantale(const Quantale& V) {
  LawReport rep("quantale " + V.name());
  auto S = V.samples();
  auto eq = [&](const QVal& a, const QVal& b) { return V.leq(a, b) && V.leq(b, a); };
  for (const auto& a : S) {
    auto w = [&] { return V.show(a); };
    rep.check_lazy("tensor-unit", eq(V.tensor(a, V.unit()), a), w);
    rep.check_lazy("bottom-top", V.leq(V.bottom(), a) && V.leq(a, V.top()), w);
    rep.check_lazy("tensor-bottom", eq(V.tensor(a, V.bottom()), V.bottom()), w);
    for (const auto& b : S) {
      auto w2 = [&] { return V.show(a) + ", " + V.show(b); };
      rep.check_lazy("tensor-commutative", eq(V.tensor(a, b), V.tensor(b, a)), w2);
      QVal j = V.join(a, b), m = V.meet(a, b);
      rep.check_lazy("join-upper-bound", V.leq(a, j) && V.leq(b, j), w2);
      rep.check_lazy("meet-lower-bound", V.leq(m, a) && V.leq(m, b), w2);
      for (const auto& c : S) {
        auto w3 = [&] { return V.show(a) + ", " + V.show(b) + ", " + V.show(c); };
        rep.check_lazy("tensor-associative", eq(V.tensor(V.tensor(a, b), c), V.tensor(a, V.tensor(b, c))), w3);
        rep.check_lazy("join-least", !(V.leq(a, c) && V.leq(b, c)) || V.leq(j, c), w3);
        rep.check_lazy("meet-greatest", !(V.leq(c, a) && V.leq(c, b)) || V.leq(c, m), w3);
        rep.check_lazy("tensor-distributes-over-join",
                       eq(V.tensor(a, V.join(b, c)), V.join(V.tensor(a, b), V.tensor(a, c))), w3);
      }
    }
  }
  return rep;
}

VMatrix mat_compose(const Quantale& V, const VMatrix& a, const VMatrix& b) {
  if (a.ny() != b.nx()) throw std::invalid_argument("mat_compose: carrier mismatch");
  VMatrix out(a.nx(), b.ny(), V.bottom());
  for (int x = 0; x < a.nx(); ++x)
    for (int z = 0; z < b.ny(); ++z) {
      QVal acc = V.bottom();
      for (int y = 0; y < a.ny(); ++y) acc = V.join(acc, V.tensor(a.at(x, y), b.at(y, z)));
      out.set(x, z, acc);
    }
  return out;
}

VMatrix mat_identity(const Quantale& V, int n) {
  VMatrix out(n, n, V.bottom());
  for (int x = 0; x < n; ++x) out.set(x, x, V.unit());
  return out;
}

VMatrix mat_converse(const VMatrix& a) {
  VMatrix out(a.ny(), a.nx(), QVal{});
  for (int x = 0; x < a.nx(); ++x)
    for (int y = 0; y < a.ny(); ++y) out.set(y, x, a.at(x, y));
  return out;
}

VMatrix mat_meet(const Quantale& V, const VMatrix& a, const VMatrix& b) {
  VMatrix out(a.nx(), a.ny(), V.top());
  for (int x = 0; x < a.nx(); ++x)
    for (int y = 0; y < a.ny(); ++y) out.set(x, y, V.meet(a.at(x, y), b.at(x, y)));
  return out;
}

bool mat_leq(const Quantale& V, const VMatrix& a, const VMatrix& b) {
  for (int x = 0; x < a.nx(); ++x)
    for (int y = 0; y < a.ny(); ++y)
      if (!V.leq(a.at(x, y), b.at(x, y))) return false;
  return true;
}

VMatrix psi_encode(const FiniteFrame&, const WRelation& R) {
  VMatrix out(R.nx(), R.ny(), PredicateQuantale::of(0));
  for (int x = 0; x < R.nx(); ++x)
    for (int y = 0; y < R.ny(); ++y) out.set(x, y, PredicateQuantale::of(R.at(x, y)));
  return out;
}

WRelation phi_decode(const FiniteFrame& F, const VMatrix& M) {
  WRelation out(M.nx(), M.ny());
  for (int x = 0; x < M.nx(); ++x)
    for (int y = 0; y < M.ny(); ++y) {
      WorldSet s = M.at(x, y).p;
      if (!F.is_upset(s))
        throw std::invalid_argument("phi_decode: entry (" + std::to_string(x) + "," + std::to_string(y) +
                                    ") is not a monotone predicate");
      out.set(x, y, s);
    }
  return out;
}

}  // namespace lj
