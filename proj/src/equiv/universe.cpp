#include <algorithm>

#include "lj/equiv.hpp"
#include "lj/eval.hpp"
#include "lj/typecheck.hpp"

namespace lj {

Universe::Universe(AlgebraPtr A, std::uint64_t fuel) : A_(std::move(A)), fuel_(fuel) {}

int Universe::intern(const TypePtr& ty) {
  if (auto i = type_index(ty)) return *i;
  types_.push_back(ty);
  return static_cast<int>(types_.size()) - 1;
}

std::optional<int> Universe::type_index(const TypePtr& ty) const {
  for (std::size_t i = 0; i < types_.size(); ++i)
    if (type_equal(*A_, types_[i], ty)) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Universe::find(const TermPtr& t, const TypePtr& ty) const {
  auto k = type_index(ty);
  if (!k) return std::nullopt;
  auto it = index_.find(std::to_string(*k) + "|" + canonical(*A_, strip_ann(t)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Universe::add(const TermPtr& t0, const TypePtr& ty, const std::string& name) {
  TermPtr t = strip_ann(t0);
  int k = intern(ty);
  std::string key = std::to_string(k) + "|" + canonical(*A_, t);
  if (auto it = index_.find(key); it != index_.end()) {
    if (!name.empty() && !names_.count(name)) {
      names_[name] = it->second;
      if (members_[it->second].name == show_term(*A_, members_[it->second].term)) members_[it->second].name = name;
    }
    return it->second;
  }
  typecheck(*A_, {}, t, ty);
  Member m;
  m.term = t;
  m.type = k;
  m.value = is_value(t);
  m.name = name.empty() ? show_term(*A_, t) : name;
  members_.push_back(std::move(m));
  int i = size() - 1;
  index_[key] = i;
  if (!name.empty()) names_.emplace(name, i);
  closed_ = closed_premises_ = false;
  return i;
}

std::optional<int> Universe::named(const std::string& name) const {
  auto it = names_.find(name);
  if (it == names_.end()) return std::nullopt;
  return it->second;
}

std::string Universe::label(int i) const { return members_.at(i).name; }

void Universe::set_tests(const TypePtr& ty, const std::vector<TermPtr>& values) {
  int k = intern(ty);
  std::vector<int> idx;
  for (const auto& v : values) {
    if (!is_value(strip_ann(v))) throw std::invalid_argument("test set entries must be values: " + show_term(*A_, v));
    idx.push_back(add(v, ty));
  }
  tests_[k] = std::move(idx);
  for (auto& m : members_) m.linked = m.premises = false;
  closed_ = closed_premises_ = false;
}

const std::vector<int>& Universe::tests(int type) const {
  static const std::vector<int> none;
  auto it = tests_.find(type);
  return it == tests_.end() ? none : it->second;
}

const std::vector<int>* Universe::tests_for(int type) {
  if (auto it = tests_.find(type); it != tests_.end()) return &it->second;
  TypePtr ty = types_[type];
  auto vals = enumerate_values(*A_, ty);
  if (!vals) return nullptr;
  std::vector<int> idx;
  for (const auto& v : *vals) idx.push_back(add(v, ty));
  return &(tests_[type] = std::move(idx));
}

int Universe::require(const TermPtr& t, const TypePtr& ty) {
  if (auto i = find(t, ty)) return *i;
  if (members_.size() >= limit_) return -1;
  return add(t, ty);
}

namespace {

std::string missing_msg(const GradeAlgebra& A, const char* what, const TermPtr& t) {
  return std::string(what) + " " + show_term(A, t);
}

}  // namespace

bool Universe::link(int i, std::vector<std::string>& missing) {
  const TermPtr t = members_[i].term;
  const TypePtr ty = types_[members_[i].type];
  bool ok = true;
  auto need = [&](const TermPtr& s, const TypePtr& sty, const char* what) {
    int j = require(s, sty);
    if (j < 0) {
      missing.push_back(missing_msg(*A_, what, s));
      ok = false;
    }
    return j;
  };

  if (!members_[i].value) {
    Outcome r = eval_fuel(t, fuel_);
    int o = r.diverged() ? -1 : need(strip_ann(r.value), ty, "outcome");
    members_[i].outcome = o;
    members_[i].linked = ok;
    return ok;
  }
  members_[i].outcome = fuel_ == 0 ? -1 : i;
  switch (t->kind) {
    case Term::Kind::Lam: {
      const auto* tests = tests_for(intern(ty->a));
      if (!tests) {
        missing.push_back("no test set for type " + show_type(*A_, ty->a));
        ok = false;
        break;
      }
      std::vector<int> apps;
      TermPtr f = Term::ann(t, ty);
      for (int u : std::vector<int>(*tests)) apps.push_back(need(Term::app(f, members_[u].term), ty->b, "application"));
      members_[i].apps = std::move(apps);
      break;
    }
    case Term::Kind::Fold:
      members_[i].payload = need(t->a, unroll(ty), "payload");
      break;
    case Term::Kind::Box:
      members_[i].payload = need(t->a, ty->a, "payload");
      break;
    case Term::Kind::Inl:
      members_[i].payload = need(t->a, ty->a, "payload");
      break;
    case Term::Kind::Inr:
      members_[i].payload = need(t->a, ty->b, "payload");
      break;
    default:
      break;
  }
  members_[i].linked = ok;
  return ok;
}

bool Universe::link_premises(int i, std::vector<std::string>& missing) {
  const TermPtr t = members_[i].term;
  const TypePtr ty = types_[members_[i].type];
  Derivation d;
  typecheck(*A_, {}, t, ty, &d);
  bool ok = true;
  auto need = [&](const TermPtr& s, const TypePtr& sty) {
    int j = require(s, sty);
    if (j < 0) {
      missing.push_back(missing_msg(*A_, "premise", s));
      ok = false;
    }
    return j;
  };
  // body[x := u] for every test u of `xty`, the value ascribed so it stays checkable
  auto open = [&](const TermPtr& body, const std::string& x, const TypePtr& xty, const TypePtr& bty) {
    std::vector<int> out;
    const auto* tests = tests_for(intern(xty));
    if (!tests) {
      missing.push_back("no test set for type " + show_type(*A_, xty));
      ok = false;
      return out;
    }
    for (int u : std::vector<int>(*tests))
      out.push_back(need(substitute(body, x, Term::ann(members_[u].term, xty)), bty));
    return out;
  };

  std::vector<int> parts;
  std::vector<std::vector<int>> inst;
  Grade binder;
  switch (t->kind) {
    case Term::Kind::Lam:
      inst.push_back(open(t->a, t->x, ty->a, ty->b));
      break;
    case Term::Kind::App:
      parts = {need(t->a, d.premises[0].type), need(t->b, d.premises[1].type)};
      break;
    case Term::Kind::Unfold:
      parts = {need(t->a, d.premises[0].type)};
      break;
    case Term::Kind::Let:
      parts = {need(t->a, d.premises[0].type)};
      binder = d.grade;
      inst.push_back(open(t->b, t->x, d.premises[0].type, ty));
      break;
    case Term::Kind::LetBox:
      parts = {need(t->a, d.premises[0].type)};
      binder = t->grade;
      inst.push_back(open(t->b, t->x, d.premises[0].type->a, ty));
      break;
    case Term::Kind::Case:
      parts = {need(t->a, d.premises[0].type)};
      binder = t->grade;
      inst.push_back(open(t->b, t->x, d.premises[0].type->a, ty));
      inst.push_back(open(t->c, t->y, d.premises[0].type->b, ty));
      break;
    default:
      break;
  }
  Member& m = members_[i];
  m.parts = std::move(parts);
  m.instances = std::move(inst);
  m.binder = std::move(binder);
  m.premises = ok;
  return ok;
}

const std::vector<std::string>& Universe::close(bool premises, std::size_t limit) {
  limit_ = limit;
  missing_.clear();
  // members appended during the pass are visited by the same pass
  for (int i = 0; i < size(); ++i) {
    if (!members_[i].linked) link(i, missing_);
    if (premises && !members_[i].premises) link_premises(i, missing_);
  }
  std::sort(missing_.begin(), missing_.end());
  missing_.erase(std::unique(missing_.begin(), missing_.end()), missing_.end());
  closed_ = missing_.empty();
  closed_premises_ = closed_ && premises;
  return missing_;
}

bool Universe::closed(bool premises) const { return premises ? closed_premises_ : closed_; }

void Universe::require_closed(bool premises) const {
  if (closed(premises)) return;
  std::string msg = premises ? "universe not closed under refinement premises" : "universe not closed";
  if (missing_.empty()) {
    msg += "; call close()";
  } else {
    msg += ": missing ";
    for (std::size_t i = 0; i < missing_.size() && i < 5; ++i) msg += (i ? "; " : "") + missing_[i];
    if (missing_.size() > 5) msg += "; and " + std::to_string(missing_.size() - 5) + " more";
  }
  throw ClosureError(msg);
}

std::optional<std::vector<TermPtr>> enumerate_values(const GradeAlgebra& A, const TypePtr& ty, std::size_t limit) {
  using K = Type::Kind;
  switch (ty->kind) {
    case K::Void:
      return std::vector<TermPtr>{};
    case K::Arrow:
      if (ty->a->kind == K::Void && ty->b->kind == K::Void)
        return std::vector<TermPtr>{Term::lam("u", Type::void_(), Term::var("u"))};
      return std::nullopt;
    case K::Sum: {
      auto l = enumerate_values(A, ty->a, limit);
      auto r = enumerate_values(A, ty->b, limit);
      if (!l || !r || l->size() + r->size() > limit) return std::nullopt;
      std::vector<TermPtr> out;
      for (const auto& v : *l) out.push_back(Term::inl(v));
      for (const auto& v : *r) out.push_back(Term::inr(v));
      return out;
    }
    case K::Box: {
      auto in = enumerate_values(A, ty->a, limit);
      if (!in) return std::nullopt;
      std::vector<TermPtr> out;
      for (const auto& v : *in) out.push_back(Term::box(ty->grade, v));
      return out;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace lj
