#include "lj/equiv.hpp"
#include "lj/eval.hpp"
#include "lj/typecheck.hpp"

namespace lj {

namespace {

// e[v1/x1, ...], each value ascribed with its declared type
TermPtr instantiate(const TypeEnv& ctx, const TermPtr& e, const std::vector<TermPtr>& vals) {
  TermPtr t = e;
  for (std::size_t i = 0; i < ctx.size(); ++i) t = substitute(t, ctx[i].name, Term::ann(vals[i], ctx[i].type));
  return t;
}

std::optional<Verdict> rejected(const Program& prog, const Def& def) {
  try {
    typecheck_def(*prog.algebra, def.ctx, def.term, def.type);
  } catch (const TypeError& e) {
    Verdict v;
    v.status = Verdict::Status::Rejected;
    v.clause = "typing";
    v.message = e.what();
    return v;
  }
  return std::nullopt;
}

std::string show_assignment(const GradeAlgebra& A, const TypeEnv& ctx, const std::vector<TermPtr>& vals) {
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i) s += (i ? " " : "") + ctx[i].name + ":=" + show_term(A, vals[i]);
  return s;
}

}  // namespace

Verdict check_metric_preservation(const Program& prog, const Def& def, const std::vector<SubstPairs>& cases,
                                  const QExtensionPtr& qext, std::uint64_t fuel, int depth) {
  if (auto r = rejected(prog, def)) return *r;
  const GradeAlgebra& A = *prog.algebra;
  auto U = std::make_shared<Universe>(prog.algebra, fuel);
  struct Inst {
    std::vector<int> v, w;
    int l, r;
  };
  std::vector<Inst> insts;
  for (const auto& c : cases) {
    if (c.left.size() != def.ctx.size() || c.right.size() != def.ctx.size())
      throw std::invalid_argument("def " + def.name + " has " + std::to_string(def.ctx.size()) +
                                  " variables; every case must give that many values per side");
    Inst in;
    for (std::size_t i = 0; i < def.ctx.size(); ++i) {
      for (const auto* side : {&c.left, &c.right})
        if (!is_value(strip_ann((*side)[i])))
          throw std::invalid_argument("substituted terms must be values: " + show_term(A, (*side)[i]));
      in.v.push_back(U->add(c.left[i], def.ctx[i].type));
      in.w.push_back(U->add(c.right[i], def.ctx[i].type));
    }
    in.l = U->add(instantiate(def.ctx, def.term, c.left), def.type);
    in.r = U->add(instantiate(def.ctx, def.term, c.right), def.type);
    insts.push_back(in);
  }
  U->close();
  U->require_closed();

  Config cfg{U, nullptr, qext};
  Distance d = distance_fix(cfg, depth);
  const Quantale& V = qext->quantale();
  Verdict out;
  out.depth = static_cast<std::uint64_t>(depth);
  if (!d.stable) {
    out.status = Verdict::Status::Inconclusive;
    out.message = "distance did not stabilize within " + std::to_string(depth) + " iterations";
    return out;
  }
  for (std::size_t k = 0; k < insts.size(); ++k) {
    const Inst& in = insts[k];
    if ((*U)[in.l].outcome < 0 || (*U)[in.r].outcome < 0) {
      out.status = Verdict::Status::Inconclusive;
      out.message = "an instance of " + def.name + " does not terminate within fuel " + std::to_string(fuel);
      return out;
    }
    QVal bound = V.unit();
    for (std::size_t i = 0; i < def.ctx.size(); ++i)
      bound = V.tensor(bound, qext->apply(def.ctx[i].grade, d.values.at(in.v[i], in.w[i])));
    QVal dist = d.terms.at(in.l, in.r);
    ++out.checked;
    if (!V.leq(bound, dist)) {
      out.status = Verdict::Status::Fail;
      out.clause = "metric-preservation";
      out.witness = "def=" + def.name + " left: " + show_assignment(A, def.ctx, cases[k].left) +
                    " right: " + show_assignment(A, def.ctx, cases[k].right);
      out.message = "bound " + V.show(bound) + " is not below the distance " + V.show(dist);
      return out;
    }
  }
  return out;
}

Verdict check_noninterference(const Program& prog, const Def& def,
                              const std::map<std::string, std::vector<TermPtr>>& secrets, std::uint64_t fuel,
                              int depth, const std::string& observer) {
  auto L = std::dynamic_pointer_cast<const LatticeAlgebra>(prog.algebra);
  if (!L) throw std::invalid_argument("non-interference needs a lattice algebra, not " + prog.algebra->name());
  if (auto r = rejected(prog, def)) return *r;
  const GradeAlgebra& A = *prog.algebra;
  ExtensionPtr E = make_extension("mask", prog.algebra, nullptr);
  QExtensionPtr D = predicate_lift(E);
  const int world = E->frame().index_or_throw(observer);
  const Grade obs = A.parse(observer);

  std::vector<std::size_t> low, high;
  std::vector<std::vector<TermPtr>> choices;
  for (std::size_t i = 0; i < def.ctx.size(); ++i) {
    const Binding& b = def.ctx[i];
    (A.equiv(b.grade, obs) ? low : high).push_back(i);
    if (auto it = secrets.find(b.name); it != secrets.end()) {
      choices.push_back(it->second);
      continue;
    }
    auto vals = enumerate_values(A, b.type);
    if (!vals) throw std::invalid_argument("no test values for " + b.name + " : " + show_type(A, b.type));
    choices.push_back(*vals);
  }

  // every assignment of the given variables, odometer order
  auto assignments = [&](const std::vector<std::size_t>& vars) {
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t v : vars) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& a : out)
        for (std::size_t k = 0; k < choices[v].size(); ++k) {
          next.push_back(a);
          next.back().push_back(k);
        }
      out = std::move(next);
    }
    return out;
  };
  auto lows = assignments(low);
  auto highs = assignments(high);

  auto U = std::make_shared<Universe>(prog.algebra, fuel);
  struct Inst {
    std::vector<TermPtr> a, b;
    int l, r;
  };
  std::vector<Inst> insts;
  for (const auto& la : lows)
    for (std::size_t p = 0; p < highs.size(); ++p)
      for (std::size_t q = p + 1; q < highs.size(); ++q) {
        Inst in;
        in.a.resize(def.ctx.size());
        in.b.resize(def.ctx.size());
        for (std::size_t k = 0; k < low.size(); ++k) in.a[low[k]] = in.b[low[k]] = choices[low[k]][la[k]];
        for (std::size_t k = 0; k < high.size(); ++k) {
          in.a[high[k]] = choices[high[k]][highs[p][k]];
          in.b[high[k]] = choices[high[k]][highs[q][k]];
        }
        in.l = U->add(instantiate(def.ctx, def.term, in.a), def.type);
        in.r = U->add(instantiate(def.ctx, def.term, in.b), def.type);
        insts.push_back(std::move(in));
      }
  U->close();
  U->require_closed();

  Config cfg{U, E, D};
  Distance d = distance_fix(cfg, depth);
  Verdict out;
  out.depth = static_cast<std::uint64_t>(depth);
  if (!d.stable) {
    out.status = Verdict::Status::Inconclusive;
    out.message = "distance did not stabilize within " + std::to_string(depth) + " iterations";
    return out;
  }
  for (const auto& in : insts) {
    ++out.checked;
    WorldSet both = d.terms.at(in.l, in.r).p & d.terms.at(in.r, in.l).p;
    if (!(both >> world & 1)) {
      out.status = Verdict::Status::Fail;
      out.clause = "noninterference";
      out.world = world;
      out.witness = "def=" + def.name + " left: " + show_assignment(A, def.ctx, in.a) +
                    " right: " + show_assignment(A, def.ctx, in.b) + " world=" + observer;
      out.message = "instances are distinguishable at " + observer;
      return out;
    }
  }
  out.message = std::to_string(out.checked) + " instance pairs bisimilar at " + observer + " up to fuel " +
                std::to_string(fuel);
  return out;
}

}  // namespace lj
