#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lj/extension.hpp"
#include "lj/parser.hpp"
#include "lj/quantale.hpp"
#include "lj/relation.hpp"
#include "lj/syntax.hpp"

namespace lj {

// A required reduct, application, payload or premise is not in the universe.
struct ClosureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One closed, well-typed member. Top-level ascriptions are stripped.
struct Member {
  std::string name;  // def name, or the term in concrete syntax
  TermPtr term;
  int type = -1;  // index into Universe::types()
  bool value = false;

  // filled by Universe::close
  int outcome = -1;         // member reached at the universe's fuel; -1 when it diverged
  std::vector<int> apps;    // arrow values: v u for each test u of the domain
  int payload = -1;         // fold, box, inl, inr
  bool linked = false;

  // compatible-refinement premises, filled by close(true)
  std::vector<int> parts;                   // app: function, argument; unfold/let/letbox/case: first premise
  Grade binder;                             // let: usage of the bound variable; letbox, case: the term grade
  std::vector<std::vector<int>> instances;  // per binder, the body with each test value substituted
  bool premises = false;
};

// Finite stand-in for the closed terms and values of each type, with a test set of
// values per type used for the arrow clauses and for open extension.
class Universe {
 public:
  Universe(AlgebraPtr A, std::uint64_t fuel);

  const GradeAlgebra& algebra() const { return *A_; }
  const AlgebraPtr& algebra_ptr() const { return A_; }
  std::uint64_t fuel() const { return fuel_; }

  // Adds t : ty (typechecked; throws TypeError) unless an alpha-equivalent member of
  // that type exists. Returns the member index.
  int add(const TermPtr& t, const TypePtr& ty, const std::string& name = {});
  std::optional<int> find(const TermPtr& t, const TypePtr& ty) const;
  // Explicit test values for `ty`. Types without one get a generated set when their
  // values can be enumerated (Void, Unit, sums and boxes of those).
  void set_tests(const TypePtr& ty, const std::vector<TermPtr>& values);

  // Adds reducts, test applications and payloads (with `premises`, also the premises
  // of the compatible-refinement rules) until nothing is missing or the universe has
  // `limit` members. Returns what is still missing; empty means closed.
  const std::vector<std::string>& close(bool premises = false, std::size_t limit = 2000);
  bool closed(bool premises = false) const;
  // throws ClosureError listing what is missing
  void require_closed(bool premises = false) const;

  int size() const { return static_cast<int>(members_.size()); }
  const Member& operator[](int i) const { return members_.at(i); }
  const std::vector<TypePtr>& types() const { return types_; }
  const TypePtr& type_of(int i) const { return types_.at(members_.at(i).type); }
  // test values of a type index; empty when none are known
  const std::vector<int>& tests(int type) const;
  // index of the type, if some member or test set uses it
  std::optional<int> type_index(const TypePtr& ty) const;
  // member index by def name
  std::optional<int> named(const std::string& name) const;
  std::string label(int i) const;

 private:
  int intern(const TypePtr& ty);
  bool link(int i, std::vector<std::string>& missing);
  bool link_premises(int i, std::vector<std::string>& missing);
  // finds, or adds while there is room; -1 when missing
  int require(const TermPtr& t, const TypePtr& ty);
  // the test set, generating one when possible; null when there is none
  const std::vector<int>* tests_for(int type);

  AlgebraPtr A_;
  std::uint64_t fuel_;
  std::vector<Member> members_;
  std::vector<TypePtr> types_;
  std::map<std::string, int> index_;  // type index | canonical term
  std::map<int, std::vector<int>> tests_;
  std::map<std::string, int> names_;
  std::vector<std::string> missing_;
  std::size_t limit_ = 2000;
  bool closed_ = false, closed_premises_ = false;
};

using UniversePtr = std::shared_ptr<Universe>;

// Relation side: `extension` (simulations, refinement). Quantale side: `qextension`
// (distances). Both must be over the universe's grade algebra.
struct Config {
  UniversePtr universe;
  ExtensionPtr extension;
  QExtensionPtr qextension;

  const FiniteFrame& frame() const { return extension->frame(); }
  // throws std::invalid_argument on a mismatch
  void validate() const;
};

// A term relation on the universe: `terms` relates members of the same type,
// `values` relates value members of the same type. Both are indexed by member.
struct Candidate {
  WRelation terms;
  WRelation values;
  friend bool operator==(const Candidate& a, const Candidate& b) = default;
  bool subset_of(const Candidate& o) const { return terms.subset_of(o.terms) && values.subset_of(o.values); }
  std::size_t triples() const;
};

Candidate empty_candidate(const Universe& U);
// every same-type pair related at every world
Candidate full_candidate(const Universe& U, const FiniteFrame& F);
Candidate identity_candidate(const Universe& U, const FiniteFrame& F);
bool admissible(const Universe& U, bool value_layer, int x, int y);
// Throws std::invalid_argument when the candidate relates an inadmissible pair or is
// not monotone.
void check_candidate(const Config& cfg, const Candidate& R);

struct Verdict {
  enum class Status { Pass, Fail, Inconclusive, Rejected };
  Status status = Status::Pass;
  std::string clause;   // on Fail
  std::string witness;  // re-runnable: member names, world, grade
  std::string message;
  std::uint64_t depth = 0;
  std::size_t checked = 0;

  // simulation failures: the triple in R that [R] does not contain
  bool value_layer = false;
  int x = -1, y = -1, world = -1;
  std::optional<Grade> grade;

  bool pass() const { return status == Status::Pass; }
};

const char* status_name(Verdict::Status s);

// One application of the compatible-refinement rules (value-as-term, lam, app, let,
// unfold, fold, box, letbox, and injections and case). Binders are opened by
// substituting each test value. Needs Universe::close(true).
Candidate refine_compatible(const Config& cfg, const Candidate& R);

// [R]: the clause-wise simulation operator.
Candidate simulation_step(const Config& cfg, const Candidate& R);
// name of the clause governing a pair: eval, abs, fold, box, sum
std::string simulation_clause(const Universe& U, bool value_layer, int x, int y);
// Pass iff R is contained in [R]; otherwise the first missing triple.
Verdict check_simulation(const Config& cfg, const Candidate& R);

struct Pruning {
  Candidate result;
  int steps = 0;
};
// R, R & [R], ... until nothing changes
Pruning prune(const Config& cfg, Candidate R);

// Term and value matrices over members; inadmissible entries hold the bottom.
struct Distance {
  VMatrix terms;
  VMatrix values;
  bool stable = false;
  int iterations = 0;
  friend bool operator==(const Distance& a, const Distance& b) { return a.terms == b.terms && a.values == b.values; }
};

// everywhere top on admissible pairs
Distance top_distance(const Config& cfg);
// one application of the clause operator
Distance distance_step(const Config& cfg, const Distance& d);
// Kleene iteration from the top, at most k steps; stops early once stable.
Distance distance_fix(const Config& cfg, int k);
// bottom-lifted term distance of two members: the value distance of their outcomes
QVal lifted(const Config& cfg, const Distance& d, int x, int y);

// An open def, and for each context variable in order, the pair of values to
// substitute on each side.
struct SubstPairs {
  std::vector<TermPtr> left, right;
};

// The tensor over i of Delta_{j_i} delta(v_i, w_i) against delta(e[v], e[w]).
// Inconclusive when the distance does not stabilize within `depth` iterations or a
// substituted instance does not terminate within the fuel.
Verdict check_metric_preservation(const Program& prog, const Def& def, const std::vector<SubstPairs>& cases,
                                  const QExtensionPtr& qext, std::uint64_t fuel, int depth);

// Secret variables are those whose declared grade differs from `observer`. For every
// assignment of test values to the other variables and every two assignments of the
// candidate values to the secrets, the instances must be bisimilar at the observer's
// world on the B^W quantale of the masking extension. An ill-typed def gives Rejected.
// Missing candidate lists default to the generated test set of the variable's type.
Verdict check_noninterference(const Program& prog, const Def& def,
                              const std::map<std::string, std::vector<TermPtr>>& secrets, std::uint64_t fuel,
                              int depth, const std::string& observer = "low");

// Closed values of small first-order types: Void, Unit, and sums and boxes of those.
std::optional<std::vector<TermPtr>> enumerate_values(const GradeAlgebra& A, const TypePtr& ty, std::size_t limit = 64);

}  // namespace lj
