#pragma once

#include <cstdint>
#include <stdexcept>

#include "lj/syntax.hpp"

namespace lj {

// A stuck closed term: only reachable from ill-typed input.
struct StuckError : std::logic_error {
  using std::logic_error::logic_error;
};

// A closed value, or divergence (fuel exhausted).
struct Outcome {
  TermPtr value;
  bool diverged() const { return !value; }
};

// eval_0 e = div; eval_{n+1} v = v; beta, unfold-fold, letbox-box and case reduce
// and continue at n; let runs e at n and then the instantiated body at n.
// Type ascriptions around a destructed value are looked through.
Outcome eval_fuel(const TermPtr& e, std::uint64_t n);

// the value under any ascriptions
TermPtr strip_ann(const TermPtr& v);

}  // namespace lj
