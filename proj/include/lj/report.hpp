#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lj {

// Outcome of one law over a sample space. `witness` is empty on pass.
struct LawResult {
  std::string law;
  bool ok = true;
  std::size_t checked = 0;
  std::string witness;
};

class LawReport {
 public:
  LawReport() = default;
  explicit LawReport(std::string subject) : subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }
  const std::vector<LawResult>& laws() const { return laws_; }

  // Returns the entry for `law`, creating it on first use.
  LawResult& law(const std::string& name) {
    for (auto& l : laws_)
      if (l.law == name) return l;
    laws_.push_back({name, true, 0, {}});
    return laws_.back();
  }

  // Counts one instance; the first failure is kept as the witness.
  bool check(const std::string& name, bool holds, const std::string& witness = {}) {
    auto& l = law(name);
    ++l.checked;
    if (!holds && l.ok) {
      l.ok = false;
      l.witness = witness;
    }
    return holds;
  }

  template <class WitnessFn>
  bool check_lazy(const std::string& name, bool holds, WitnessFn&& fn) {
    auto& l = law(name);
    ++l.checked;
    if (!holds && l.ok) {
      l.ok = false;
      l.witness = fn();
    }
    return holds;
  }

  bool ok() const {
    for (const auto& l : laws_)
      if (!l.ok) return false;
    return true;
  }

  const LawResult* find(const std::string& name) const {
    for (const auto& l : laws_)
      if (l.law == name) return &l;
    return nullptr;
  }

  void merge(const LawReport& other) {
    for (const auto& l : other.laws_) {
      auto& mine = law(l.law);
      mine.checked += l.checked;
      if (!l.ok && mine.ok) {
        mine.ok = false;
        mine.witness = l.witness;
      }
    }
  }

 private:
  std::string subject_;
  std::vector<LawResult> laws_;
};

inline std::ostream& operator<<(std::ostream& os, const LawReport& r) {
  for (const auto& l : r.laws()) {
    os << "clause=" << l.law << " status=" << (l.ok ? "pass" : "fail") << " checked=" << l.checked;
    if (!l.ok) os << " witness=" << l.witness;
    os << '\n';
  }
  return os;
}

}  // namespace lj
