#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lj {

// Set of worlds of a finite frame, one bit per world (frames have at most 64 worlds).
using WorldSet = std::uint64_t;

struct FrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite monoidal Kripke frame: a preorder with a commutative monotone monoid whose
// unit is the bottom element.
class FiniteFrame {
 public:
  // `order` lists generating pairs (a <= b); the reflexive-transitive closure is taken.
  // `table[a][b]` is a . b. Throws FrameError when an invariant fails.
  FiniteFrame(std::string name, std::vector<std::string> elements,
              const std::vector<std::pair<int, int>>& order, std::vector<std::vector<int>> table,
              int unit);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const std::string& element(int w) const { return elems_.at(w); }
  const std::vector<std::string>& elements() const { return elems_; }
  std::optional<int> index(std::string_view s) const;
  int index_or_throw(std::string_view s) const;

  bool leq(int a, int b) const { return leq_[a * size() + b]; }
  int op(int a, int b) const { return table_[a][b]; }
  int unit() const { return unit_; }

  WorldSet all() const { return all_; }
  WorldSet up(int w) const { return up_[w]; }
  WorldSet up_close(WorldSet s) const;
  bool is_upset(WorldSet s) const { return up_close(s) == s; }
  // up-closure of { v . u | v in a, u in b }
  WorldSet tensor(WorldSet a, WorldSet b) const;
  // every up-closed subset, ordered by bitmask
  const std::vector<WorldSet>& upsets() const { return upsets_; }

  // true when . is the binary join of the order (needed by the Kripke extension)
  bool is_join_frame() const;

  std::string show(WorldSet s) const;
  std::string describe() const;

 private:
  std::string name_;
  std::vector<std::string> elems_;
  std::vector<bool> leq_;
  std::vector<std::vector<int>> table_;
  int unit_;
  WorldSet all_ = 0;
  std::vector<WorldSet> up_;
  std::vector<WorldSet> upsets_;
};

using FramePtr = std::shared_ptr<const FiniteFrame>;

// Text format: `elements: a b c`, `order:` block of `a <= b` lines, `monoid:` block of
// `a . b = c` lines (one orientation suffices), `unit: a`. `--` starts a comment.
FiniteFrame parse_frame(std::string_view text, std::string name);
FiniteFrame load_frame(const std::filesystem::path& file);

FiniteFrame frame_unit();       // one world
FiniteFrame frame_f2();         // {0 <= 1}, max, unit 0
FiniteFrame frame_chain3();     // {0 <= 1 <= 2}, max, unit 0
FiniteFrame frame_lawvere4();   // {0, 0.5, 1, inf}, saturating halves addition

// Built-in names: unit, F2, chain3, lawvere4. Anything else is read as a frame file,
// relative to `base` when not absolute.
FramePtr named_frame(std::string_view name, const std::filesystem::path& base = {});

}  // namespace lj
