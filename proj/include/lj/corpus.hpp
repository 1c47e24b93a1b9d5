#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lj/parser.hpp"
#include "lj/typecheck.hpp"

namespace lj {

// Typing verdict of one def.
struct DefVerdict {
  std::string def;
  bool accepted = false;
  std::string message;  // the TypeError text on rejection
  std::optional<Typing> typing;
};

DefVerdict check_def(const Program& prog, const Def& d);
std::vector<DefVerdict> check_program(const Program& prog);

// `-- expect: accept` or `-- expect: reject <message prefix>` on the line(s) before a def.
struct Expectation {
  std::string def;
  bool accept = true;
  std::string message;
  int line = 0;
};

std::vector<Expectation> read_expectations(const std::filesystem::path& file);

// true when the verdict matches: same decision, and the rejection message contains
// the expected text
bool matches(const Expectation& e, const DefVerdict& v);

}  // namespace lj
