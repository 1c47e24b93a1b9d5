#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lj/grades.hpp"
#include "lj/syntax.hpp"
#include "lj/typecheck.hpp"

namespace lj {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}
  int line, col;
};

// def name [x :_g T, ...] : T = term
struct Def {
  std::string name;
  TypeEnv ctx;
  TypePtr type;
  TermPtr term;
  int line = 0;
};

struct Program {
  AlgebraPtr algebra;
  std::vector<Def> defs;
  std::map<std::string, TypePtr> types;

  const Def* find(const std::string& name) const;
  const Def& get(const std::string& name) const;  // throws std::out_of_range
};

// `#algebra <name>` must come first. Lattice and frame files named by the pragma
// resolve against `base_dir`. A name bound to an earlier closed def is replaced by its
// body (ascribed with its type when it is a value).
Program parse_program(std::string_view text, const std::filesystem::path& base_dir = {});
Program load_program(const std::filesystem::path& file);

// Single terms and types in the algebra (and with the defs and type names) of `prog`.
TermPtr parse_term(const Program& prog, std::string_view text);
TypePtr parse_type(const Program& prog, std::string_view text);
// parse_program on "#algebra <name>"
Program empty_program(std::string_view algebra);

}  // namespace lj
