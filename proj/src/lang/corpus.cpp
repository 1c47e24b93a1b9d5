#include "lj/corpus.hpp"

#include <fstream>
#include <sstream>

#include "text.hpp"

namespace lj {

DefVerdict check_def(const Program& prog, const Def& d) {
  DefVerdict v;
  v.def = d.name;
  try {
    v.typing = typecheck_def(*prog.algebra, d.ctx, d.term, d.type);
    v.accepted = true;
  } catch (const TypeError& e) {
    v.message = e.what();
  }
  return v;
}

std::vector<DefVerdict> check_program(const Program& prog) {
  std::vector<DefVerdict> out;
  for (const auto& d : prog.defs) out.push_back(check_def(prog, d));
  return out;
}

std::vector<Expectation> read_expectations(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string body = ss.str();
  std::vector<Expectation> out;
  std::optional<Expectation> pending;
  int line = 0;
  for (auto raw : text::lines(body)) {
    ++line;
    auto l = text::trim(raw);
    if (text::starts_with(l, "-- expect:")) {
      auto rest = text::trim(l.substr(10));
      Expectation e;
      e.line = line;
      if (text::starts_with(rest, "accept")) {
        e.accept = true;
      } else if (text::starts_with(rest, "reject")) {
        e.accept = false;
        e.message = std::string(text::trim(rest.substr(6)));
      } else {
        throw std::runtime_error(file.string() + ":" + std::to_string(line) + ": bad expectation");
      }
      pending = e;
    } else if (text::starts_with(l, "def ") && pending) {
      auto w = text::words(l.substr(4));
      if (w.empty()) continue;
      std::string name = w[0];
      if (auto b = name.find_first_of("[:"); b != std::string::npos) name = name.substr(0, b);
      pending->def = name;
      out.push_back(*pending);
      pending.reset();
    }
  }
  return out;
}

bool matches(const Expectation& e, const DefVerdict& v) {
  if (e.accept != v.accepted) return false;
  return e.accept || v.message.find(e.message) != std::string::npos;
}

}  // namespace lj
