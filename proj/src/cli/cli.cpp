#include "lj/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "lj/corpus.hpp"
#include "lj/equiv.hpp"
#include "lj/eval.hpp"
#include "text.hpp"

namespace lj {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One report per invocation. Items print as `key=value` lines in text mode.
struct Report {
  explicit Report(std::string command = {}, std::string status = "pass", std::string message = {})
      : command(std::move(command)), status(std::move(status)), message(std::move(message)) {}
  std::string command;
  std::string status;
  std::string message;
  std::vector<json> items;
};

std::string read_text(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto p = s.find(sep, start);
    auto piece = text::trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

// `key: value` lines of a spec file; `--` comments and blank lines skipped
struct SpecLine {
  int line;
  std::string key, value;
};

std::vector<SpecLine> spec_lines(const fs::path& file) {
  std::vector<SpecLine> out;
  int n = 0;
  const std::string body = read_text(file);
  for (auto raw : text::lines(body)) {
    ++n;
    auto l = text::trim(text::strip_comment(raw));
    if (l.empty()) continue;
    auto c = l.find(':');
    if (c == std::string_view::npos)
      throw UsageError(file.string() + ":" + std::to_string(n) + ": expected `key: value`");
    out.push_back({n, std::string(text::trim(l.substr(0, c))), std::string(text::trim(l.substr(c + 1)))});
  }
  return out;
}

// Parsed simcheck/distance spec.
struct UniverseSpec {
  fs::path dir;
  std::string program;
  std::uint64_t fuel = 200;
  std::string extension = "bang";
  std::string frame;
  std::vector<std::string> members;  // empty: every closed accepted def
  std::vector<std::pair<std::string, std::vector<std::string>>> tests;
  std::string candidate = "empty";
  bool prune = false;
  struct Rel {
    std::string a, b, world;
  };
  std::vector<Rel> relate;
};

UniverseSpec read_spec(const fs::path& file) {
  UniverseSpec s;
  s.dir = file.parent_path();
  for (const auto& l : spec_lines(file)) {
    auto bad = [&](const std::string& why) {
      return UsageError(file.string() + ":" + std::to_string(l.line) + ": " + why);
    };
    if (l.key == "program") s.program = l.value;
    else if (l.key == "fuel") s.fuel = std::stoull(l.value);
    else if (l.key == "extension") s.extension = l.value;
    else if (l.key == "frame") s.frame = l.value;
    else if (l.key == "members") {
      if (l.value != "all") s.members = text::words(l.value);
    } else if (text::starts_with(l.key, "tests ")) s.tests.push_back({l.key.substr(6), split(l.value, ';')});
    else if (l.key == "candidate") {
      if (l.value != "empty" && l.value != "identity" && l.value != "full") throw bad("candidate is empty, identity or full");
      s.candidate = l.value;
    } else if (l.key == "prune") {
      if (l.value != "yes" && l.value != "no") throw bad("prune is yes or no");
      s.prune = l.value == "yes";
    } else if (l.key == "relate") {
      auto parts = split(l.value, ',');
      if (parts.size() != 2 && parts.size() != 3) throw bad("relate: a, b[, world]");
      s.relate.push_back({parts[0], parts[1], parts.size() == 3 ? parts[2] : ""});
    } else {
      throw bad("unknown key " + l.key);
    }
  }
  if (s.program.empty()) throw UsageError(file.string() + ": no program");
  return s;
}

const Def& closed_def(const Program& prog, const std::string& name) {
  const Def* d = prog.find(name);
  if (!d) throw UsageError("no def named " + name);
  if (!d->ctx.empty()) throw UsageError("def " + name + " has free variables");
  auto v = check_def(prog, *d);
  if (!v.accepted) throw TypeError(name + ": " + v.message);
  return *d;
}

const Def& any_def(const Program& prog, const std::string& name) {
  const Def* d = prog.find(name);
  if (!d) throw UsageError("no def named " + name);
  return *d;
}

struct Built {
  Program prog;
  UniversePtr universe;
  ExtensionPtr extension;
};

Built build_universe(const UniverseSpec& s) {
  Built b{load_program(s.dir / s.program), nullptr, nullptr};
  auto U = std::make_shared<Universe>(b.prog.algebra, s.fuel);
  if (s.members.empty()) {
    for (const auto& d : b.prog.defs)
      if (d.ctx.empty() && check_def(b.prog, d).accepted) U->add(d.term, d.type, d.name);
  } else {
    for (const auto& m : s.members) {
      const Def& d = closed_def(b.prog, m);
      U->add(d.term, d.type, d.name);
    }
  }
  for (const auto& [ty, terms] : s.tests) {
    std::vector<TermPtr> vals;
    for (const auto& t : terms) vals.push_back(parse_term(b.prog, t));
    U->set_tests(parse_type(b.prog, ty), vals);
  }
  U->close();
  U->require_closed();
  b.universe = U;
  b.extension = make_extension(s.extension, b.prog.algebra, s.frame.empty() ? nullptr : named_frame(s.frame, s.dir));
  return b;
}

int member(const Universe& U, const std::string& name) {
  auto i = U.named(name);
  if (!i) throw UsageError(name + " is not a member of the universe");
  return *i;
}

void add_verdict(Report& r, const Verdict& v) {
  r.status = status_name(v.status);
  json item = json::object();
  if (!v.clause.empty()) item["clause"] = v.clause;
  if (!v.witness.empty()) item["witness"] = v.witness;
  item["checked"] = v.checked;
  item["depth"] = v.depth;
  r.items.push_back(item);
  r.message = v.message;
}

// ---- subcommands ----

Report cmd_typecheck(const std::string& file) {
  Report r{"typecheck"};
  Program prog = load_program(file);
  std::size_t rejected = 0;
  for (const auto& v : check_program(prog)) {
    json item{{"def", v.def}};
    if (v.accepted) {
      item["verdict"] = "accept";
      item["type"] = show_type(*prog.algebra, v.typing->type);
      item["usage"] = show_usage(*prog.algebra, v.typing->usage);
    } else {
      ++rejected;
      item["verdict"] = "reject";
      item["message"] = v.message;
    }
    r.items.push_back(item);
  }
  if (rejected) {
    r.status = "rejected";
    r.message = std::to_string(rejected) + " of " + std::to_string(prog.defs.size()) + " defs rejected";
  }
  return r;
}

Report cmd_eval(const std::string& file, const std::string& name, std::uint64_t fuel) {
  Report r{"eval"};
  Program prog = load_program(file);
  const Def& d = closed_def(prog, name);
  Outcome o = eval_fuel(d.term, fuel);
  json item{{"def", name}, {"fuel", fuel}};
  if (o.diverged()) item["result"] = "diverged";
  else item["result"] = show_term(*prog.algebra, strip_ann(o.value));
  r.items.push_back(item);
  return r;
}

void add_laws(Report& r, const LawReport& rep, const std::string& subject) {
  for (const auto& l : rep.laws()) {
    json item{{"subject", subject}, {"clause", l.law}, {"status", l.ok ? "pass" : "fail"}, {"checked", l.checked}};
    if (!l.ok) {
      item["witness"] = l.witness;
      r.status = "fail";
    }
    r.items.push_back(item);
  }
}

Report cmd_laws(const std::string& algebra, const std::string& extension, const std::string& frame,
                std::size_t samples, std::size_t triples, std::uint64_t seed) {
  Report r{"laws"};
  const fs::path here = fs::current_path();
  if (extension.empty()) {
    if (algebra.empty()) throw UsageError("laws needs --algebra or --extension");
    AlgebraPtr A = make_algebra(algebra, here);
    std::mt19937_64 rng(seed);
    auto carrier = A->carrier();
    add_laws(r, check_algebra(*A, carrier ? *carrier : A->sample(rng, samples), triples), A->name());
    return r;
  }
  std::string alg = algebra;
  if (alg.empty()) {
    if (extension == "kripke") alg = "trivial";
    else if (extension == "mask") alg = "sec2";
    else alg = frame.empty() ? "natinf" : "end:" + frame;
  }
  AlgebraPtr A = make_algebra(alg, here);
  ExtensionPtr E = make_extension(extension, A, frame.empty() ? nullptr : named_frame(frame, here));
  auto grades = E->sample_grades();
  RelUniverse U = standard_universe(E->frame());
  add_laws(r, check_cle(*E, grades, U), E->name());
  add_laws(r, check_distributivity(*E, grades, U), E->name());
  add_laws(r, check_monad_laws(E->frame(), U), E->frame().name());
  return r;
}

Report cmd_simcheck(const std::string& file) {
  Report r{"simcheck"};
  UniverseSpec s = read_spec(file);
  Built b = build_universe(s);
  const Universe& U = *b.universe;
  Config cfg{b.universe, b.extension, nullptr};
  const FiniteFrame& F = cfg.frame();

  Candidate R = s.candidate == "identity" ? identity_candidate(U, F)
                : s.candidate == "full"   ? full_candidate(U, F)
                                          : empty_candidate(U);
  struct Query {
    int x, y;
    WorldSet worlds;
    std::string text;
  };
  std::vector<Query> queries;
  for (const auto& rel : s.relate) {
    int x = member(U, rel.a), y = member(U, rel.b);
    if (!admissible(U, false, x, y)) throw UsageError(rel.a + " and " + rel.b + " have different types");
    WorldSet ws = rel.world.empty() ? F.all() : F.up(F.index_or_throw(rel.world));
    R.terms.set(x, y, R.terms.at(x, y) | ws);
    if (admissible(U, true, x, y)) R.values.set(x, y, R.values.at(x, y) | ws);
    queries.push_back({x, y, ws, "(" + rel.a + ", " + rel.b + ")"});
  }

  if (!s.prune) {
    add_verdict(r, check_simulation(cfg, R));
    r.items.back()["triples"] = R.triples();
    return r;
  }

  Pruning p = prune(cfg, R);
  Verdict again = check_simulation(cfg, p.result);
  json summary{{"clause", "prune"}, {"steps", p.steps}, {"triples", p.result.triples()},
               {"recheck", status_name(again.status)}};
  r.items.push_back(summary);
  if (!again.pass()) {
    add_verdict(r, again);
    return r;
  }
  for (const auto& q : queries) {
    WorldSet got = p.result.terms.at(q.x, q.y);
    json item{{"pair", q.text}, {"worlds", F.show(got)}};
    WorldSet lost = q.worlds & ~got;
    if (lost) {
      int w = std::countr_zero(lost);
      item["status"] = "fail";
      item["witness"] = "(" + U.label(q.x) + ", " + U.label(q.y) + ", " + F.element(w) + ")";
      if (r.status == "pass") {
        r.status = "fail";
        r.message = "pair " + q.text + " is not similar at " + F.element(w);
      }
    } else {
      item["status"] = "pass";
    }
    r.items.push_back(item);
  }
  return r;
}

QExtensionPtr make_qextension(const std::string& quantale, const AlgebraPtr& A, const ExtensionPtr& E) {
  if (quantale == "lawvere") return lawvere_scaling(A);
  if (quantale == "boolean")
    return predicate_lift(make_extension("bang", A, std::make_shared<FiniteFrame>(frame_unit())));
  if (quantale == "predicate") return predicate_lift(E);
  throw UsageError("unknown quantale " + quantale + " (lawvere, boolean, predicate)");
}

Report cmd_distance(const std::string& file, const std::string& quantale, int depth) {
  Report r{"distance"};
  UniverseSpec s = read_spec(file);
  Built b = build_universe(s);
  const Universe& U = *b.universe;
  Config cfg{b.universe, b.extension, make_qextension(quantale, b.prog.algebra, b.extension)};
  const Quantale& V = cfg.qextension->quantale();
  Distance d = distance_fix(cfg, depth);

  std::vector<std::pair<int, int>> pairs;
  for (const auto& rel : s.relate) pairs.push_back({member(U, rel.a), member(U, rel.b)});
  if (pairs.empty()) {
    std::vector<int> named;
    for (const auto& d : b.prog.defs)
      if (auto x = U.named(d.name)) named.push_back(*x);
    for (int x : named)
      for (int y : named)
        if (admissible(U, false, x, y)) pairs.push_back({x, y});
  }
  for (auto [x, y] : pairs) {
    if (!admissible(U, false, x, y)) throw UsageError(U.label(x) + " and " + U.label(y) + " have different types");
    r.items.push_back({{"pair", "(" + U.label(x) + ", " + U.label(y) + ")"}, {"distance", V.show(d.terms.at(x, y))}});
  }
  r.items.push_back({{"quantale", V.name()}, {"iterations", d.iterations}, {"stable", d.stable}});
  if (!d.stable) {
    r.status = "inconclusive";
    r.message = "distance did not stabilize within " + std::to_string(depth) + " iterations";
  }
  return r;
}

// `y = term` lines; several lines or `;` give several values
std::map<std::string, std::vector<TermPtr>> read_secrets(const Program& prog, const fs::path& file) {
  std::map<std::string, std::vector<TermPtr>> out;
  int n = 0;
  const std::string body = read_text(file);
  for (auto raw : text::lines(body)) {
    ++n;
    auto l = text::trim(text::strip_comment(raw));
    if (l.empty()) continue;
    auto eq = l.find('=');
    if (eq == std::string_view::npos) throw UsageError(file.string() + ":" + std::to_string(n) + ": expected `y = term`");
    auto& vals = out[std::string(text::trim(l.substr(0, eq)))];
    for (const auto& t : split(l.substr(eq + 1), ';')) vals.push_back(parse_term(prog, t));
  }
  return out;
}

Report cmd_noninterference(const std::string& file, const std::string& name, const std::string& secrets,
                           const std::string& observer, std::uint64_t fuel, int depth) {
  Report r{"noninterference"};
  Program prog = load_program(file);
  const Def& d = any_def(prog, name);
  auto given = secrets.empty() ? std::map<std::string, std::vector<TermPtr>>{} : read_secrets(prog, secrets);
  for (const auto& [y, vals] : given)
    if (!env_find(d.ctx, y)) throw UsageError(name + " has no variable " + y);
  add_verdict(r, check_noninterference(prog, d, given, fuel, depth, observer));
  return r;
}

// blocks opened by `case`, each with `x = left ~ right` lines
std::vector<SubstPairs> read_pairs(const Program& prog, const Def& d, const fs::path& file) {
  std::vector<std::map<std::string, std::pair<TermPtr, TermPtr>>> blocks;
  int n = 0;
  const std::string body = read_text(file);
  for (auto raw : text::lines(body)) {
    ++n;
    auto l = text::trim(text::strip_comment(raw));
    if (l.empty()) continue;
    auto where = file.string() + ":" + std::to_string(n) + ": ";
    if (l == "case") {
      blocks.emplace_back();
      continue;
    }
    auto eq = l.find('=');
    auto tilde = l.find('~');
    if (eq == std::string_view::npos || tilde == std::string_view::npos || tilde < eq)
      throw UsageError(where + "expected `x = left ~ right`");
    if (blocks.empty()) throw UsageError(where + "substitution before the first `case`");
    std::string x(text::trim(l.substr(0, eq)));
    blocks.back()[x] = {parse_term(prog, l.substr(eq + 1, tilde - eq - 1)), parse_term(prog, l.substr(tilde + 1))};
  }
  std::vector<SubstPairs> out;
  for (const auto& blk : blocks) {
    SubstPairs p;
    for (const auto& b : d.ctx) {
      auto it = blk.find(b.name);
      if (it == blk.end()) throw UsageError("a case of " + file.string() + " does not substitute " + b.name);
      p.left.push_back(it->second.first);
      p.right.push_back(it->second.second);
    }
    if (blk.size() != d.ctx.size()) throw UsageError("a case of " + file.string() + " substitutes unknown variables");
    out.push_back(std::move(p));
  }
  return out;
}

Report cmd_metric(const std::string& file, const std::string& name, const std::string& pairs,
                  const std::string& quantale, const std::string& frame, std::uint64_t fuel, int depth) {
  Report r{"metric"};
  Program prog = load_program(file);
  const Def& d = any_def(prog, name);
  auto cases = read_pairs(prog, d, pairs);
  ExtensionPtr E;
  if (quantale == "predicate")
    E = make_extension("bang", prog.algebra, frame.empty() ? nullptr : named_frame(frame, fs::current_path()));
  add_verdict(r, check_metric_preservation(prog, d, cases, make_qextension(quantale, prog.algebra, E), fuel, depth));
  return r;
}

// ---- output ----

std::string field(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print(const Report& r, bool as_json, std::ostream& out) {
  if (as_json) {
    json doc{{"command", r.command}, {"status", r.status}};
    if (!r.message.empty()) doc["message"] = r.message;
    doc["items"] = r.items;
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& item : r.items) {
    std::string line;
    for (const auto& [k, v] : item.items()) line += (line.empty() ? "" : " ") + k + "=" + field(v);
    out << line << '\n';
  }
  out << "status=" << r.status;
  if (!r.message.empty()) out << " message=" << r.message;
  out << '\n';
}

}  // namespace

int exit_code(const std::string& status) {
  if (status == "pass") return 0;
  if (status == "error") return 2;
  return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for the graded modal calculus: typing, evaluation, law suites, simulations, distances"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "print one JSON document");

  std::string file, def, spec, algebra, extension, frame, quantale = "lawvere", secrets, pairs, observer = "low";
  std::uint64_t fuel = 200, seed = 1;
  std::size_t samples = 200, triples = 1'000'000;
  int depth = 50;

  auto* typecheck = app.add_subcommand("typecheck", "typecheck every def of a program");
  typecheck->add_option("file", file)->required();

  auto* eval = app.add_subcommand("eval", "evaluate a closed def with bounded fuel");
  eval->add_option("file", file)->required();
  eval->add_option("--def", def)->required();
  eval->add_option("--fuel", fuel)->required();

  auto* laws = app.add_subcommand("laws", "run the algebra or extension law suites");
  laws->add_option("--algebra", algebra);
  laws->add_option("--extension", extension)->check(CLI::IsMember({"bang", "kripke", "mask"}));
  laws->add_option("--frame", frame);
  laws->add_option("--samples", samples, "samples for infinite carriers");
  laws->add_option("--triples", triples, "ternary laws run on all triples up to this many, else on seeded draws");
  laws->add_option("--seed", seed);

  auto* simcheck = app.add_subcommand("simcheck", "check or prune a candidate simulation");
  simcheck->add_option("spec", spec)->required();

  auto* distance = app.add_subcommand("distance", "iterate the distance operator");
  distance->add_option("spec", spec)->required();
  distance->add_option("--quantale", quantale)->check(CLI::IsMember({"lawvere", "boolean", "predicate"}));
  distance->add_option("--depth", depth);

  auto* nonint = app.add_subcommand("noninterference", "compare instances differing in secret inputs");
  nonint->add_option("file", file)->required();
  nonint->add_option("--def", def)->required();
  nonint->add_option("--secrets", secrets, "`y = term` lines; default: the enumerated test values");
  nonint->add_option("--observer", observer);
  nonint->add_option("--fuel", fuel);
  nonint->add_option("--depth", depth);

  auto* metric = app.add_subcommand("metric", "check grade-scaled distance bounds on substitution pairs");
  metric->add_option("file", file)->required();
  metric->add_option("--def", def)->required();
  metric->add_option("--pairs", pairs)->required();
  metric->add_option("--quantale", quantale)->check(CLI::IsMember({"lawvere", "boolean", "predicate"}));
  metric->add_option("--frame", frame, "frame of the predicate quantale");
  metric->add_option("--fuel", fuel);
  metric->add_option("--depth", depth);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    as_json = std::find(args.begin(), args.end(), "--json") != args.end();
    Report r{"", "error", e.what()};
    if (as_json) print(r, true, out);
    else err << "error: " << e.what() << '\n';
    return 2;
  }

  Report r;
  try {
    if (*typecheck) r = cmd_typecheck(file);
    else if (*eval) r = cmd_eval(file, def, fuel);
    else if (*laws) r = cmd_laws(algebra, extension, frame, samples, triples, seed);
    else if (*simcheck) r = cmd_simcheck(spec);
    else if (*distance) r = cmd_distance(spec, quantale, depth);
    else if (*nonint) r = cmd_noninterference(file, def, secrets, observer, fuel, depth);
    else r = cmd_metric(file, def, pairs, quantale, frame, fuel, depth);
  } catch (const std::exception& e) {
    r = Report{app.get_subcommands().front()->get_name(), "error", e.what()};
    if (!as_json) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  print(r, as_json, out);
  return exit_code(r.status);
}

}  // namespace lj
