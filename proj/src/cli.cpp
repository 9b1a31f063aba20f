#include "oruga/cli.hpp"

#include "oruga/dot.hpp"
#include "oruga/dsl.hpp"
#include "oruga/matching.hpp"
#include "oruga/transfer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace oruga::cli {

namespace {

struct UsageError {
  std::string message;
};

// nullopt after reporting a diagnostic; the exit code is stored in `code`.
std::optional<Document> load(const std::vector<std::string>& paths, std::ostream& err,
                             int& code) {
  std::vector<SourceFile> files;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      err << path << ": cannot read file\n";
      code = kExitUsage;
      return std::nullopt;
    }
    std::ostringstream text;
    text << in.rdbuf();
    files.push_back({path, text.str()});
  }
  try {
    return parse_documents(files);
  } catch (const Error& e) {
    err << e.what() << "\n";
    code = kExitDomain;
    return std::nullopt;
  }
}

const ConstructionDecl& find_construction(const Document& doc, const std::string& name) {
  const auto* c = doc.construction(name);
  if (!c) throw UsageError{"UnknownName: no construction named '" + name + "'"};
  return *c;
}

struct PatternRef {
  Pattern pattern;
  std::string space;
};

// NAME is a construction; SCHEMA.source and SCHEMA.target name schema patterns.
PatternRef find_pattern(const Document& doc, const std::string& name) {
  if (const auto* c = doc.construction(name)) return {c->body, c->con_spec};
  auto dot = name.rfind('.');
  if (dot != std::string::npos) {
    const auto* s = doc.schema(name.substr(0, dot));
    std::string side = name.substr(dot + 1);
    if (s && side == "source") return {s->source_pattern, s->source_space};
    if (s && side == "target") return {s->target_pattern, s->target_space};
  }
  throw UsageError{"UnknownName: no construction or schema pattern named '" + name + "'"};
}

const ConSpec& find_space(const Document& doc, const std::string& name) {
  const auto* cs = doc.con_spec(name);
  if (!cs) throw UsageError{"UnknownName: no conSpec named '" + name + "'"};
  return *cs;
}

int cmd_check(const Document& doc, std::ostream& out) {
  out << doc.declarations().size() << " declarations ok\n";
  return kExitOk;
}

int cmd_closure(const Document& doc, const std::string& ts_name, std::ostream& out) {
  const TypeSystem* ts = doc.type_system(ts_name);
  if (!ts) throw UsageError{"UnknownTypeSystem: no type system named '" + ts_name + "'"};
  for (const auto& [sub, super] : ts->closure_pairs()) out << sub << " <= " << super << "\n";
  return kExitOk;
}

int cmd_match(const Document& doc, const std::string& construction, const std::string& pattern,
              bool prefix, const std::vector<std::string>& anchor_args, std::ostream& out) {
  const auto& c = find_construction(doc, construction);
  auto p = find_pattern(doc, pattern);
  if (p.space != c.con_spec) {
    throw UsageError{"pattern '" + pattern + "' lives in " + p.space + ", not " + c.con_spec};
  }
  std::vector<Anchor> anchors;
  for (const auto& arg : anchor_args) {
    auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
      throw UsageError{"--anchor expects PATTERN_TOKEN=TOKEN, got '" + arg + "'"};
    }
    anchors.emplace_back(arg.substr(0, eq), arg.substr(eq + 1));
  }
  const TypeSystem& ts = doc.types_of(find_space(doc, c.con_spec));
  MatchOptions options{prefix ? MatchMode::Prefix : MatchMode::Exact, true};
  std::optional<Matching> m;
  try {
    m = find_match_anchored(c.body, p.pattern, ts, options, anchors);
  } catch (const Error& e) {
    throw UsageError{e.what()};
  }
  if (!m) {
    out << "no match\n";
    return kExitDomain;
  }
  for (const auto& [pid, token] : m->map) {
    out << pid << " -> " << token.id << " : " << token.type << "\n";
  }
  return kExitOk;
}

void print_derivation(const DerivationTree& tree, std::size_t goal_id, std::size_t depth,
                      const std::map<std::size_t, std::string>& goal_text, std::ostream& out) {
  const DerivationStep* step = tree.step_for(goal_id);
  out << std::string(2 + 2 * depth, ' ');
  auto it = goal_text.find(goal_id);
  out << (it == goal_text.end() ? "?" : it->second);
  if (!step) {
    out << " <= open\n";
    return;
  }
  out << " <= " << step->rule << "\n";
  for (auto child : step->children) print_derivation(tree, child, depth + 1, goal_text, out);
}

// Goal text uses the types the target variables had when each goal was discharged.
std::map<std::size_t, std::string> describe_goals(const DerivationTree& tree) {
  std::map<std::size_t, std::string> text;
  for (const auto& step : tree.steps) {
    TargetComposition snapshot;
    for (const auto& t : step.target_tokens) snapshot.tokens[t.id] = t;
    text[step.goal.id] = format_goal(step.goal, snapshot);
  }
  return text;
}

int cmd_transfer(const Document& doc, const std::string& construction,
                 const std::string& relation, const std::string& sought_type,
                 const std::string& target_space, const SearchLimits& limits,
                 std::ostream& out, std::ostream& err) {
  const auto& c = find_construction(doc, construction);
  const ConSpec& source_cs = find_space(doc, c.con_spec);
  const ConSpec& target_cs = find_space(doc, target_space);
  const TypeSystem& source_ts = doc.types_of(source_cs);
  const TypeSystem& target_ts = doc.types_of(target_cs);
  if (!target_ts.knows(sought_type)) {
    throw UsageError{"UnknownType: '" + sought_type + "' is not a type of " + target_space};
  }
  auto schemas = doc.schemas_between(source_cs.name(), target_cs.name());
  if (schemas.empty()) {
    err << "warning: NoApplicableSchema: no schema bridges " << source_cs.name() << " and "
        << target_cs.name() << "\n";
    out << "0 results, 0 expansions, limit-hit: no\n";
    return kExitDomain;
  }

  TransferContext ctx{c.body, source_cs, source_ts, target_cs, target_ts};
  std::size_t index = 0;
  auto print = [&](const TransferResult& result) {
    ++index;
    out << "result " << index << "\n";
    auto constructions = composition_to_constructions(result);
    for (std::size_t j = 0; j < constructions.size(); ++j) {
      out << "construction result" << index << "_" << j + 1 << ":" << target_cs.name()
          << " =\n  " << pretty_print(constructions[j], &target_ts, 2) << "\n";
    }
    out << "derivation:\n";
    auto goal_text = describe_goals(result.derivation);
    for (auto root : result.derivation.roots) {
      print_derivation(result.derivation, root, 0, goal_text, out);
    }
    out << "assumptions:";
    if (result.assumptions.empty()) out << " none";
    out << "\n";
    for (const auto& goal : result.assumptions) {
      out << "  " << goal_text[goal.id] << "\n";
    }
    out << "\n";
  };

  auto outcome = search(ctx, relation, {c.body.id()}, sought_type, schemas, limits, print);
  out << outcome.results.size() << " results, " << outcome.expansions
      << " expansions, limit-hit: " << (outcome.limit_hit ? "yes" : "no") << "\n";
  if (outcome.results.empty()) {
    if (!outcome.limit_hit) {
      err << "warning: NoApplicableSchema: no derivation discharges the goal\n";
    }
    return kExitDomain;
  }
  return kExitOk;
}

int cmd_export_dot(const Document& doc, const std::string& construction,
                   const std::string& output, std::ostream& out) {
  auto p = find_pattern(doc, construction);
  DotStyle style;
  style.graph_name = construction;
  std::string text = export_dot({p.pattern}, style);
  if (output.empty() || output == "-") {
    out << text;
    return kExitOk;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file || !(file << text)) throw UsageError{output + ": cannot write file"};
  return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Typed representational spaces: check, match and transfer constructions",
               "oruga"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string type_system, construction, pattern, relation, sought_type, target_space, output;
  std::vector<std::string> anchors, assumed;
  bool prefix = false;
  SearchLimits limits;

  auto add_files = [&](CLI::App* sub) {
    sub->add_option("files", files, "Oruga source files, loaded in order")->required();
  };

  auto* check = app.add_subcommand("check", "Parse and validate documents");
  add_files(check);

  auto* closure = app.add_subcommand("closure", "Print the subtype closure of a type system");
  add_files(closure);
  closure->add_option("--type-system", type_system)->required();

  auto* match = app.add_subcommand("match", "Match a construction against a pattern");
  add_files(match);
  match->add_option("--construction", construction)->required();
  match->add_option("--pattern", pattern, "Construction name, or SCHEMA.source / SCHEMA.target")
      ->required();
  match->add_flag("--prefix", prefix, "Let pattern leaves stand for whole sub-constructions");
  match->add_option("--anchor", anchors, "PATTERN_TOKEN=TOKEN");

  auto* transfer = app.add_subcommand("transfer", "Run structure transfer from a construction");
  add_files(transfer);
  transfer->add_option("--construction", construction)->required();
  transfer->add_option("--relation", relation)->required();
  transfer->add_option("--sought-type", sought_type)->required();
  transfer->add_option("--target-space", target_space)->required();
  transfer->add_option("--max-depth", limits.max_depth)->check(CLI::PositiveNumber);
  transfer->add_option("--max-results", limits.max_results)->check(CLI::PositiveNumber);
  transfer->add_option("--max-expansions", limits.max_expansions)->check(CLI::PositiveNumber);
  transfer->add_option("--assume", assumed, "Relations that may be discharged by assumption");
  transfer->add_flag("--single-construction", limits.single_construction);

  auto* dot = app.add_subcommand("export-dot", "Write a construction as Graphviz DOT");
  add_files(dot);
  dot->add_option("--construction", construction)->required();
  dot->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  limits.assumable.insert(assumed.begin(), assumed.end());

  int code = kExitOk;
  auto doc = load(files, err, code);
  if (!doc) return code;

  try {
    if (check->parsed()) return cmd_check(*doc, out);
    if (closure->parsed()) return cmd_closure(*doc, type_system, out);
    if (match->parsed()) return cmd_match(*doc, construction, pattern, prefix, anchors, out);
    if (transfer->parsed()) {
      return cmd_transfer(*doc, construction, relation, sought_type, target_space, limits, out,
                          err);
    }
    if (dot->parsed()) return cmd_export_dot(*doc, construction, output, out);
  } catch (const UsageError& e) {
    err << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

} // namespace oruga::cli
