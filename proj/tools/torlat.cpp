#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "torlat/torlat.hpp"

using namespace torlat;

namespace {

struct Args {
  std::string input;
  bool json = false;
  std::string recipe;
  std::string c;
  std::size_t cycle_bound = 0;
  std::uint64_t seed = SchurOptions{}.seed;
};

AnalysisInput load_input(const std::string& input) {
  if (std::filesystem::is_regular_file(input)) {
    std::ifstream in(input);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      fail(ErrorKind::InvalidInput, input + ": " + e.what());
    }
    AnalysisInput a = input_from_json(j);
    if (a.name == "input") a.name = std::filesystem::path(input).stem().string();
    return a;
  }
  return input_from_catalog(input);
}

AnalyzeOptions options_from(const Args& a) {
  AnalyzeOptions o;
  if (!a.recipe.empty()) o.recipe = parse_recipe(a.recipe);
  if (!a.c.empty()) o.c = parse_cycnum(a.c);
  if (a.cycle_bound > 0) o.cycle_bound = a.cycle_bound;
  o.seed = a.seed;
  return o;
}

void print_lattices(const TorusReport& r) {
  for (const auto& l : r.lattices)
    std::cout << "  lattice " << l.recipe << ": rank " << l.lattice.rank() << (l.invariant ? ", invariant" : "")
              << (l.c ? ", c = " + l.c->to_string() : "") << "\n";
  for (const auto& os : r.order_structures) {
    std::cout << "  " << os.lattice_recipe << " over " << os.order.describe() << ": saturation index "
              << os.saturation.index;
    if (os.splitting) {
      std::cout << ", " << os.splitting->factors.size() << " factors";
      for (const auto& ring : os.rings) std::cout << " [" << ring.describe() << "]";
      std::cout << (os.factors_isogenous ? ", isogenous" : "");
    } else if (!os.note.empty()) {
      std::cout << ", " << os.note;
    }
    std::cout << "\n";
  }
}

void print_geom(const TorusReport& r) {
  if (!r.geom) {
    std::cout << "  reflection decomposition skipped: " << r.geom_skipped << "\n";
    return;
  }
  const auto& g = *r.geom;
  std::cout << "  lines: " << g.decomposition.lines.size() << ", [Lambda : Lambda0] = " << g.decomposition.index
            << ", det s = " << g.decomposition.s_determinant << "\n";
  for (std::size_t j = 0; j < g.decomposition.lines.size(); ++j)
    std::cout << "    line " << j << ": " << g.decomposition.lines[j].multipliers.describe() << "\n";
  std::cout << "  cycle multipliers up to length " << g.cycle_bound << ": " << g.multipliers.size() << "\n";
  for (const auto& e : g.graph.edges)
    std::cout << "    edge " << e.from << " -> " << e.to << ": index " << e.index << ", scalar " << e.scalar.c << "\n";
  std::cout << "  graph " << (g.graph.connected ? "connected" : "disconnected");
  if (g.cm) std::cout << ", CM by " << g.cm->ring.describe();
  std::cout << "\n";
}

void print_report(const TorusReport& r) {
  const auto& p = r.profile;
  std::cout << r.name << " (" << r.source << ")\n"
            << "  order " << r.order << ", n = " << r.dimension << ", conductor " << r.conductor << "\n"
            << "  Q(chi): " << to_string(p.field.kind) << " of degree " << p.field.degree;
  if (p.field.kind == FieldKind::ImaginaryQuadratic) std::cout << ", discriminant " << p.field.discriminant;
  std::cout << "\n  bilinear type " << to_string(p.bilinear.type) << ", Schur index " << p.schur.index << "\n"
            << "  lattices: " << (r.verdict.exists_any ? "yes" : "none") << " (clause " << to_string(r.verdict.clause)
            << ", rank n " << (r.verdict.exists_rank_n ? "yes" : "no") << ", rank 2n "
            << (r.verdict.exists_rank_2n ? "yes" : "no") << ")\n";
  print_lattices(r);
  print_geom(r);
  if (r.quaternion.algebra) std::cout << "  H = " << r.quaternion.algebra->algebra.describe() << "\n";
  if (r.quaternion.endomorphisms)
    std::cout << "  End: rank " << r.quaternion.endomorphisms->rank << ", "
              << to_string(r.quaternion.endomorphisms->tag) << "\n";
  for (const auto& t : r.theorems)
    std::cout << "  [" << t.tag << (t.certified ? "" : ", uncertified") << "] " << t.conclusion << "\n";
  std::cout << "  structure: " << r.structure << "\n";
}

int run(const std::string& verb, const Args& a) {
  if (verb == "catalog") {
    if (a.json) {
      std::cout << catalog_json().dump(2) << "\n";
    } else {
      for (const auto& e : catalog())
        std::cout << e.name << "  n=" << e.dimension << "  " << e.source << "\n    " << e.description << "\n";
    }
    return 0;
  }
  const TorusReport r = analyze(load_input(a.input), options_from(a));
  const Json j = to_json(r);
  if (verb == "analyze") {
    if (a.json) std::cout << j.dump(2) << "\n";
    else print_report(r);
  } else if (verb == "construct") {
    if (a.json) std::cout << Json{{"schema", kReportSchema}, {"lattices", j["lattices"]}, {"order_structure", j["order_structure"]}}.dump(2) << "\n";
    else print_lattices(r);
  } else {
    if (a.json) std::cout << Json{{"schema", kReportSchema}, {"reflection", j["reflection"]}}.dump(2) << "\n";
    else print_geom(r);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant lattices and complex tori of finite linear groups"};
  app.require_subcommand(1);
  Args args;

  app.add_subcommand("catalog", "list the built-in groups")->add_flag("--json", args.json, "emit JSON");
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"analyze", "full report"}, {"construct", "invariant lattices only"}, {"decompose", "reflection decomposition only"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", args.input, "catalog name or group JSON file")->required();
    sub->add_flag("--json", args.json, "emit JSON");
    sub->add_option("--recipe", args.recipe, "Zn, ds or O")->check(CLI::IsMember({"Zn", "ds", "O"}));
    sub->add_option("--c", args.c, "scalar for the ds recipe: i, zeta3, p/q or CycNum JSON");
    sub->add_option("--cycle-bound", args.cycle_bound, "longest reflection cycle to scan")->check(CLI::PositiveNumber);
    sub->add_option("--seed", args.seed, "seed for the Schur index search");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    return run(verb, args);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error (invalid-input): " << e.what() << "\n";
    return 2;
  }
}
