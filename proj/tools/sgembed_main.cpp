#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgembed/cayley_table.hpp"
#include "sgembed/closure.hpp"
#include "sgembed/elements.hpp"
#include "sgembed/errors.hpp"
#include "sgembed/families.hpp"
#include "sgembed/invariants.hpp"
#include "sgembed/search.hpp"

namespace {

using namespace sgembed;

// Everything one invocation needs, collected before any computation runs.
struct RunConfig {
  std::vector<std::string> inputs;
  bool all = false;
  std::size_t limit = 1;
  std::string up_to = "none";
  bool no_partition = false;
  int threads = 1;
  std::string format = "lines";  // lines | text
  std::string family;
  uint32_t degree = 0;
  uint32_t max_degree = 8;
  std::string output;
};

// A target may be an abstract table file, a generator file (closed on
// load), or a family:degree shorthand such as T:3 or Brauer:2; the latter
// two keep element payloads, enabling conjugation dedup.
struct LoadedInput {
  CayleyTable table;
  std::optional<GeneratedTable> generated;
};

bool parse_family_shorthand(const std::string& spec, Family& family, uint32_t& degree) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    return false;
  }
  auto fam = family_from_name(spec.substr(0, colon));
  if (!fam.has_value()) {
    return false;
  }
  std::string rest = spec.substr(colon + 1);
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos) {
    return false;
  }
  family = *fam;
  degree = static_cast<uint32_t>(std::stoul(rest));
  return true;
}

LoadedInput load_input(const std::string& spec, int threads) {
  Family family{};
  uint32_t degree = 0;
  if (parse_family_shorthand(spec, family, degree)) {
    GeneratedTable generated = build_family(family, degree, default_element_cap, threads);
    LoadedInput out;
    out.table = generated.table;
    out.generated = std::move(generated);
    return out;
  }
  std::ifstream in(spec, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + spec + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  // A generator file starts with a kind keyword; a table starts with a
  // number.
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line(text.data() + pos, (eol == std::string::npos ? text.size() : eol) - pos);
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      if (std::isalpha(static_cast<unsigned char>(line[first]))) {
        GeneratorFile gens = read_generators(text);
        GeneratedTable generated = close_generators(gens.generators, default_element_cap, threads);
        LoadedInput out;
        out.table = generated.table;
        out.generated = std::move(generated);
        return out;
      }
      break;
    }
    if (eol == std::string::npos) {
      break;
    }
    pos = eol + 1;
  }
  return {read_table(text), std::nullopt};
}

void print_solution_line(std::ostream& os, const std::vector<uint32_t>& map) {
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (i > 0) {
      os << ' ';
    }
    os << map[i] + 1;
  }
  os << '\n';
}

void print_solutions(const SolutionSet& solutions, const std::string& format) {
  if (format == "text") {
    for (std::size_t s = 0; s < solutions.maps.size(); ++s) {
      std::cout << "solution " << s + 1 << ":";
      for (std::size_t i = 0; i < solutions.maps[s].size(); ++i) {
        std::cout << (i == 0 ? " " : ", ") << i + 1 << " -> " << solutions.maps[s][i] + 1;
      }
      std::cout << '\n';
    }
  } else {
    for (const auto& map : solutions.maps) {
      print_solution_line(std::cout, map);
    }
  }
}

const char* dedup_name(DedupMode mode) {
  switch (mode) {
    case DedupMode::none: return "none";
    case DedupMode::conjugation: return "conjugation";
    case DedupMode::automorphism: return "automorphism";
  }
  return "?";
}

void print_search_report(const SearchStats& stats, bool partitioned) {
  std::cerr << "# partition: " << (partitioned ? "on" : "off") << '\n';
  if (!stats.feasible) {
    std::cerr << "# infeasible: " << stats.infeasible_reason << '\n';
  }
  std::cerr << "# classes: " << stats.class_count << '\n';
  std::cerr << "# search space: " << stats.search_space << '\n';
  std::cerr << "# nodes: " << stats.nodes << '\n';
  std::cerr << "# leaves: " << stats.leaves << '\n';
}

SolutionSet apply_dedup(const SolutionSet& solutions,
                        const LoadedInput& target,
                        const std::string& up_to) {
  if (up_to == "conjugation") {
    if (!target.generated.has_value()) {
      throw UnsupportedActionError(
          "conjugation dedup needs element payloads; the target is an abstract table "
          "(use a generator file or a family:degree target)");
    }
    return dedup_images_conjugation(solutions, *target.generated);
  }
  if (up_to == "automorphism") {
    return dedup_images_automorphism(solutions, target.table);
  }
  return solutions;
}

int cmd_validate(const RunConfig& config) {
  CayleyTable table = read_table_file(config.inputs[0]);
  AssocCounterexample fail;
  if (validate_associativity(table, &fail, config.threads)) {
    std::cout << "associative\n";
    return 0;
  }
  std::cout << "not associative: (" << fail.i + 1 << ", " << fail.j + 1 << ", " << fail.k + 1
            << ")\n";
  return 1;
}

int cmd_profile(const RunConfig& config) {
  LoadedInput input = load_input(config.inputs[0], config.threads);
  std::cout << profile_report(table_profile(input.table, config.threads));
  return 0;
}

int cmd_gen(const RunConfig& config) {
  auto family = family_from_name(config.family);
  if (!family.has_value()) {
    throw std::runtime_error("unknown family '" + config.family
                             + "' (expected T S PT I P Brauer TL Istar BinRel)");
  }
  GeneratedTable generated = build_family(*family, config.degree, default_element_cap,
                                          config.threads);
  std::cerr << "# order: " << generated.table.order() << '\n';
  std::string text = write_table(generated.table);
  if (config.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.output, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write '" + config.output + "'");
    }
    out << text;
  }
  return 0;
}

int cmd_embed(const RunConfig& config) {
  LoadedInput source = load_input(config.inputs[0], config.threads);
  LoadedInput target = load_input(config.inputs[1], config.threads);
  SearchOptions options;
  options.limit = config.all || config.up_to != "none" ? all_solutions : config.limit;
  options.use_partition = !config.no_partition;
  options.threads = config.threads;
  SearchStats stats;
  SolutionSet solutions = find_embeddings(source.table, target.table, options, &stats);
  print_search_report(stats, options.use_partition);
  std::cerr << "# solutions: " << solutions.size() << '\n';
  SolutionSet final = apply_dedup(solutions, target, config.up_to);
  std::cerr << "# dedup: " << dedup_name(final.dedup_mode);
  if (final.dedup_mode != DedupMode::none) {
    std::cerr << " (" << final.size() << " of " << solutions.size() << " kept)";
  }
  std::cerr << '\n';
  print_solutions(final, config.format);
  return final.empty() ? 1 : 0;
}

int cmd_iso(const RunConfig& config) {
  LoadedInput a = load_input(config.inputs[0], config.threads);
  LoadedInput b = load_input(config.inputs[1], config.threads);
  if (a.table.order() != b.table.order()) {
    std::cout << "orders differ: " << a.table.order() << " vs " << b.table.order() << '\n';
    return 1;
  }
  TableProfile pa = table_profile(a.table, config.threads);
  TableProfile pb = table_profile(b.table, config.threads);
  if (std::string diff = first_profile_difference(pa, pb); !diff.empty()) {
    std::cout << "profiles differ: " << diff << '\n';
    return 1;
  }
  SearchOptions options;
  options.use_partition = !config.no_partition;
  options.threads = config.threads;
  SearchStats stats;
  auto iso = find_isomorphism(a.table, b.table, options, &stats);
  print_search_report(stats, options.use_partition);
  if (!iso.has_value()) {
    std::cout << "no isomorphism\n";
    return 1;
  }
  if (config.format == "text") {
    std::cout << "isomorphism:";
    for (std::size_t i = 0; i < iso->size(); ++i) {
      std::cout << (i == 0 ? " " : ", ") << i + 1 << " -> " << (*iso)[i] + 1;
    }
    std::cout << '\n';
  } else {
    print_solution_line(std::cout, *iso);
  }
  return 0;
}

int cmd_aut(const RunConfig& config) {
  LoadedInput input = load_input(config.inputs[0], config.threads);
  SearchOptions options;
  options.use_partition = !config.no_partition;
  options.threads = config.threads;
  SearchStats stats;
  SolutionSet group = automorphism_group(input.table, options, &stats);
  print_search_report(stats, options.use_partition);
  std::cerr << "# group order: " << group.size() << '\n';
  print_solutions(group, config.format);
  return 0;
}

int cmd_count(const RunConfig& config) {
  LoadedInput source = load_input(config.inputs[0], config.threads);
  LoadedInput target = load_input(config.inputs[1], config.threads);
  SearchOptions options;
  options.threads = config.threads;
  SearchStats stats;
  SolutionSet solutions = find_embeddings(source.table, target.table, options, &stats);
  SolutionSet final = apply_dedup(solutions, target, config.up_to);
  print_search_report(stats, true);
  std::cerr << "# dedup: " << dedup_name(final.dedup_mode) << '\n';
  std::cout << final.size() << '\n';
  return final.empty() ? 1 : 0;
}

struct MindegProgress {
  static void report(uint32_t degree, bool embeds, void*) {
    std::cerr << "# degree " << degree << ": " << (embeds ? "embeds" : "no embedding") << '\n';
  }
};

int cmd_mindeg(const RunConfig& config) {
  LoadedInput source = load_input(config.inputs[0], config.threads);
  auto family = family_from_name(config.family);
  if (!family.has_value()) {
    throw std::runtime_error("unknown family '" + config.family
                             + "' (expected T S PT I P Brauer TL Istar BinRel)");
  }
  MinimalDegreeResult result =
      minimal_degree(source.table, *family, config.max_degree, default_element_cap,
                     config.threads, &MindegProgress::report, nullptr);
  if (!result.degree.has_value()) {
    std::cout << "not found up to degree " << config.max_degree << '\n';
    return 1;
  }
  std::cout << *result.degree << '\n';
  return 0;
}

int cmd_twogen(const RunConfig& config) {
  LoadedInput source = load_input(config.inputs[0], config.threads);
  LoadedInput target = load_input(config.inputs[1], config.threads);
  TwoGenStats stats;
  std::vector<TwoGenWay> ways =
      target.generated.has_value()
          ? two_generated_embeddings(source.table, *target.generated, config.threads, &stats)
          : two_generated_embeddings(source.table, target.table, config.threads, &stats);
  std::cerr << "# pairs: " << stats.pairs << '\n';
  std::cerr << "# closures larger than the source: " << stats.distinct_closures << '\n';
  std::cerr << "# closure classes: " << stats.closure_classes << '\n';
  std::cerr << "# dedup: "
            << (stats.conjugation_available
                    ? (stats.duality_available ? "conjugation + duality" : "conjugation")
                    : "none")
            << '\n';
  std::cerr << "# ways: " << ways.size() << '\n';
  for (const auto& way : ways) {
    if (config.format == "text") {
      std::cout << "generators " << way.generators.first + 1 << ", " << way.generators.second + 1
                << ": closure of size " << way.closure.size() << ", " << way.embeddings.size()
                << " embedding(s)\n";
    } else {
      std::cout << way.generators.first + 1 << ' ' << way.generators.second + 1 << ' '
                << way.embeddings.size() << '\n';
    }
  }
  return ways.empty() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embeddings and isomorphisms of finite semigroups given by multiplication tables"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&config](CLI::App* cmd) {
    cmd->add_option("--threads", config.threads, "Worker threads (exhaustive searches only)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", config.format, "Output format: lines (machine) or text")
        ->check(CLI::IsMember({"lines", "text"}));
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a table file for associativity");
  validate->add_option("table", config.inputs, "Table file")->required()->expected(1);
  add_common(validate);

  CLI::App* profile = app.add_subcommand("profile", "Print the invariant profile of a table");
  profile->add_option("table", config.inputs, "Table file, generator file or family:degree")
      ->required()
      ->expected(1);
  add_common(profile);

  CLI::App* gen = app.add_subcommand("gen", "Emit the table of a standard family monoid");
  gen->add_option("--family", config.family, "T S PT I P Brauer TL Istar BinRel")->required();
  gen->add_option("--degree", config.degree, "Degree (number of points)")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("-o,--output", config.output, "Write the table here instead of stdout");
  add_common(gen);

  CLI::App* embed = app.add_subcommand("embed", "Find embeddings of SRC into TGT");
  embed->add_option("inputs", config.inputs, "SRC and TGT (file or family:degree)")
      ->required()
      ->expected(2);
  embed->add_flag("--all", config.all, "Enumerate all embeddings");
  embed->add_option("--limit", config.limit, "Stop after this many solutions (default 1)");
  embed->add_option("--up-to", config.up_to, "Count images up to a group action")
      ->check(CLI::IsMember({"none", "conjugation", "automorphism"}));
  embed->add_flag("--no-partition", config.no_partition, "Disable invariant pruning (A/B runs)");
  add_common(embed);

  CLI::App* iso = app.add_subcommand("iso", "Decide isomorphism of two tables");
  iso->add_option("inputs", config.inputs, "Two tables (file or family:degree)")
      ->required()
      ->expected(2);
  iso->add_flag("--no-partition", config.no_partition, "Disable invariant pruning (A/B runs)");
  add_common(iso);

  CLI::App* aut = app.add_subcommand("aut", "Enumerate the automorphism group of a table");
  aut->add_option("table", config.inputs, "Table file, generator file or family:degree")
      ->required()
      ->expected(1);
  aut->add_flag("--no-partition", config.no_partition, "Disable invariant pruning (A/B runs)");
  add_common(aut);

  CLI::App* count = app.add_subcommand("count", "Count embeddings of SRC into TGT");
  count->add_option("inputs", config.inputs, "SRC and TGT (file or family:degree)")
      ->required()
      ->expected(2);
  count->add_option("--up-to", config.up_to, "Count images up to a group action")
      ->check(CLI::IsMember({"none", "conjugation", "automorphism"}));
  add_common(count);

  CLI::App* mindeg = app.add_subcommand("mindeg", "Minimal family degree admitting SRC");
  mindeg->add_option("source", config.inputs, "Source table (file or family:degree)")
      ->required()
      ->expected(1);
  mindeg->add_option("--family", config.family, "T S PT I P Brauer TL Istar BinRel")->required();
  mindeg->add_option("--max", config.max_degree, "Largest degree to scan")
      ->required()
      ->check(CLI::PositiveNumber);
  add_common(mindeg);

  CLI::App* twogen =
      app.add_subcommand("twogen", "Embeddings into 2-generated subsemigroups of TGT");
  twogen->add_option("inputs", config.inputs, "SRC and TGT (file, generator file or family:degree)")
      ->required()
      ->expected(2);
  add_common(twogen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) {
      return cmd_validate(config);
    }
    if (profile->parsed()) {
      return cmd_profile(config);
    }
    if (gen->parsed()) {
      return cmd_gen(config);
    }
    if (embed->parsed()) {
      return cmd_embed(config);
    }
    if (iso->parsed()) {
      return cmd_iso(config);
    }
    if (aut->parsed()) {
      return cmd_aut(config);
    }
    if (count->parsed()) {
      return cmd_count(config);
    }
    if (mindeg->parsed()) {
      return cmd_mindeg(config);
    }
    if (twogen->parsed()) {
      return cmd_twogen(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
