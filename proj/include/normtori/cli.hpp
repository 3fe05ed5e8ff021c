#pragma once

// Command-line front end. Exit codes: 0 success, 1 validation or diagnostic
// failure, 2 usage error, 3 when `compare` finds the inputs distinct.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "normtori/error.hpp"
#include "normtori/normal_graph.hpp"
#include "normtori/normalize.hpp"
#include "normtori/oracle.hpp"
#include "normtori/position.hpp"
#include "normtori/serialize.hpp"
#include "normtori/sphere_graph.hpp"

namespace normtori::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;
inline constexpr int kDistinct = 3;

/// A diagnostic failure with the lines to print on standard error.
struct Failed {
  Diagnostics lines;
};

namespace detail {

inline std::string kind_of(const Json& doc) {
  return doc.is_object() && doc.contains("kind") && doc["kind"].is_string() ? doc["kind"].get<std::string>()
                                                                              : std::string("torus_position");
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// The normal torus in a document, normalizing a position first if asked.
inline NormalTorus normal_of(const Json& doc, bool normalize_positions) {
  const auto kind = kind_of(doc);
  if (kind == "normal_torus" || kind == "decorated_graph") return normal_torus_from_json(doc);
  if (kind == "normalized_torus") return normal_torus_from_json(doc.at("normal_torus"), "$.normal_torus");
  const auto t = position_from_document(doc);
  if (const auto d = validate_position(t); !d.empty()) throw Failed{d};
  if (normalize_positions) return normalize(t).torus;
  if (const auto r = is_normal(t); !r.normal) {
    auto lines = r.violations;
    lines.insert(lines.begin(), "position is not normal");
    throw Failed{lines};
  }
  return to_normal_torus(t);
}

inline DecoratedGraph decorated_of(const Json& doc, bool normalize_positions) {
  if (kind_of(doc) == "decorated_graph") return decorated_from_json(doc);
  return decorate(normal_of(doc, normalize_positions));
}

inline std::string summary(const std::string& name, const FuzzReport& r) {
  std::ostringstream os;
  os << name << ": " << r.trials.size() << " trials, " << r.failures.size() << " failures\n";
  for (const auto& f : r.failures) os << "  seed " << f.seed << " k=" << f.k << ": " << f.message << "\n";
  return os.str();
}

}  // namespace detail

/// Parses `argv` and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Normal forms of tori in connected sums of S2 x S1"};
  app.name("normtori");
  app.require_subcommand(1);

  std::string input, input2, output, trace_path;
  int rank = 2, trials = 0, depth = 64, k_max = 0, size_bound = 8, tori = 20, max_total = 12;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> graph_seed;
  std::vector<int> ranks{2, 3, 4};
  bool no_reversal = false, decorated = false;

  auto* graph = app.add_subcommand("graph", "Write a sphere graph (standard, or random cubic with --seed)");
  graph->add_option("--rank", rank, "Rank n >= 2")->check(CLI::Range(2, 64));
  graph->add_option("--seed", graph_seed, "Seed for a random cubic graph");
  graph->add_option("-o,--output", output, "Output path (default stdout)");

  auto* validate = app.add_subcommand("validate", "Check a graph, position or normal torus document");
  validate->add_option("input", input, "Input JSON")->required();

  auto* norm = app.add_subcommand("normalize", "Normalize a torus position");
  norm->add_option("input", input, "Input position JSON")->required();
  norm->add_option("-o,--output", output, "Output path (default stdout)");
  norm->add_option("--trace", trace_path, "Write the trace log here");

  auto* deco = app.add_subcommand("decorate", "Decorated graph of a normal torus");
  deco->add_option("input", input, "Normal position or normal torus JSON")->required();
  deco->add_option("-o,--output", output, "Output path (default stdout)");
  deco->add_flag("--no-reversal", no_reversal, "Do not identify the two axis directions");

  auto* cmp = app.add_subcommand("compare", "Compare the normal forms of two tori");
  cmp->add_option("a", input, "First input")->required();
  cmp->add_option("b", input2, "Second input")->required();
  cmp->add_flag("--no-reversal", no_reversal, "Do not identify the two axis directions");

  auto* axis = app.add_subcommand("axis-word", "Cyclic axis word of a normal torus");
  axis->add_option("input", input, "Normal position or normal torus JSON")->required();

  auto* fz = app.add_subcommand("fuzz", "Perturb random normal tori and normalize them back");
  fz->add_option("--seed", seed, "Base seed");
  fz->add_option("--trials", trials, "Number of trials")->default_val(100);
  fz->add_option("--rank", ranks, "Ranks to cycle through")->check(CLI::Range(2, 64));
  fz->add_option("--k-max", k_max, "Largest number of inverse moves")->default_val(8);
  fz->add_option("--size-bound", size_bound, "Size bound for random normal tori");
  fz->add_option("-o,--output", output, "Report path");

  auto* conf = app.add_subcommand("confluence", "Search every move order for a unique normal form");
  conf->add_option("input", input, "Position JSON (default: seeded random instances)");
  conf->add_option("--depth", depth, "Depth bound");
  conf->add_option("--seed", seed, "Base seed");
  conf->add_option("--trials", trials, "Number of seeded instances")->default_val(200);
  conf->add_option("--rank", ranks, "Ranks to cycle through")->check(CLI::Range(2, 64));
  conf->add_option("--max-total", max_total, "Circle budget per seeded instance");
  conf->add_option("-o,--output", output, "Report path");

  auto* mini = app.add_subcommand("minimality", "Perturb a normal torus and check normalization returns to it");
  mini->add_option("input", input, "Normal position JSON (default: random normal tori)");
  mini->add_option("--seed", seed, "Base seed");
  mini->add_option("--trials", trials, "Trials per torus")->default_val(1000);
  mini->add_option("--k-max", k_max, "Largest number of inverse moves")->default_val(5);
  mini->add_option("--rank", ranks, "Ranks for random tori")->check(CLI::Range(2, 64));
  mini->add_option("--tori", tori, "Random tori per rank");
  mini->add_option("-o,--output", output, "Report path");

  auto* dot = app.add_subcommand("export-dot", "Graphviz drawing of a position or decorated graph");
  dot->add_option("input", input, "Input JSON")->required();
  dot->add_option("-o,--output", output, "Output path (default stdout)");
  dot->add_flag("--decorated", decorated, "Draw a normal position as its decorated graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*graph) {
      const auto g = graph_seed ? random_cubic(rank, *graph_seed) : build_standard(rank);
      detail::emit(detail::dump(to_json(g)), output, out);
      return kOk;
    }
    if (*validate) {
      const auto doc = read_json_file(input);
      const auto kind = detail::kind_of(doc);
      Diagnostics d;
      if (kind == "sphere_graph")
        d = validate_graph(graph_from_json(doc));
      else if (kind == "normal_torus" || kind == "decorated_graph")
        d = validate_normal_torus(normal_torus_from_json(doc));
      else
        d = validate_position(position_from_document(doc));
      if (!d.empty()) throw Failed{d};
      out << "valid " << kind << "\n";
      return kOk;
    }
    if (*norm) {
      const auto t = position_from_document(read_json_file(input));
      if (const auto d = validate_position(t); !d.empty()) throw Failed{d};
      const auto r = normalize(t);
      std::string log;
      for (const auto& s : r.trace) log += trace_line(t.graph, s) + "\n";
      const auto text = detail::dump(to_json(r));
      if (!trace_path.empty()) detail::emit(log, trace_path, out);
      detail::emit(text, output, out);
      if (trace_path.empty()) (output.empty() || output == "-" ? err : out) << log;
      return kOk;
    }
    if (*deco) {
      const auto d = detail::decorated_of(read_json_file(input), false);
      auto j = to_json(d);
      j["canonical_code"] = canonicalize(d, !no_reversal).code;
      j["bounds_solid_torus"] = bounds_solid_torus(d);
      detail::emit(detail::dump(j), output, out);
      return kOk;
    }
    if (*cmp) {
      const auto a = detail::decorated_of(read_json_file(input), true);
      const auto b = detail::decorated_of(read_json_file(input2), true);
      if (a.torus.graph.p_vertices != b.torus.graph.p_vertices || a.torus.graph.edges.size() != b.torus.graph.edges.size())
        throw Failed{{"inputs live on different sphere graphs"}};
      const bool same = equivalent(a, b, !no_reversal);
      out << (same ? "EQUIVALENT" : "DISTINCT") << "\n";
      return same ? kOk : kDistinct;
    }
    if (*axis) {
      const auto nt = detail::normal_of(read_json_file(input), false);
      out << axis_word(nt, label_generators(nt.graph)).str() << "\n";
      return kOk;
    }
    if (*fz) {
      FuzzOptions opt;
      opt.ranks = ranks;
      opt.trials = trials;
      opt.k_max = k_max;
      opt.size_bound = size_bound;
      opt.seed = seed;
      const auto rep = fuzz(opt);
      if (!output.empty()) detail::emit(detail::dump(to_json(rep)), output, out);
      out << detail::summary("fuzz", rep);
      return rep.passed() ? kOk : kFailure;
    }
    if (*conf) {
      std::vector<std::pair<std::string, TorusPosition>> instances;
      if (!input.empty()) {
        instances.emplace_back(input, position_from_document(read_json_file(input)));
        if (const auto d = validate_position(instances.back().second); !d.empty()) throw Failed{d};
      } else {
        for (int i = 0; i < trials; ++i) {
          const int r = ranks[static_cast<std::size_t>(i) % ranks.size()];
          const auto s = normtori::detail::mix_seed(seed, static_cast<std::uint64_t>(i));
          instances.emplace_back("seed " + std::to_string(s), confluence_instance(r, s, max_total));
        }
      }
      Json report = Json::array();
      int bad = 0;
      for (const auto& [name, t] : instances) {
        const auto r = confluence_search(t, depth);
        const bool ok = r.confluent && r.complete;
        bad += ok ? 0 : 1;
        report.push_back({{"instance", name}, {"confluent", r.confluent}, {"complete", r.complete},
                          {"states", r.states}, {"terminals", r.terminals}, {"outcomes", r.outcomes},
                          {"stuck", r.stuck}});
        if (!ok || instances.size() == 1)
          out << name << ": " << r.states << " states, " << r.outcomes.size() << " normal forms, "
              << r.stuck.size() << " stuck" << (r.complete ? "" : ", search cut short") << "\n";
      }
      if (!output.empty())
        detail::emit(detail::dump({{"format", kFormatVersion}, {"kind", "confluence_report"}, {"instances", report}}),
                     output, out);
      out << "confluence: " << instances.size() << " instances, " << bad << " not confluent\n";
      return bad == 0 ? kOk : kFailure;
    }
    if (*mini) {
      std::vector<std::pair<std::string, TorusPosition>> tori_in;
      if (!input.empty()) {
        const auto t = position_from_document(read_json_file(input));
        if (const auto d = validate_position(t); !d.empty()) throw Failed{d};
        if (const auto r = is_normal(t); !r.normal) throw Failed{r.violations};
        tori_in.emplace_back(input, t);
      } else {
        for (int r : ranks)
          for (int i = 0; i < tori; ++i) {
            const auto s = normtori::detail::mix_seed(seed, static_cast<std::uint64_t>(r * 1000 + i));
            normtori::detail::Rng rng(s);
            const auto g = random_cubic(r, rng());
            tori_in.emplace_back("rank " + std::to_string(r) + " torus " + std::to_string(i),
                                 random_normal_torus(g, rng(), size_bound));
          }
      }
      Json reports = Json::array();
      std::size_t failures = 0;
      for (const auto& [name, t] : tori_in) {
        const auto rep = minimality_experiment(t, trials, k_max, seed);
        failures += rep.failures.size();
        auto j = to_json(rep);
        j["instance"] = name;
        reports.push_back(j);
        if (!rep.passed() || tori_in.size() == 1) out << detail::summary(name, rep);
      }
      if (!output.empty())
        detail::emit(detail::dump({{"format", kFormatVersion}, {"kind", "minimality_report"}, {"reports", reports}}),
                     output, out);
      out << "minimality: " << tori_in.size() << " tori, " << failures << " failures\n";
      return failures == 0 ? kOk : kFailure;
    }
    if (*dot) {
      const auto doc = read_json_file(input);
      const auto kind = detail::kind_of(doc);
      std::string text;
      if (kind == "torus_position" && !decorated) {
        const auto t = position_from_document(doc);
        if (const auto d = validate_position(t); !d.empty()) throw Failed{d};
        text = position_to_dot(t);
      } else {
        text = decorated_to_dot(detail::decorated_of(doc, false));
      }
      detail::emit(text, output, out);
      return kOk;
    }
  } catch (const Failed& f) {
    for (const auto& l : f.lines) err << l << "\n";
    return kFailure;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kFailure;
  } catch (const Json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace normtori::cli
