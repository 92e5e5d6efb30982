#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

#include "CLI11.hpp"
#include "pgraph/case_study.hpp"
#include "pgraph/dot.hpp"
#include "pgraph/error.hpp"
#include "pgraph/filter_analysis.hpp"
#include "pgraph/fixture_files.hpp"
#include "pgraph/json_io.hpp"
#include "pgraph/planning.hpp"
#include "pgraph/presentations.hpp"

namespace pgraph::cli {

namespace {

using io::Json;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

struct Output {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  bool witness = false;
  bool dot = false;
  std::string out_path;

  void write(const std::string& text) const {
    if (out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::invalid_argument, "cannot write '" + out_path + "'");
    f << text;
  }

  void graph(const io::GraphDocument& doc) const {
    if (dot) {
      write(to_dot(doc.graph, doc.goal ? *doc.goal : doc.term ? *doc.term : std::set<std::size_t>{}));
    } else {
      write(io::serialize(doc));
    }
  }

  int verdict(bool holds, const EventSequence& w, const std::string& detail, Json extra = Json::object()) const {
    if (json) {
      Json j = io::verdict_json(holds, w, detail);
      for (auto& [k, v] : extra.items()) j[k] = v;
      out << j.dump(2) << "\n";
    } else {
      out << (holds ? "holds" : "fails");
      if (!detail.empty()) out << ": " << detail;
      out << "\n";
      if (witness && !w.empty()) out << "witness: " << to_string(w) << "\n";
    }
    return holds ? kHolds : kFails;
  }
};

std::size_t enumeration_cap() {
  if (const char* env = std::getenv("PGRAPH_MAX_BRUTEFORCE")) {
    char* end = nullptr;
    auto v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 8;
}

io::GraphDocument load_graph(const std::string& path, bool check = true) {
  return io::parse_graph_document(io::read_file(path), check);
}

Json correspondence_json(const Presentation& p, const PGraph& input) {
  Json map = Json::object();
  for (std::size_t v = 0; v < p.graph.vertex_count(); ++v) {
    Json members = Json::array();
    for (auto m : p.corresp[v]) members.push_back(input.vertex(m).id);
    map[p.graph.vertex(v).id] = std::move(members);
  }
  return Json{{"format_version", io::format_version}, {"correspondence", std::move(map)}};
}

void write_sidecar(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis toolkit for p-graphs: filters, label maps and plans."};
  app.name("pgraph");
  app.fallthrough();
  app.require_subcommand(0, 1);

  Output o{out, err};
  bool print_schema = false;
  app.add_flag("--json", o.json, "Machine-readable verdicts");
  app.add_flag("--witness", o.witness, "Print counterexample traces");
  app.add_flag("--dot", o.dot, "Write graphs as Graphviz DOT");
  app.add_flag("--schema", print_schema, "Print the JSON schema of the document formats");
  app.add_option("-o,--output", o.out_path, "Write the resulting document to a file");

  std::function<int()> action;
  std::string file, file2, map_path, corresp_path;
  std::size_t n = 0, bound = 32, depth = 0, stages = 4;
  bool deterministic = false, swapped = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check a graph document");
  validate_cmd->add_option("graph", file)->required();
  validate_cmd->callback([&] {
    action = [&] {
      auto doc = load_graph(file, false);
      auto report = validate(doc.graph);
      std::string detail;
      for (const auto& i : report.issues) detail += (detail.empty() ? "" : "; ") + i.code + ": " + i.detail;
      return o.verdict(report.ok(), {}, detail);
    };
  });

  auto conversion = [&](const char* name, const char* help, std::function<Presentation(const PGraph&)> convert) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("graph", file)->required();
    cmd->add_option("--corresp", corresp_path, "Write the vertex correspondence to this file");
    cmd->callback([&, convert] {
      action = [&, convert] {
        auto doc = load_graph(file);
        auto p = convert(doc.graph);
        write_sidecar(corresp_path, correspondence_json(p, doc.graph));
        o.graph({p.graph, std::nullopt, std::nullopt});
        return kHolds;
      };
    });
  };
  conversion("determinize", "State-determined presentation", to_state_determined);
  conversion("single-output", "Single-outputting presentation", to_single_outputting);
  conversion("practicable", "State-determined and single-outputting filter", to_practicable_presentation);

  auto* det_cmd = app.add_subcommand("check-deterministic", "Is the filter deterministic?");
  det_cmd->add_option("filter", file)->required();
  det_cmd->callback([&] {
    action = [&] {
      auto v = is_deterministic_filter(load_graph(file).graph);
      return o.verdict(v.holds, v.witness, v.detail);
    };
  });

  auto* equiv_cmd = app.add_subcommand("check-equiv", "Is F1 equivalent to F2 modulo a label map?");
  equiv_cmd->add_option("f1", file)->required();
  equiv_cmd->add_option("f2", file2)->required();
  equiv_cmd->add_option("--map", map_path, "Label map document")->required();
  equiv_cmd->callback([&] {
    action = [&] {
      auto h = io::parse_label_map(io::read_file(map_path));
      auto v = equivalence_modulo_map(load_graph(file).graph, load_graph(file2).graph, h);
      return o.verdict(v.holds, v.witness, v.detail);
    };
  });

  auto* destr_cmd = app.add_subcommand("check-destructive", "Is the label map non-destructive on the filter?");
  destr_cmd->add_option("filter", file)->required();
  destr_cmd->add_option("--map", map_path, "Label map document")->required();
  destr_cmd->add_flag("--deterministic", deterministic, "Use the test for deterministic filters");
  destr_cmd->callback([&] {
    action = [&] {
      auto h = io::parse_label_map(io::read_file(map_path));
      auto f = load_graph(file).graph;
      if (deterministic) {
        bool nd = destructiveness_test_deterministic(f, h);
        return o.verdict(nd, {}, nd ? "non-destructive" : "destructive");
      }
      auto v = is_nondestructive_general(f, h);
      return o.verdict(v.holds, v.witness, v.holds ? "non-destructive" : "destructive: " + v.detail);
    };
  });

  auto* min_cmd = app.add_subcommand("minimize", "Is there a non-destructive observation map with at most N images?");
  min_cmd->add_option("filter", file)->required();
  min_cmd->add_option("--n", n, "Image size bound")->required();
  min_cmd->callback([&] {
    action = [&] {
      auto r = minimize_sensor_image(load_graph(file).graph, n);
      std::string detail = std::to_string(r.candidates_checked) + " candidate maps checked";
      if (r.holds) detail = "image size " + std::to_string(r.image_size) + ", " + detail;
      if (o.json) {
        return o.verdict(r.holds, {}, detail, Json{{"map", r.witness ? io::to_json(*r.witness) : Json(nullptr)}});
      }
      if (!r.holds) return o.verdict(false, {}, detail);
      err << detail << "\n";
      o.write(io::serialize(*r.witness));
      return kHolds;
    };
  });

  auto* color_cmd = app.add_subcommand("reduce-coloring", "Filter encoding a graph coloring instance");
  color_cmd->add_option("instance", file)->required();
  color_cmd->callback([&] {
    action = [&] {
      o.graph({reduce_from_3coloring(io::parse_coloring(io::read_file(file))), std::nullopt, std::nullopt});
      return kHolds;
    };
  });

  auto plan_command = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("plan", file)->required();
    cmd->add_option("problem", file2)->required();
    return cmd;
  };
  auto load_plan = [&] { return io::parse_plan(io::read_file(file)); };
  auto load_problem = [&] { return io::parse_problem(io::read_file(file2)); };

  plan_command("check-solves", "Does the plan solve the problem?")->callback([&] {
    action = [&] {
      auto v = solves(load_plan(), load_problem());
      std::string detail = v.failure ? std::string(to_string(*v.failure)) + ": " + v.detail : v.detail;
      Json extra = Json::object();
      if (v.failure) extra["failure"] = std::string(to_string(*v.failure));
      return o.verdict(v.solves, v.witness, detail, extra);
    };
  });
  plan_command("homomorphic", "Is the plan a homomorphic solution?")->callback([&] {
    action = [&] {
      auto v = is_homomorphic_solution(load_plan(), load_problem());
      return o.verdict(v.holds, v.witness, v.detail);
    };
  });
  plan_command("homogenize", "Derive a homomorphic solution from a solving plan")->callback([&] {
    action = [&] {
      try {
        auto q = derive_homomorphic_solution(load_plan(), load_problem());
        o.graph({q.graph, std::nullopt, q.term});
        return kHolds;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::not_a_solution) throw;
        return o.verdict(false, {}, e.what());
      }
    };
  });

  auto* synth_cmd = app.add_subcommand("synthesize", "Search for a plan solving the problem");
  synth_cmd->add_option("problem", file)->required();
  synth_cmd->add_option("--bound", bound, "Depth bound in events")->capture_default_str();
  synth_cmd->callback([&] {
    action = [&] {
      auto p = synthesize_plan(io::parse_problem(io::read_file(file)), bound);
      if (!p) return o.verdict(false, {}, "no plan within " + std::to_string(bound) + " events");
      o.graph({p->graph, std::nullopt, p->term});
      return kHolds;
    };
  });

  auto* pd_cmd = plan_command("plan-destructive", "Does the plan still solve the problem under the label map?");
  pd_cmd->add_option("--map", map_path, "Label map document")->required();
  pd_cmd->callback([&] {
    action = [&] {
      auto h = io::parse_label_map(io::read_file(map_path));
      bool destructive = map_destructive_on_plan(h, load_plan(), load_problem());
      return o.verdict(!destructive, {}, destructive ? "destructive: the mapped plan no longer solves the mapped problem"
                                                     : "non-destructive");
    };
  });

  auto* case_cmd = app.add_subcommand("case-study", "Walk the wall-following sensor hierarchy");
  case_cmd->add_flag("--swapped", swapped, "Swap the wall and cliff thresholds (exploratory)");
  case_cmd->add_option("--stages", stages, "Number of stages to run (1-4)")->capture_default_str();
  case_cmd->callback([&] {
    action = [&] {
      auto report = run_case_study(swapped, stages);
      if (o.json) {
        out << to_json(report).dump(2) << "\n";
      } else {
        out << format_report(report);
      }
      if (swapped) return kHolds;
      // Reference verdicts: every stage non-destructive except the constant map.
      bool as_expected = std::all_of(report.rows.begin(), report.rows.end(), [](const CaseStudyRow& r) {
        bool expected = r.stage != "constant";
        return r.nondestructive == expected && r.nondestructive_general == expected;
      });
      return as_expected ? kHolds : kFails;
    };
  });

  auto* enum_cmd = app.add_subcommand("enumerate", "List executions up to a depth");
  enum_cmd->add_option("graph", file)->required();
  enum_cmd->add_option("--depth", depth, "Maximum length")->required();
  enum_cmd->callback([&] {
    action = [&] {
      if (depth > enumeration_cap()) {
        throw Error(ErrorCode::too_large,
                    "depth " + std::to_string(depth) + " exceeds the cap " + std::to_string(enumeration_cap()));
      }
      auto g = load_graph(file).graph;
      std::vector<const PGraph*> gs{&g};
      auto runs = executions_up_to(g, depth, probe_sampler(gs));
      if (o.json) {
        Json all = Json::array();
        for (const auto& s : runs) all.push_back(io::to_json(s));
        out << all.dump(2) << "\n";
      } else {
        for (const auto& s : runs) out << (s.empty() ? "(empty)" : to_string(s)) << "\n";
      }
      return kHolds;
    };
  });

  auto* fx_cmd = app.add_subcommand("fixtures", "Bundled example documents");
  fx_cmd->require_subcommand(1);
  auto* dump_cmd = fx_cmd->add_subcommand("dump", "Write every fixture into a directory");
  dump_cmd->add_option("dir", file)->required();
  dump_cmd->callback([&] {
    action = [&] {
      std::filesystem::create_directories(file);
      for (const auto& d : fixtures::fixture_documents()) {
        auto path = std::filesystem::path(file) / d.name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error(ErrorCode::invalid_argument, "cannot write '" + path.string() + "'");
        f << d.text;
        out << path.string() << "\n";
      }
      return kHolds;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kInputError;
  }

  if (print_schema) {
    out << io::schema_text();
    if (io::schema_text().back() != '\n') out << "\n";
    return kHolds;
  }
  if (!action) {
    err << app.help();
    return kInputError;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace pgraph::cli
