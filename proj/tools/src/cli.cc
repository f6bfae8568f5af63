/*
 * Copyright (c) 2026, The ctsf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ctsf_cli/cli.hh"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "ctsf/bisim.hh"
#include "ctsf/consensus.hh"
#include "ctsf/dot.hh"
#include "ctsf/error.hh"
#include "ctsf/graph.hh"
#include "ctsf/lts.hh"
#include "ctsf/representative.hh"
#include "ctsf/verifier.hh"

namespace ctsf::cli {

using json = nlohmann::json;

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"correspondence", "confluence", "roundtrip",
                                              "normal-form",    "congruence", "properties",
                                              "bisim"};
  return names;
}

namespace {

// A usage or configuration problem; maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a run needs, built from a validated RunConfig.
struct Setup {
  Model model;
  ExploreOptions explore;
};

Setup setup(const RunConfig& cfg) {
  if (cfg.mode != "calculus" && cfg.mode != "representative" && cfg.mode != "both") {
    throw UsageError("unknown mode '" + cfg.mode + "'");
  }
  if (cfg.format != "json" && cfg.format != "dot" && cfg.format != "text") {
    throw UsageError("unknown format '" + cfg.format + "'");
  }
  if (cfg.max_states == 0) throw UsageError("max-states must be positive");
  std::vector<std::uint64_t> values = cfg.values;
  if (values.empty()) {
    for (int p = 1; p <= cfg.n; ++p) values.push_back(static_cast<std::uint64_t>(p));
  }
  if (static_cast<int>(values.size()) != cfg.n) {
    throw UsageError("n is " + std::to_string(cfg.n) + " but " + std::to_string(values.size()) +
                     " values were given");
  }
  Setup s{make_model(ProblemInstance::make(values, cfg.budget), Mutations::parse(cfg.mutate)), {}};
  if (cfg.ti && (*cfg.ti < 1 || *cfg.ti > cfg.n)) {
    throw UsageError("ti must be an agent in 1.." + std::to_string(cfg.n));
  }
  for (const auto& c : cfg.checks) {
    const auto& all = check_names();
    if (std::find(all.begin(), all.end(), c) == all.end()) throw UsageError("unknown check '" + c + "'");
  }
  s.explore.max_states = cfg.max_states;
  s.explore.threads = cfg.threads;
  s.explore.ti = cfg.ti;
  return s;
}

json config_json(const Model& m, const RunConfig& cfg) {
  json j;
  j["n"] = m.n();
  j["values"] = m.instance.values;
  j["budget"] = m.instance.budget;
  j["mode"] = cfg.mode;
  j["max_states"] = cfg.max_states;
  j["mutations"] = m.mutations.to_string();
  if (cfg.ti) j["ti"] = *cfg.ti;
  return j;
}

// Writes to the configured file, or to `out`.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& out) : out_(&out) {
    if (!cfg.output.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.output);
      if (!*file_) throw UsageError("cannot write " + cfg.output);
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

json trace_json(const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) out.push_back({{"rule", s.rule}, {"action", s.action}, {"state", s.state}});
  return out;
}

json failures_json(const std::vector<Failure>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back({{"message", f.message}, {"trace", trace_json(f.trace)}});
  return out;
}

// ---------------------------------------------------------------------------
// explore

json graph_stats(const LtsGraph& g) {
  std::size_t terminal = 0;
  std::map<std::string, std::size_t> decided;
  for (NodeId n = 0; n < g.size(); ++n) {
    if (g.out_edges(n).empty()) ++terminal;
    Representative r = decode(g.key(n));
    if (r.wrap.j == 0 && !r.wrap.w.is_bot()) ++decided[r.wrap.w.to_string()];
  }
  json j;
  j["states"] = g.size();
  j["transitions"] = g.edge_count();
  j["terminal_states"] = terminal;
  j["decided_values"] = decided;
  j["truncated"] = g.truncated;
  j["errors"] = g.errors.size();
  return j;
}

bool same_graph(const LtsGraph& a, const LtsGraph& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  auto edges = [](const LtsGraph& g) {
    std::set<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& e : g.edges()) out.emplace(g.key(e.src), g.action(e.action).to_string(), g.key(e.dst));
    return out;
  };
  for (NodeId n = 0; n < a.size(); ++n) {
    if (!b.find(a.key(n))) return false;
  }
  return edges(a) == edges(b);
}

// ---------------------------------------------------------------------------
// verify

json check_json(const CheckResult& c) {
  return {{"name", c.name},       {"passed", c.passed()},
          {"checked", c.checked}, {"failure_count", c.failure_count},
          {"failures", failures_json(c.failures)}};
}

json bisim_json(const BisimResult& b, const LtsGraph& system, const LtsGraph& spec) {
  // The relation as classes; long member lists are cut short.
  constexpr std::size_t kShown = 64;
  std::map<std::uint32_t, std::pair<std::vector<std::string>, std::size_t>> sys, sp;
  for (NodeId n = 0; n < system.size(); ++n) {
    auto& [names, count] = sys[b.left_class[n]];
    if (names.size() < kShown) names.push_back(digest(system.key(n)));
    ++count;
  }
  for (NodeId n = 0; n < spec.size(); ++n) {
    auto& [names, count] = sp[b.right_class[n]];
    if (names.size() < kShown) names.push_back(spec.key(n));
    ++count;
  }
  json classes = json::array();
  for (std::uint32_t c = 0; c < b.class_count; ++c) {
    if (!sys.count(c) && !sp.count(c)) continue;
    classes.push_back({{"class", c},
                       {"system_states", sys[c].second},
                       {"system", sys[c].first},
                       {"spec_states", sp[c].second},
                       {"spec", sp[c].first}});
  }
  json j{{"name", "bisim"},
         {"passed", b.bisimilar},
         {"checked", system.size() + spec.size()},
         {"failure_count", b.bisimilar ? 0 : 1},
         {"relation", classes}};
  json fails = json::array();
  if (!b.bisimilar) fails.push_back({{"message", b.reason}, {"trace", trace_json(b.counterexample)}});
  j["failures"] = fails;
  return j;
}

json skipped_json(const std::string& name, const std::string& why) {
  return {{"name", name}, {"skipped", why}};
}

void print_check_text(std::ostream& os, const json& c) {
  if (c.contains("skipped")) {
    os << "SKIP " << c["name"].get<std::string>() << " (" << c["skipped"].get<std::string>() << ")\n";
    return;
  }
  os << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " (checked "
     << c["checked"].get<std::size_t>() << ", failures " << c["failure_count"].get<std::size_t>() << ")\n";
  auto emit = [&](const json& fs, const char* kind) {
    for (const auto& f : fs) {
      os << "  " << kind << f["message"].get<std::string>() << "\n";
      for (const auto& s : f["trace"]) {
        auto rule = s["rule"].get<std::string>();
        os << (rule.empty() ? "      " : "      --" + rule + ":" + s["action"].get<std::string>() + "--> ")
           << s["state"].get<std::string>() << "\n";
      }
    }
  };
  if (c.contains("failures")) emit(c["failures"], "");
  if (c.contains("sound_failures")) emit(c["sound_failures"], "soundness: ");
  if (c.contains("complete_failures")) emit(c["complete_failures"], "completeness: ");
}

// ---------------------------------------------------------------------------
// trace

std::vector<Transition> step_successors(const Representative& r, const Model& m, const std::string& mode) {
  return mode == "calculus" ? calculus_successors(r, m) : representative_successors(r, m);
}

json state_json(const Representative& r) {
  json j = json::parse(to_json(r));
  j["digest"] = digest(encode(r));
  return j;
}

}  // namespace

int cmd_explore(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Setup s = setup(cfg);
  std::vector<std::pair<Mode, LtsGraph>> graphs;
  if (cfg.mode != "calculus") graphs.emplace_back(Mode::kRepresentative, explore(s.model, Mode::kRepresentative, s.explore));
  if (cfg.mode != "representative") graphs.emplace_back(Mode::kCalculus, explore(s.model, Mode::kCalculus, s.explore));

  json report;
  report["config"] = config_json(s.model, cfg);
  json per_mode;
  bool truncated = false;
  for (const auto& [mode, g] : graphs) {
    per_mode[std::string(to_string(mode))] = graph_stats(g);
    truncated |= g.truncated;
  }
  report["graphs"] = per_mode;
  if (graphs.size() == 2) report["identical"] = same_graph(graphs[0].second, graphs[1].second);

  Sink sink(cfg, out);
  if (cfg.format == "dot") {
    write_dot(sink.stream(), graphs.front().second);
    err << report.dump() << "\n";
  } else if (cfg.format == "json") {
    sink.stream() << report.dump(2) << "\n";
  } else {
    for (const auto& [name, st] : per_mode.items()) {
      sink.stream() << name << ": " << st["states"] << " states, " << st["transitions"]
                    << " transitions, " << st["terminal_states"] << " terminal";
      for (const auto& [v, count] : st["decided_values"].items()) {
        sink.stream() << ", decided " << v << " in " << count << " states";
      }
      sink.stream() << (st["truncated"].get<bool>() ? " (truncated)" : "") << "\n";
    }
    if (report.contains("identical")) sink.stream() << "identical: " << report["identical"] << "\n";
  }
  if (truncated) {
    err << "bound exceeded: exploration stopped at " << cfg.max_states << " states\n";
    return kBoundExceeded;
  }
  return kPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Setup s = setup(cfg);
  if (cfg.format == "dot") throw UsageError("verify writes json or text");
  auto wanted = [&](const std::string& name) {
    return cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
  };

  json checks = json::array();
  LtsGraph graph;
  if (wanted("correspondence")) {
    CorrespondenceReport c = check_correspondence(s.model, s.explore);
    checks.push_back({{"name", "correspondence"},
                      {"passed", c.passed()},
                      {"checked", c.checked},
                      {"failure_count", c.sound_failures.size() + c.complete_failures.size()},
                      {"sound_failures", failures_json(c.sound_failures)},
                      {"complete_failures", failures_json(c.complete_failures)}});
    graph = std::move(c.graph);
  } else {
    graph = explore(s.model, Mode::kRepresentative, s.explore);
  }
  const bool truncated = graph.truncated;
  if (wanted("confluence")) checks.push_back(check_json(check_confluence(graph, s.model)));
  if (wanted("roundtrip")) checks.push_back(check_json(check_roundtrip(graph, s.model)));
  if (wanted("normal-form")) checks.push_back(check_json(check_normal_forms(graph, s.model)));
  if (wanted("congruence")) checks.push_back(check_json(check_congruence(graph, s.model)));
  const std::string partial = "graph truncated at " + std::to_string(cfg.max_states) + " states";
  if (wanted("properties")) {
    if (truncated) {
      checks.push_back(skipped_json("properties", partial));
    } else {
      for (const auto& c : check_properties(graph, s.model)) checks.push_back(check_json(c));
    }
  }
  if (wanted("bisim")) {
    if (truncated) {
      checks.push_back(skipped_json("bisim", partial));
    } else {
      LtsGraph spec = specification_graph(s.model);
      checks.push_back(bisim_json(weak_bisim(graph, spec), graph, spec));
    }
  }

  bool passed = true;
  for (const auto& c : checks) passed &= !c.contains("passed") || c["passed"].get<bool>();
  json report{{"config", config_json(s.model, cfg)},
              {"states", graph.size()},
              {"truncated", truncated},
              {"passed", passed},
              {"checks", checks}};

  Sink sink(cfg, out);
  if (cfg.format == "json") {
    sink.stream() << report.dump(2) << "\n";
  } else {
    for (const auto& c : checks) print_check_text(sink.stream(), c);
    sink.stream() << (passed ? "all checks passed" : "checks failed") << (truncated ? " (truncated)" : "")
                  << "\n";
  }
  if (!passed) return kCheckFailed;
  if (truncated) {
    err << "bound exceeded: checks ran on the first " << cfg.max_states << " states\n";
    return kBoundExceeded;
  }
  return kPass;
}

int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Setup s = setup(cfg);
  if (cfg.format == "dot") throw UsageError("trace writes json or text");
  const std::string mode = cfg.mode == "calculus" ? "calculus" : "representative";
  std::vector<Representative> initials;
  for (auto& r : initial_representatives(s.model)) {
    if (!cfg.ti || r.ti == *cfg.ti) initials.push_back(std::move(r));
  }

  Sink sink(cfg, out);
  std::ostream& os = sink.stream();
  if (cfg.schedule.empty()) {
    json all = json::array();
    for (const auto& r : initials) {
      if (cfg.format == "json") {
        all.push_back(state_json(r));
      } else {
        os << "initial " << digest(encode(r)) << "\n" << render(r) << "\n";
      }
    }
    if (cfg.format == "json") os << json{{"initial", all}}.dump(2) << "\n";
    return kPass;
  }

  const int ti = cfg.ti.value_or(1);
  Representative cur = initials.front();
  for (const auto& r : initials) {
    if (r.ti == ti) cur = r;
  }
  json steps = json::array();
  json initial = state_json(cur);
  if (cfg.format == "text") os << "initial " << digest(encode(cur)) << "\n" << render(cur) << "\n";
  for (std::size_t k = 0; k < cfg.schedule.size(); ++k) {
    const std::string& id = cfg.schedule[k];
    auto ts = step_successors(cur, s.model, mode);
    auto label = RuleLabel::parse(id);
    auto it = std::find_if(ts.begin(), ts.end(), [&](const Transition& t) { return label && t.label == *label; });
    if (it == ts.end()) {
      std::set<std::string> enabled;
      for (const auto& t : ts) enabled.insert(t.label.to_string());
      std::string list;
      for (const auto& e : enabled) list += "\n  " + e;
      err << Error(ErrorCode::kStepNotEnabled,
                   "step " + std::to_string(k + 1) + " '" + id + "' is " +
                       (label ? "not enabled" : "not a rule instance id") + "; enabled steps:" +
                       (list.empty() ? " none" : list))
                 .what()
          << "\n";
      return kUsage;
    }
    cur = it->target;
    if (cfg.format == "text") {
      os << "step " << k + 1 << ": " << it->label.to_string() << " " << it->action.to_string() << " -> "
         << digest(encode(cur)) << "\n"
         << render(cur) << "\n";
    } else {
      steps.push_back({{"rule", it->label.to_string()}, {"action", it->action.to_string()}, {"state", state_json(cur)}});
    }
  }
  if (cfg.format == "json") os << json{{"initial", initial}, {"steps", steps}}.dump(2) << "\n";
  return kPass;
}

// ---------------------------------------------------------------------------
// argv

namespace {

// Raw flag values; unset means "not given".
struct Flags {
  std::optional<int> n, budget, ti;
  std::vector<std::uint64_t> values;
  std::optional<std::string> mode, output, format, mutate, config;
  std::optional<std::size_t> max_states;
  std::vector<std::string> schedule, checks;
  std::optional<unsigned> threads;
};

void add_options(CLI::App& app, Flags& f) {
  app.add_option("--n", f.n, "Number of agents");
  app.add_option("--values", f.values, "Proposed values, comma-separated")->delimiter(',');
  app.add_option("--budget", f.budget, "Crash budget, at most n-1 (default n-1)");
  app.add_option("--mode", f.mode, "calculus, representative or both");
  app.add_option("--max-states", f.max_states, "State bound (default 5000000)");
  app.add_option("--format", f.format, "json, dot or text");
  app.add_option("--output", f.output, "Write the result here instead of stdout");
  app.add_option("--config", f.config, "JSON file with any of the settings above");
  app.add_option("--mutate", f.mutate, "Comma-separated mutations (for testing the verifier)");
  app.add_option("--ti", f.ti, "Trusted immortal to start from");
  app.add_option("--threads", f.threads, "Exploration threads (0 picks the core count)");
}

// Layers the config file and then the flags over the defaults.
RunConfig resolve(const Flags& f, const std::string& default_format) {
  RunConfig cfg;
  cfg.format = default_format;
  json file;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw UsageError("cannot read config " + *f.config);
    try {
      file = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError("bad config " + *f.config + ": " + e.what());
    }
    if (!file.is_object()) throw UsageError("config must be a JSON object");
  }
  try {
    std::optional<int> n;
    if (file.contains("n")) n = file["n"].get<int>();
    if (file.contains("values")) cfg.values = file["values"].get<std::vector<std::uint64_t>>();
    if (file.contains("budget")) cfg.budget = file["budget"].get<int>();
    if (file.contains("mode")) cfg.mode = file["mode"].get<std::string>();
    if (file.contains("max_states")) cfg.max_states = file["max_states"].get<std::size_t>();
    if (file.contains("format")) cfg.format = file["format"].get<std::string>();
    if (file.contains("output")) cfg.output = file["output"].get<std::string>();
    if (file.contains("ti")) cfg.ti = file["ti"].get<int>();
    if (file.contains("threads")) cfg.threads = file["threads"].get<unsigned>();
    if (file.contains("schedule")) cfg.schedule = file["schedule"].get<std::vector<std::string>>();
    if (file.contains("checks")) cfg.checks = file["checks"].get<std::vector<std::string>>();
    if (file.contains("mutate")) {
      const auto& m = file["mutate"];
      if (m.is_array()) {
        for (const auto& x : m) cfg.mutate += (cfg.mutate.empty() ? "" : ",") + x.get<std::string>();
      } else {
        cfg.mutate = m.get<std::string>();
      }
    }
    for (const auto& [key, value] : file.items()) {
      static const std::set<std::string> known{"n",       "values", "budget", "mode",     "max_states",
                                               "format",  "output", "ti",     "threads",  "schedule",
                                               "checks",  "mutate"};
      if (!known.count(key)) throw UsageError("unknown config key '" + key + "'");
    }
    if (f.n) n = f.n;
    if (!f.values.empty()) cfg.values = f.values;
    if (f.budget) cfg.budget = f.budget;
    if (f.mode) cfg.mode = *f.mode;
    if (f.max_states) cfg.max_states = *f.max_states;
    if (f.format) cfg.format = *f.format;
    if (f.output) cfg.output = *f.output;
    if (f.mutate) cfg.mutate = *f.mutate;
    if (f.ti) cfg.ti = f.ti;
    if (f.threads) cfg.threads = *f.threads;
    if (!f.schedule.empty()) cfg.schedule = f.schedule;
    if (!f.checks.empty()) cfg.checks = f.checks;
    // n follows the values when only they are given.
    cfg.n = n.value_or(cfg.values.empty() ? 1 : static_cast<int>(cfg.values.size()));
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  if (cfg.n < 1) throw UsageError("n must be positive");
  return cfg;
}

// Splits schedule arguments on ';' and whitespace; rule ids contain commas.
std::vector<std::string> split_schedule(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::string cur;
    for (char c : r + ";") {
      if (c == ';' || c == ' ' || c == '\n' || c == '\t') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explore and verify the consensus calculus model"};
  app.require_subcommand(1);
  Flags explore_f, verify_f, trace_f;
  auto* explore_cmd = app.add_subcommand("explore", "Explore the state space and report statistics");
  add_options(*explore_cmd, explore_f);
  auto* verify_cmd = app.add_subcommand("verify", "Run every check and report pass or fail");
  add_options(*verify_cmd, verify_f);
  verify_cmd->add_option("--checks", verify_f.checks, "Subset of checks to run, comma-separated")
      ->delimiter(',');
  auto* trace_cmd = app.add_subcommand("trace", "Replay a schedule of rule instances");
  add_options(*trace_cmd, trace_f);
  trace_cmd->add_option("--schedule", trace_f.schedule, "Rule instance ids separated by ';'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (explore_cmd->parsed()) return cmd_explore(resolve(explore_f, "json"), out, err);
    if (verify_cmd->parsed()) return cmd_verify(resolve(verify_f, "json"), out, err);
    RunConfig cfg = resolve(trace_f, "text");
    cfg.schedule = split_schedule(cfg.schedule);
    return cmd_trace(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kConfig ? kUsage : kCheckFailed;
  }
}

}  // namespace ctsf::cli
