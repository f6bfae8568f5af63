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

// Acceptance run: one PASS/FAIL line per criterion, details below each.

#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "ctsf/bisim.hh"
#include "ctsf/consensus.hh"
#include "ctsf/graph.hh"
#include "ctsf/verifier.hh"
#include "ctsf_cli/cli.hh"

using namespace ctsf;
using nlohmann::json;

namespace {

struct Instance {
  Model model;
  std::string name;
  CorrespondenceReport report;
};

std::string describe(const ProblemInstance& i) {
  std::string s = "n=" + std::to_string(i.n) + " U=(";
  for (std::size_t k = 0; k < i.values.size(); ++k) s += (k ? "," : "") + std::to_string(i.values[k]);
  return s + ") budget=" + std::to_string(i.budget);
}

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << s << "s";
  return os.str();
}

bool verdict(int criterion, bool ok, const std::string& summary) {
  std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << "  " << summary << std::endl;
  return ok;
}

void detail(const std::string& line) { std::cout << "    " << line << std::endl; }

std::string outcome(const CheckResult& c) {
  return c.name + (c.passed() ? " ok" : " FAILED x" + std::to_string(c.failure_count)) + " (" +
         std::to_string(c.checked) + ")";
}

}  // namespace

int main() {
  const std::size_t bound = 5'000'000;
  std::vector<Instance> small;
  small.push_back({make_model(ProblemInstance::make({4}, 0)), {}, {}});
  for (std::vector<std::uint64_t> u : {std::vector<std::uint64_t>{5, 7}, {7, 5}, {3, 3}}) {
    for (int b : {0, 1}) small.push_back({make_model(ProblemInstance::make(u, b)), {}, {}});
  }
  Instance big{make_model(ProblemInstance::make({1, 2, 3})), {}, {}};
  bool all = true;

  // 1. Correspondence.
  {
    bool ok = true;
    std::vector<std::string> lines;
    for (auto* inst : [&] {
           std::vector<Instance*> v;
           for (auto& s : small) v.push_back(&s);
           v.push_back(&big);
           return v;
         }()) {
      inst->name = describe(inst->model.instance);
      Clock clock;
      ExploreOptions o;
      o.max_states = bound;
      inst->report = check_correspondence(inst->model, o);
      const auto& r = inst->report;
      ok = ok && r.passed();
      lines.push_back(inst->name + ": " + std::to_string(r.checked) + " states, " +
                      std::to_string(r.sound_failures.size()) + " sound / " +
                      std::to_string(r.complete_failures.size()) + " complete failures" +
                      (r.truncated ? ", bound hit" : "") + ", " + fmt(clock.seconds()));
    }
    all &= verdict(1, ok, "calculus and representative successor sets equal on every reachable state");
    for (const auto& l : lines) detail(l);
  }

  // 2. Confluence.
  {
    bool ok = true;
    std::vector<std::string> lines;
    for (auto& inst : small) {
      CheckResult c = check_confluence(inst.report.graph, inst.model);
      ok = ok && c.passed();
      lines.push_back(inst.name + ": " + outcome(c));
    }
    all &= verdict(2, ok, "every single-step evaluation diamond joins, n<=2");
    for (const auto& l : lines) detail(l);
  }

  // 3. Normal forms.
  {
    bool ok = true;
    std::vector<std::string> lines;
    for (auto& inst : small) {
      CheckResult rt = check_roundtrip(inst.report.graph, inst.model);
      CheckResult nf = check_normal_forms(inst.report.graph, inst.model);
      CheckResult cg = check_congruence(inst.report.graph, inst.model, 1000);
      ok = ok && rt.passed() && nf.passed() && cg.passed();
      lines.push_back(inst.name + ": " + outcome(rt) + ", " + outcome(nf) + ", " + outcome(cg));
    }
    // At n=3 sf ran on every raw calculus target during the
    // correspondence check; here the round trip and congruence.
    Clock clock;
    CheckResult rt = check_roundtrip(big.report.graph, big.model);
    CheckResult cg = check_congruence(big.report.graph, big.model, 1000);
    ok = ok && rt.passed() && cg.passed();
    lines.push_back(big.name + ": " + outcome(rt) + ", " + outcome(cg) + ", " + fmt(clock.seconds()));
    all &= verdict(3, ok, "sf total on reachables, sf(sfi(R)) = R, sfi(sf(C)) congruent to C, congruence an equivalence");
    for (const auto& l : lines) detail(l);
  }

  // 4. Consensus properties.
  {
    bool ok = true;
    std::vector<std::string> lines;
    auto run = [&](Instance& inst) {
      if (inst.report.graph.truncated) {
        lines.push_back(inst.name + ": graph truncated, properties not checked");
        ok = false;
        return;
      }
      std::string line = inst.name + ":";
      for (const auto& c : check_properties(inst.report.graph, inst.model)) {
        ok = ok && c.passed();
        line += " " + outcome(c);
      }
      lines.push_back(line);
    };
    for (auto& inst : small) run(inst);
    run(big);
    all &= verdict(4, ok, "validity, agreement, termination and trace invariants, n<=3");
    for (const auto& l : lines) detail(l);
  }
  big.report.graph = LtsGraph();

  // 5. Weak bisimulation.
  {
    bool ok = true;
    std::vector<std::string> lines;
    for (auto& inst : small) {
      Clock clock;
      LtsGraph system = explore(inst.model, Mode::kCalculus);
      BisimResult r = weak_bisim(system, specification_graph(inst.model));
      ok = ok && r.bisimilar;
      lines.push_back(inst.name + ": " + (r.bisimilar ? "bisimilar" : "NOT bisimilar: " + r.reason) + ", " +
                      std::to_string(r.class_count) + " classes over " + std::to_string(system.size()) +
                      " states, " + fmt(clock.seconds()));
    }
    all &= verdict(5, ok, "system weakly bisimilar to the ok specification, n<=2");
    for (const auto& l : lines) detail(l);
  }

  // 6. Mutations, against the recorded fixture.
  {
    std::ifstream in(CTSF_FIXTURES "/mutations.json");
    json fixture = json::parse(in);
    bool ok = true;
    std::vector<std::string> lines;
    std::vector<std::string> values;
    for (const auto& v : fixture["instance"]["values"]) values.push_back(std::to_string(v.get<int>()));
    std::string list = values[0];
    for (std::size_t k = 1; k < values.size(); ++k) list += "," + values[k];
    const std::string budget = std::to_string(fixture["instance"]["budget"].get<int>());
    for (const auto& [name, expect] : fixture["mutations"].items()) {
      std::vector<std::string> args{"ctsf", "verify", "--values", list, "--budget", budget, "--mutate", name};
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream out, err;
      int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      json report = json::parse(out.str());
      std::string failing;
      bool matches = code == expect["exit"].get<int>();
      for (const auto& c : report["checks"]) {
        const std::string check = c["name"];
        bool passed = c["passed"];
        std::size_t count = c["failure_count"];
        if (!passed) failing += " " + check + " x" + std::to_string(count);
        const json& want = expect["checks"][check];
        matches = matches && want["passed"] == passed && want["failures"] == count;
      }
      bool caught = code == cli::kCheckFailed && !failing.empty();
      ok = ok && caught && matches;
      lines.push_back(name + ":" + (failing.empty() ? " nothing caught" : failing) +
                      (matches ? "" : "  (differs from fixture)"));
    }
    all &= verdict(6, ok, "every shipped mutation is reported, n=2, matching the recorded fixture");
    for (const auto& l : lines) detail(l);
  }

  return all ? 0 : 1;
}
