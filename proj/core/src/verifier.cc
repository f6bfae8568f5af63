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

#include "ctsf/verifier.hh"

#include <algorithm>
#include <bit>
#include <mutex>
#include <random>
#include <set>
#include <unordered_set>

#include "ctsf/error.hh"
#include "ctsf/evaluation.hh"
#include "ctsf/lts.hh"
#include "ctsf/representative.hh"
#include "ctsf/standard_form.hh"

namespace ctsf {

void CheckResult::fail(Failure f) {
  ++failure_count;
  if (failures.size() < kKeptFailures) failures.push_back(std::move(f));
}

std::vector<TraceStep> trace_to(const LtsGraph& g, NodeId n) {
  std::vector<TraceStep> out;
  for (NodeId k : g.path_to(n)) {
    TraceStep s;
    if (const Edge* e = g.tree_edge(k)) {
      s.rule = e->label.to_string();
      s.action = g.action(e->action).to_string();
    }
    s.state = digest(g.key(k));
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

using StepSet = std::set<std::pair<std::string, std::string>>;  // (action, target key)

std::string describe(const std::string& action, const std::string& target) {
  return action + " -> " + digest(target);
}

}  // namespace

// ---------------------------------------------------------------------------
// Correspondence

CorrespondenceReport check_correspondence(const Model& model, const ExploreOptions& options) {
  CorrespondenceReport report;
  std::mutex mu;
  // Failures are recorded against keys and turned into traces once the
  // graph is complete.
  std::vector<std::pair<std::string, std::string>> sound, complete;

  SuccessorFn fn = [&](const std::string& key) {
    Representative r = decode(key);
    auto rep = representative_successors(r, model);
    std::vector<KeyedSuccessor> out;
    StepSet rs;
    for (auto& t : rep) {
      std::string k = encode(t.target);
      rs.emplace(t.action.to_string(), k);
      out.push_back({std::move(t.action), t.label, std::move(k)});
    }
    StepSet cs;
    std::string calc_error;
    try {
      for (auto& t : calculus_successors(r, model)) cs.emplace(t.action.to_string(), encode(t.target));
    } catch (const Error& e) {
      calc_error = e.what();
    }
    std::lock_guard lock(mu);
    if (!calc_error.empty()) {
      complete.emplace_back(key, "calculus step failed: " + calc_error);
    } else {
      for (const auto& s : rs) {
        if (!cs.count(s)) sound.emplace_back(key, "no calculus step for " + describe(s.first, s.second));
      }
      for (const auto& s : cs) {
        if (!rs.count(s)) {
          complete.emplace_back(key, "no representative step for " + describe(s.first, s.second));
        }
      }
    }
    return out;
  };

  std::vector<std::string> initials;
  for (const auto& r : initial_representatives(model)) {
    if (!options.ti || r.ti == *options.ti) initials.push_back(encode(r));
  }
  report.graph = explore_keys(initials, fn, options);
  report.truncated = report.graph.truncated;
  report.checked = report.graph.size();

  auto convert = [&](auto& from, std::vector<Failure>& to) {
    std::sort(from.begin(), from.end());
    for (auto& [key, msg] : from) {
      NodeId n = *report.graph.find(key);
      to.push_back({digest(key) + ": " + msg, trace_to(report.graph, n)});
    }
  };
  convert(sound, report.sound_failures);
  convert(complete, report.complete_failures);
  for (const auto& [n, msg] : report.graph.errors) {
    report.sound_failures.push_back(
        {digest(report.graph.key(n)) + ": representative step failed: " + msg,
         trace_to(report.graph, n)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Confluence

namespace {

struct NetworkHash {
  std::size_t operator()(const Network& n) const { return n.hash(); }
};

// Explores the single-step evaluation graph of `root`. Returns an empty
// string on success, otherwise what went wrong.
std::string confluence_of(const Configuration& root, const Model& model, std::size_t bound) {
  const Configuration expected = evaluate(root, model.program);
  if (!eval_steps(expected, model.program).empty()) {
    return "evaluate leaves a step enabled on " + expected.to_string();
  }
  std::unordered_set<Network, NetworkHash> seen{root.net};
  std::vector<Network> queue{root.net};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    Configuration c{root.gamma, root.ti, queue[k]};
    auto steps = eval_steps(c, model.program);
    if (steps.empty() && !(c.net == expected.net)) {
      return "fixed points differ: " + c.to_string() + " vs " + expected.to_string();
    }
    for (auto& s : steps) {
      if (!(evaluate(s.result, model.program).net == expected.net)) {
        return std::string("step ") + std::string(to_string(s.rule)) + " from " + c.to_string() +
               " evaluates elsewhere";
      }
      if (seen.insert(s.result.net).second) {
        if (seen.size() > bound) {
          return "evaluation graph exceeds " + std::to_string(bound) + " configurations";
        }
        queue.push_back(std::move(s.result.net));
      }
    }
  }
  return {};
}

}  // namespace

CheckResult check_confluence(const LtsGraph& graph, const Model& model,
                             const ConfluenceOptions& options) {
  CheckResult res{"confluence"};
  res.truncated = graph.truncated;
  auto run = [&](const Configuration& root, auto&& trace) {
    ++res.checked;
    std::string why;
    try {
      why = confluence_of(root, model, options.max_configurations);
    } catch (const Error& e) {
      why = e.what();
    }
    if (!why.empty()) res.fail({why, trace()});
  };
  auto no_trace = [] { return std::vector<TraceStep>{}; };

  Configuration initial = make_initial(model.instance);
  run(initial, no_trace);
  for (const auto& c : select_ti(initial)) run(c, no_trace);
  for (NodeId n = 0; n < graph.size(); ++n) {
    Configuration c = sfi(decode(graph.key(n)), model);
    for (auto& t : config_transitions(c, model, false)) {
      run(t.target, [&] {
        auto trace = trace_to(graph, n);
        trace.push_back({t.label.to_string(), t.action.to_string(), "(raw)"});
        return trace;
      });
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Normal forms

CheckResult check_roundtrip(const LtsGraph& graph, const Model& model) {
  CheckResult res{"roundtrip"};
  res.truncated = graph.truncated;
  for (NodeId n = 0; n < graph.size(); ++n) {
    ++res.checked;
    Representative r = decode(graph.key(n));
    try {
      if (!(sf(sfi(r, model), model) == r)) res.fail({"sf(sfi(R)) differs from R", trace_to(graph, n)});
    } catch (const Error& e) {
      res.fail({e.what(), trace_to(graph, n)});
    }
  }
  return res;
}

CheckResult check_normal_forms(const LtsGraph& graph, const Model& model) {
  CheckResult res{"normal-form"};
  res.truncated = graph.truncated;
  for (NodeId n = 0; n < graph.size(); ++n) {
    Configuration c = sfi(decode(graph.key(n)), model);
    for (auto& t : config_transitions(c, model, false)) {
      ++res.checked;
      try {
        Representative r = sf(t.target, model);
        if (!congruent(sfi(r, model), t.target, model)) {
          res.fail({"sfi(sf(C)) not congruent to C", trace_to(graph, n)});
        }
      } catch (const Error& e) {
        auto trace = trace_to(graph, n);
        trace.push_back({t.label.to_string(), t.action.to_string(), "(raw)"});
        res.fail({e.what(), std::move(trace)});
      }
    }
  }
  return res;
}

namespace {

// Random rearrangements of a configuration that stay congruent to it.
class Shuffler {
 public:
  explicit Shuffler(std::uint32_t seed) : rng_(seed) {}

  Configuration operator()(const Configuration& c) {
    FlatNetwork flat = flatten(c.net);
    std::vector<Network> parts;
    // Merge a few neighbours at the same location into one located par.
    std::shuffle(flat.components.begin(), flat.components.end(), rng_);
    for (std::size_t k = 0; k < flat.components.size(); ++k) {
      const auto& comp = flat.components[k];
      if (k + 1 < flat.components.size() && flat.components[k + 1].location == comp.location &&
          coin()) {
        parts.push_back(Network::located(
            comp.location, Process::par(comp.process, flat.components[k + 1].process)));
        ++k;
      } else {
        parts.push_back(Network::located(comp.location, comp.process));
      }
      if (coin(4)) parts.push_back(coin() ? Network::nil() : Network::located(comp.location, Process::nil()));
    }
    // Two restriction groups, split at a random point.
    std::vector<ChannelId> inner = flat.restricted, outer;
    std::shuffle(inner.begin(), inner.end(), rng_);
    std::size_t cut = inner.empty() ? 0 : pick(inner.size() + 1);
    outer.assign(inner.begin() + static_cast<std::ptrdiff_t>(cut), inner.end());
    inner.resize(cut);
    Network body = associate(parts, 0, parts.size());
    return Configuration{c.gamma, c.ti,
                         Network::restrict_all(Network::restrict_all(body, inner), outer)};
  }

 private:
  bool coin(std::uint32_t odds = 2) { return std::uniform_int_distribution<std::uint32_t>(0, odds - 1)(rng_) == 0; }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  // Random binary tree over parts[lo, hi).
  Network associate(const std::vector<Network>& parts, std::size_t lo, std::size_t hi) {
    if (lo == hi) return Network::nil();
    if (hi - lo == 1) return parts[lo];
    std::size_t mid = lo + 1 + pick(hi - lo - 1);
    return Network::par(associate(parts, lo, mid), associate(parts, mid, hi));
  }

  std::mt19937 rng_;
};

}  // namespace

CheckResult check_congruence(const LtsGraph& graph, const Model& model, std::size_t samples) {
  CheckResult res{"congruence"};
  res.truncated = graph.truncated;
  if (graph.size() == 0) return res;
  Shuffler shuffle(0x5eed);
  const std::size_t count = std::min(samples, graph.size());
  const std::size_t stride = graph.size() / count;
  auto failure = [&](NodeId n, std::string msg) { res.fail({std::move(msg), trace_to(graph, n)}); };

  for (std::size_t s = 0; s < count; ++s) {
    const auto n = static_cast<NodeId>(s * stride);
    const auto other = static_cast<NodeId>((n + graph.size() / 2 + 1) % graph.size());
    ++res.checked;
    try {
      Configuration base = sfi(decode(graph.key(n)), model);
      Configuration a = shuffle(base), b = shuffle(base), c = shuffle(base);
      if (!congruent(a, a, model)) failure(n, "congruent is not reflexive");
      if (congruent(a, b, model) != congruent(b, a, model)) failure(n, "congruent is not symmetric");
      if (!congruent(a, b, model) || !congruent(b, c, model) || !congruent(a, c, model)) {
        failure(n, "rearrangements of one state are not congruent");
      }
      if (other != n) {
        Configuration d = shuffle(sfi(decode(graph.key(other)), model));
        if (congruent(a, d, model)) failure(n, "distinct states are congruent");
      }
    } catch (const Error& e) {
      failure(n, e.what());
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Properties

namespace {

// Slot q of a vector holds bottom or the proposal of q.
bool pure_vector(const Value& v, const ProblemInstance& inst, bool stamped) {
  if (!v.is_set() || vector_size(v) != inst.n) return false;
  for (int q = 1; q <= inst.n; ++q) {
    Value x = slot_value(v, q);
    if (!x.is_bot() && !(x == inst.proposal(q))) return false;
    if (stamped && slot_round(v, q) >= static_cast<std::uint64_t>(inst.n)) return false;
  }
  return true;
}

bool pure_messages(const Value& msgs, const ProblemInstance& inst) {
  for (const auto& m : msgs.elements()) {
    const Value& payload = m.first();
    if (payload.is_bot()) continue;
    if (!pure_vector(payload, inst, !is_phase1_entry(m))) return false;
  }
  return true;
}

std::string validity_problem(const Representative& r, const ProblemInstance& inst) {
  for (const auto& m : r.out3) {
    if (!inst.proposed(m.v)) return "agent " + std::to_string(m.p) + " decides " + m.v.to_string();
  }
  if (!r.wrap.w.is_bot() && !inst.proposed(r.wrap.w)) {
    return "wrapper holds unproposed " + r.wrap.w.to_string();
  }
  for (const auto& m : r.out1) {
    if (!pure_vector(m.delta, inst, false)) return "impure relay vector " + m.delta.to_string();
  }
  for (const auto& m : r.out2) {
    if (!pure_vector(m.vector, inst, true)) return "impure knowledge vector " + m.vector.to_string();
  }
  for (const auto& s : r.in1) {
    if (!pure_vector(s.know, inst, true) || !pure_messages(s.msgs, inst)) {
      return "impure phase-1 state of agent " + std::to_string(s.p);
    }
  }
  for (const auto& s : r.in2) {
    if (!pure_vector(s.know, inst, true) || !pure_messages(s.msgs, inst)) {
      return "impure phase-2 state of agent " + std::to_string(s.p);
    }
  }
  return {};
}

// The agent a suspicion step suspects, or 0.
int suspect(const RuleLabel& l) {
  switch (l.rule) {
    case Rule::kSusp:
    case Rule::kSR4:
    case Rule::kSR5:
    case Rule::kSR6:
    case Rule::kSR4p:
    case Rule::kSR5p: return l.b;
    default: return 0;
  }
}

// The agent the wrapper skips, or 0.
int skipped(const RuleLabel& l) {
  return l.rule == Rule::kPSusp || l.rule == Rule::kSRW2 ? l.a : 0;
}

bool is_crash(const RuleLabel& l) { return l.rule == Rule::kStop || l.rule == Rule::kSR7; }

// Tau edges on a cycle, found by iterative Kahn elimination.
std::optional<NodeId> tau_cycle_node(const LtsGraph& g) {
  std::vector<std::uint32_t> indeg(g.size(), 0);
  for (const auto& e : g.edges()) {
    if (e.action == LtsGraph::kTau) ++indeg[e.dst];
  }
  std::vector<NodeId> stack;
  for (NodeId n = 0; n < g.size(); ++n) {
    if (indeg[n] == 0) stack.push_back(n);
  }
  std::size_t removed = 0;
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    ++removed;
    for (const auto& e : g.out_edges(n)) {
      if (e.action == LtsGraph::kTau && --indeg[e.dst] == 0) stack.push_back(e.dst);
    }
  }
  if (removed == g.size()) return std::nullopt;
  for (NodeId n = 0; n < g.size(); ++n) {
    if (indeg[n] > 0) return n;
  }
  return std::nullopt;
}

}  // namespace

std::vector<CheckResult> check_properties(const LtsGraph& g, const Model& model) {
  if (g.truncated) throw Error(ErrorCode::kGraphTruncated, "properties need the full graph");
  const auto& inst = model.instance;
  CheckResult validity{"validity"}, agreement{"agreement"}, termination{"termination"},
      observable{"only-observable-is-ok"}, accuracy{"weak-accuracy"}, psusp{"psusp-soundness"},
      crash{"crash-monotone"}, expansion{"expansion"};

  // Only what the edge checks need, so large graphs are decoded once.
  struct Summary {
    std::uint32_t live = 0;  // bit p for agent p
    int budget = 0;
  };
  std::vector<Summary> summary(g.size());
  for (NodeId n = 0; n < g.size(); ++n) {
    Representative r = decode(g.key(n));
    for (int p : r.live) summary[n].live |= 1u << p;
    summary[n].budget = r.budget;
  }

  for (NodeId n = 0; n < g.size(); ++n) {
    const Representative r = decode(g.key(n));
    auto trace = [&] { return trace_to(g, n); };
    ++validity.checked;
    ++agreement.checked;
    if (auto why = validity_problem(r, inst); !why.empty()) validity.fail({why, trace()});
    if (r.wrap.b == 0) {
      agreement.fail({"wrapper rejected " + r.wrap.w.to_string() + " at index " +
                          std::to_string(r.wrap.j),
                      trace()});
    }
    bool tau_out = false;
    for (const auto& e : g.out_edges(n)) {
      const Summary& src = summary[n];
      const Summary& dst = summary[e.dst];
      const Action& a = g.action(e.action);
      auto edge_trace = [&] {
        auto tr = trace_to(g, n);
        tr.push_back({e.label.to_string(), a.to_string(), digest(g.key(e.dst))});
        return tr;
      };
      tau_out |= a.is_tau();
      ++observable.checked;
      if (!a.is_tau() && !(a == Action::send(ChannelId::ok(), Value::bot()))) {
        observable.fail({"observable " + a.to_string(), edge_trace()});
      }
      if (int k = suspect(e.label)) {
        ++accuracy.checked;
        if (k == r.ti) accuracy.fail({"suspects the trusted immortal " + std::to_string(k), edge_trace()});
      }
      if (int k = skipped(e.label)) {
        ++psusp.checked;
        if (r.is_live(k)) psusp.fail({"skips live agent " + std::to_string(k), edge_trace()});
      }
      ++crash.checked;
      bool shrinks = (dst.live & ~src.live) == 0;
      bool ok = shrinks && (is_crash(e.label)
                                ? dst.budget == src.budget - 1 &&
                                      std::popcount(dst.live) + 1 == std::popcount(src.live)
                                : dst.budget == src.budget && dst.live == src.live);
      if (!ok) crash.fail({"live set or budget changed unexpectedly", edge_trace()});
    }
    ++termination.checked;
    if (!tau_out && r.wrap.j != 0) {
      termination.fail({"run ends undecided with wrapper at index " + std::to_string(r.wrap.j),
                        trace()});
    }
  }
  if (auto n = tau_cycle_node(g)) termination.fail({"tau cycle", trace_to(g, *n)});
  for (const auto& [n, msg] : g.errors) expansion.fail({msg, trace_to(g, n)});
  expansion.checked = g.size();

  return {std::move(validity), std::move(agreement), std::move(termination),
          std::move(observable), std::move(accuracy), std::move(psusp),
          std::move(crash), std::move(expansion)};
}

}  // namespace ctsf
