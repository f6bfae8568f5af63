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

#include "ctsf/bisim.hh"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "ctsf/error.hh"

namespace ctsf {

namespace {

using Id = std::uint32_t;

struct Arc {
  Id action;
  Id dst;
};

// The disjoint union of both graphs with actions matched by name.
struct Union {
  std::vector<std::vector<Arc>> out;
  Id left_size = 0;

  void add(const LtsGraph& g, std::map<std::string, Id>& actions) {
    const Id base = static_cast<Id>(out.size());
    out.resize(out.size() + g.size());
    std::vector<Id> local(g.action_count());
    for (std::uint32_t a = 0; a < g.action_count(); ++a) {
      auto name = g.action(a).to_string();
      local[a] = actions.emplace(name, static_cast<Id>(actions.size())).first->second;
    }
    for (const auto& e : g.edges()) out[base + e.src].push_back({local[e.action], base + e.dst});
  }
};

// Strongly connected components of the tau edges, numbered so that every
// tau successor of a component has a smaller number.
std::vector<Id> tau_components(const Union& u, const Id tau, Id& count) {
  const Id n = static_cast<Id>(u.out.size());
  constexpr Id kNone = ~Id{0};
  std::vector<Id> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<Id> stack;
  std::vector<std::pair<Id, std::size_t>> call;  // node, next arc
  Id next_index = 0;
  count = 0;
  for (Id root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    while (!call.empty()) {
      auto& [v, k] = call.back();
      if (k < u.out[v].size()) {
        const Arc& a = u.out[v][k++];
        if (a.action != tau) continue;
        if (index[a.dst] == kNone) {
          index[a.dst] = low[a.dst] = next_index++;
          stack.push_back(a.dst);
          call.push_back({a.dst, 0});
        } else if (comp[a.dst] == kNone) {
          low[v] = std::min(low[v], index[a.dst]);
        }
        continue;
      }
      const Id done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        Id w;
        do {
          w = stack.back();
          stack.pop_back();
          comp[w] = count;
        } while (w != done);
        ++count;
      }
    }
  }
  return comp;
}

void sort_unique(auto& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

BisimResult weak_bisim(const LtsGraph& left, const LtsGraph& right) {
  if (left.truncated || right.truncated) {
    throw Error(ErrorCode::kGraphTruncated, "bisimulation needs fully explored graphs");
  }
  std::map<std::string, Id> actions;
  const Id tau = actions.emplace(Action::tau().to_string(), 0).first->second;
  Union u;
  u.add(left, actions);
  u.left_size = static_cast<Id>(left.size());
  u.add(right, actions);

  Id ncomp = 0;
  const std::vector<Id> comp = tau_components(u, tau, ncomp);
  std::vector<std::vector<Id>> tau_succ(ncomp);
  std::vector<std::vector<Arc>> obs(ncomp);
  for (Id v = 0; v < u.out.size(); ++v) {
    for (const auto& a : u.out[v]) {
      if (a.action == tau) {
        if (comp[a.dst] != comp[v]) tau_succ[comp[v]].push_back(comp[a.dst]);
      } else {
        obs[comp[v]].push_back({a.action, comp[a.dst]});
      }
    }
  }
  for (auto& s : tau_succ) sort_unique(s);

  // Signature refinement; components are numbered successors first.
  std::vector<Id> block(ncomp, 0);
  Id blocks = 1;
  std::vector<std::vector<Id>> reach(ncomp);
  std::vector<std::vector<std::pair<Id, Id>>> weak(ncomp);
  for (;;) {
    for (Id c = 0; c < ncomp; ++c) {
      auto& r = reach[c];
      r.assign(1, block[c]);
      for (Id t : tau_succ[c]) r.insert(r.end(), reach[t].begin(), reach[t].end());
      sort_unique(r);
    }
    for (Id c = 0; c < ncomp; ++c) {
      auto& w = weak[c];
      w.clear();
      for (const auto& a : obs[c]) {
        for (Id b : reach[a.dst]) w.push_back({a.action, b});
      }
      for (Id t : tau_succ[c]) w.insert(w.end(), weak[t].begin(), weak[t].end());
      sort_unique(w);
    }
    std::map<std::tuple<Id, std::vector<Id>, std::vector<std::pair<Id, Id>>>, Id> sigs;
    std::vector<Id> next(ncomp);
    for (Id c = 0; c < ncomp; ++c) {
      auto key = std::make_tuple(block[c], reach[c], weak[c]);
      next[c] = sigs.emplace(std::move(key), static_cast<Id>(sigs.size())).first->second;
    }
    const Id count = static_cast<Id>(sigs.size());
    block = std::move(next);
    if (count == blocks) break;
    blocks = count;
  }

  BisimResult res;
  res.class_count = blocks;
  for (Id v = 0; v < u.out.size(); ++v) {
    (v < u.left_size ? res.left_class : res.right_class).push_back(block[comp[v]]);
  }
  std::set<Id> initial_classes;
  for (NodeId n : left.initials) initial_classes.insert(res.left_class[n]);
  for (NodeId n : right.initials) initial_classes.insert(res.right_class[n]);
  res.bisimilar = initial_classes.size() <= 1;
  if (res.bisimilar) return res;

  // The shallowest state of the first graph that no state of the second
  // can imitate.
  std::set<Id> right_classes(res.right_class.begin(), res.right_class.end());
  std::vector<std::string> names(actions.size());
  for (const auto& [name, id] : actions) names[id] = name;
  for (NodeId n = 0; n < left.size(); ++n) {
    if (right_classes.count(res.left_class[n])) continue;
    res.counterexample = trace_to(left, n);
    std::set<std::string> enabled;
    for (const auto& [action, b] : weak[comp[n]]) enabled.insert(names[action]);
    std::string list;
    for (const auto& x : enabled) list += (list.empty() ? "" : ", ") + x;
    res.reason = "no state of the other graph is weakly bisimilar to this one; it weakly enables {" +
                 list + "}";
    return res;
  }
  res.reason = "initial states fall into different classes";
  return res;
}

Configuration ok_specification(const Model& model) {
  std::vector<Location> live;
  for (int p = 1; p <= model.n(); ++p) live.push_back(p);
  Network net = Network::located(
      kStar, Process::out(ChannelTerm::of(ChannelId::ok()), Expr::lit(Value::bot())));
  return Configuration{Gamma{live, 0}, 1, Network::restrict_all(net, model.restricted)};
}

LtsGraph specification_graph(const Model& model) {
  return explore_configuration(ok_specification(model), model);
}

}  // namespace ctsf
