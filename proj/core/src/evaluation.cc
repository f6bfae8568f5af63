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

#include "ctsf/evaluation.hh"

#include <algorithm>
#include <array>
#include <mutex>
#include <tuple>

#include "ctsf/error.hh"

namespace ctsf {

struct EquationSet::Cache {
  struct KeyHash {
    std::size_t operator()(const std::pair<std::string, Value>& k) const {
      return std::hash<std::string>()(k.first) * 31 + k.second.hash();
    }
  };
  // Dropped wholesale once full; unfoldings are cheap to redo.
  static constexpr std::size_t kCapacity = 1 << 17;
  std::mutex mu;
  std::unordered_map<std::pair<std::string, Value>, Process, KeyHash> map;
};

void EquationSet::define(const std::string& name, Pattern param, Process body) {
  equations_[name] = Equation{std::move(param), std::move(body)};
  cache_ = std::make_shared<Cache>();
}

const Equation& EquationSet::lookup(const std::string& name) const {
  auto it = equations_.find(name);
  if (it == equations_.end()) throw Error(ErrorCode::kUndefinedConstant, name);
  return it->second;
}

Process EquationSet::unfold(const std::string& name, const Value& v) const {
  const auto& eq = lookup(name);
  auto key = std::make_pair(name, v);
  {
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->map.find(key); it != cache_->map.end()) return it->second;
  }
  Process p = substitute(eq.body, eq.param, v);
  std::lock_guard lock(cache_->mu);
  if (cache_->map.size() >= Cache::kCapacity) cache_->map.clear();
  cache_->map.emplace(std::move(key), p);
  return p;
}

std::string_view to_string(EvalRule rule) {
  switch (rule) {
    case EvalRule::kE1: return "E1";
    case EvalRule::kE2: return "E2";
    case EvalRule::kE3: return "E3";
    case EvalRule::kE4: return "E4";
    case EvalRule::kE5: return "E5";
    case EvalRule::kEOut: return "EOut";
    case EvalRule::kEConst: return "EConst";
    case EvalRule::kEIfTrue: return "EIfTrue";
    case EvalRule::kEIfFalse: return "EIfFalse";
  }
  return "?";
}

namespace {

bool condition_holds(const Expr& cond, const Program& program) {
  Value v = eval_expr(cond, program.functions);
  if (!v.is_nat()) {
    throw Error(ErrorCode::kTypeMismatch, "condition is not a number: " + v.to_string());
  }
  return v.as_nat() > 0;
}

// The inertness probe follows at most this many unfoldings.
constexpr int kInertProbeLimit = 64;

}  // namespace

bool is_inert_call(const Process::Call& call, const Program& program) {
  const Value start = eval_expr(call.arg, program.functions);
  Process cur = program.equations.unfold(call.name, start);
  for (int i = 0; i < kInertProbeLimit; ++i) {
    if (const auto* x = cur.as<Process::If>()) {
      cur = condition_holds(x->cond, program) ? x->then_branch : x->else_branch;
    } else if (const auto* x = cur.as<Process::Call>()) {
      Value v = eval_expr(x->arg, program.functions);
      if (x->name == call.name && v == start) return true;
      cur = program.equations.unfold(x->name, v);
    } else {
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Single steps

namespace {

using Path = std::vector<std::uint8_t>;

struct Redex {
  EvalRule rule;
  Path focus;
  Network replacement;
};

void collect_located(const Network& n, const Network::Located& loc, const Gamma& gamma,
                     const Program& program, Path& path, std::vector<Redex>& out) {
  if (!gamma.is_live(loc.location)) {
    out.push_back({EvalRule::kE3, path, Network::nil()});
    return;
  }
  const Process& p = loc.process;
  if (p.is_nil()) {
    out.push_back({EvalRule::kE2, path, Network::nil()});
  } else if (const auto* x = p.as<Process::Par>()) {
    out.push_back({EvalRule::kE1, path,
                   Network::par(Network::located(loc.location, x->left),
                                Network::located(loc.location, x->right))});
  } else if (const auto* x = p.as<Process::Out>()) {
    if (!x->payload.as<Expr::Lit>()) {
      auto v = eval_expr(x->payload, program.functions);
      out.push_back({EvalRule::kEOut, path,
                     Network::located(loc.location,
                                      Process::out(x->channel, Expr::lit(v), x->next))});
    }
  } else if (const auto* x = p.as<Process::Call>()) {
    if (!is_inert_call(*x, program)) {
      auto v = eval_expr(x->arg, program.functions);
      out.push_back({EvalRule::kEConst, path,
                     Network::located(loc.location, program.equations.unfold(x->name, v))});
    }
  } else if (const auto* x = p.as<Process::If>()) {
    bool holds = condition_holds(x->cond, program);
    out.push_back({holds ? EvalRule::kEIfTrue : EvalRule::kEIfFalse, path,
                   Network::located(loc.location, holds ? x->then_branch : x->else_branch)});
  }
  (void)n;
}

void collect(const Network& n, const Gamma& gamma, const Program& program, Path& path,
             std::vector<Redex>& out) {
  if (const auto* loc = n.as<Network::Located>()) {
    collect_located(n, *loc, gamma, program, path, out);
  } else if (const auto* par = n.as<Network::Par>()) {
    if (par->left.is_nil()) out.push_back({EvalRule::kE4, path, par->right});
    if (par->right.is_nil()) out.push_back({EvalRule::kE5, path, par->left});
    path.push_back(0);
    collect(par->left, gamma, program, path, out);
    path.back() = 1;
    collect(par->right, gamma, program, path, out);
    path.pop_back();
  } else if (const auto* res = n.as<Network::Res>()) {
    path.push_back(0);
    collect(res->body, gamma, program, path, out);
    path.pop_back();
  }
}

Network replace_at(const Network& n, const Path& path, std::size_t depth,
                   const Network& replacement) {
  if (depth == path.size()) return replacement;
  if (const auto* par = n.as<Network::Par>()) {
    if (path[depth] == 0) {
      return Network::par(replace_at(par->left, path, depth + 1, replacement), par->right);
    }
    return Network::par(par->left, replace_at(par->right, path, depth + 1, replacement));
  }
  const auto& res = std::get<Network::Res>(n.node());
  return Network::res(replace_at(res.body, path, depth + 1, replacement), res.channel);
}

}  // namespace

std::vector<EvalStep> eval_steps(const Configuration& c, const Program& program) {
  std::vector<Redex> redexes;
  Path path;
  collect(c.net, c.gamma, program, path, redexes);
  std::vector<EvalStep> steps;
  steps.reserve(redexes.size());
  for (auto& r : redexes) {
    Configuration next{c.gamma, c.ti, replace_at(c.net, r.focus, 0, r.replacement)};
    steps.push_back({r.rule, std::move(r.focus), std::move(next)});
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Maximal evaluation

namespace {

class Evaluator {
 public:
  Evaluator(const Gamma& gamma, const Program& program, std::size_t budget)
      : gamma_(gamma), program_(program), budget_(budget) {}

  Network net(const Network& n) {
    if (n.is_nil()) return n;
    if (const auto* loc = n.as<Network::Located>()) {
      if (!gamma_.is_live(loc->location)) return Network::nil();
      Network r = located(loc->location, loc->process);
      if (const auto* rl = r.as<Network::Located>(); rl && rl->process.same(loc->process)) {
        return n;
      }
      return r;
    }
    if (const auto* par = n.as<Network::Par>()) {
      Network l = net(par->left);
      Network r = net(par->right);
      if (l.is_nil()) return r;
      if (r.is_nil()) return l;
      if (l.same(par->left) && r.same(par->right)) return n;
      return Network::par(std::move(l), std::move(r));
    }
    const auto& res = std::get<Network::Res>(n.node());
    Network body = net(res.body);
    if (body.same(res.body)) return n;
    return Network::res(std::move(body), res.channel);
  }

 private:
  Network located(Location l, Process p) {
    // Constant calls met since the last non-control node, for detecting
    // inert calls (see is_inert_call).
    std::vector<std::pair<std::pair<std::string, Value>, Process>> chain;
    for (;;) {
      if (p.is_nil()) return Network::nil();
      if (const auto* x = p.as<Process::Par>()) {
        Network left = located(l, x->left);
        Network right = located(l, x->right);
        if (left.is_nil()) return right;
        if (right.is_nil()) return left;
        return Network::par(std::move(left), std::move(right));
      }
      if (const auto* x = p.as<Process::If>()) {
        p = condition_holds(x->cond, program_) ? x->then_branch : x->else_branch;
        continue;
      }
      if (const auto* x = p.as<Process::Call>()) {
        Value v = eval_expr(x->arg, program_.functions);
        for (const auto& [key, term] : chain) {
          if (key.first == x->name && key.second == v) return Network::located(l, term);
        }
        chain.push_back({{x->name, v}, p});
        if (budget_ == 0) {
          throw Error(ErrorCode::kNonTermination, "evaluation budget exhausted at " + x->name);
        }
        --budget_;
        p = program_.equations.unfold(x->name, v);
        continue;
      }
      if (const auto* x = p.as<Process::Out>(); x && !x->payload.as<Expr::Lit>()) {
        auto v = eval_expr(x->payload, program_.functions);
        return Network::located(l, Process::out(x->channel, Expr::lit(std::move(v)), x->next));
      }
      return Network::located(l, p);
    }
  }

  const Gamma& gamma_;
  const Program& program_;
  std::size_t budget_;
};

}  // namespace

Configuration evaluate(const Configuration& c, const Program& program, std::size_t budget) {
  Evaluator ev(c.gamma, program, budget);
  return Configuration{c.gamma, c.ti, ev.net(c.net)};
}

Configuration evaluate_stepwise(const Configuration& c, const Program& program,
                                std::size_t budget) {
  Configuration cur = c;
  for (std::size_t i = 0;; ++i) {
    auto steps = eval_steps(cur, program);
    if (steps.empty()) return cur;
    if (i >= budget) throw Error(ErrorCode::kNonTermination, "step budget exhausted");
    cur = std::move(steps.front().result);
  }
}

// ---------------------------------------------------------------------------
// Flattening and canonical order

namespace {

void flatten_into(const Network& n, FlatNetwork& out) {
  if (const auto* loc = n.as<Network::Located>()) {
    out.components.push_back({loc->location, loc->process});
  } else if (const auto* par = n.as<Network::Par>()) {
    flatten_into(par->left, out);
    flatten_into(par->right, out);
  } else if (const auto* res = n.as<Network::Res>()) {
    out.restricted.push_back(res->channel);
    flatten_into(res->body, out);
  }
}

using SortKey = std::tuple<int, int, int, int>;

SortKey segment_key(const Component& c) {
  const Process& p = c.process;
  if (c.location != kStar) {
    if (const auto* x = p.as<Process::Out>()) {
      if (x->channel.closed()) {
        auto id = x->channel.resolve();
        switch (id.kind) {
          case ChannelKind::kA: return {0, id.sender, id.receiver, id.round};
          case ChannelKind::kB: return {1, id.sender, id.receiver, 0};
          case ChannelKind::kC: return {2, id.sender, 0, 0};
          case ChannelKind::kOk: break;
        }
      }
    } else if (const auto* x = p.as<Process::Sum>()) {
      if (const auto* in = x->left.as<Process::In>(); in && in->channel.closed()) {
        auto id = in->channel.resolve();
        if (id.kind == ChannelKind::kA) return {3, c.location, id.round, 0};
        if (id.kind == ChannelKind::kB) return {4, c.location, 0, 0};
      }
    }
  } else if (p.as<Process::Sum>() || p.as<Process::Out>() || p.as<Process::Call>()) {
    return {5, 0, 0, 0};
  }
  throw Error(ErrorCode::kNotFullyEvaluated,
              "component has no normal-form shape: " +
                  Network::located(c.location, p).to_string());
}

}  // namespace

FlatNetwork flatten(const Network& n) {
  FlatNetwork out;
  flatten_into(n, out);
  std::sort(out.restricted.begin(), out.restricted.end());
  out.restricted.erase(std::unique(out.restricted.begin(), out.restricted.end()),
                       out.restricted.end());
  return out;
}

Network build(const FlatNetwork& flat) {
  std::vector<Network> items;
  items.reserve(flat.components.size());
  for (const auto& c : flat.components) items.push_back(Network::located(c.location, c.process));
  return Network::restrict_all(Network::par_all(items), flat.restricted);
}

void canonical_sort(std::vector<Component>& components) {
  std::vector<std::pair<SortKey, Component>> keyed;
  keyed.reserve(components.size());
  for (auto& comp : components) keyed.emplace_back(segment_key(comp), std::move(comp));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second.process < b.second.process;
  });
  components.clear();
  for (auto& [key, comp] : keyed) components.push_back(std::move(comp));
}

Configuration canonical_order(const Configuration& c) {
  FlatNetwork flat = flatten(c.net);
  canonical_sort(flat.components);
  return Configuration{c.gamma, c.ti, build(flat)};
}

}  // namespace ctsf
