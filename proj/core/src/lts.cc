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

#include "ctsf/lts.hh"

#include <algorithm>
#include <functional>

#include "ctsf/error.hh"
#include "ctsf/evaluation.hh"
#include "ctsf/rep_semantics.hh"
#include "ctsf/standard_form.hh"

namespace ctsf {

std::string Action::to_string() const {
  switch (kind) {
    case ActionKind::kTau: return "tau";
    case ActionKind::kSend: return "'" + channel.to_string() + "<" + value.to_string() + ">";
    case ActionKind::kRecv: return channel.to_string() + "(" + value.to_string() + ")";
  }
  return "?";
}

std::vector<Configuration> select_ti(const Configuration& c) {
  if (c.ti) throw Error(ErrorCode::kTiAlreadySet, "trusted immortal already " + std::to_string(*c.ti));
  std::vector<Configuration> out;
  for (Location l : c.gamma.live) {
    if (l == kStar) continue;
    out.push_back(Configuration{c.gamma, l, c.net});
  }
  return out;
}

namespace {

enum class CapKind { kSend, kRecv, kSusp, kPSusp, kTau };

// What one guard of a component offers.
struct Capability {
  CapKind kind;
  ChannelId channel;
  Value value;
  const Pattern* pattern = nullptr;
  int target = 0;
  Process next;
};

void capabilities(const Process& p, const Program& program, std::vector<Capability>& out) {
  if (const auto* x = p.as<Process::Sum>()) {
    capabilities(x->left, program, out);
    capabilities(x->right, program, out);
  } else if (const auto* x = p.as<Process::Out>()) {
    out.push_back({CapKind::kSend, x->channel.resolve(), eval_expr(x->payload, program.functions),
                   nullptr, 0, x->next});
  } else if (const auto* x = p.as<Process::In>()) {
    out.push_back({CapKind::kRecv, x->channel.resolve(), {}, &x->pattern, 0, x->next});
  } else if (const auto* x = p.as<Process::Susp>()) {
    out.push_back({CapKind::kSusp, {}, {}, nullptr, x->target.value, x->next});
  } else if (const auto* x = p.as<Process::PSusp>()) {
    out.push_back({CapKind::kPSusp, {}, {}, nullptr, x->target.value, x->next});
  } else if (const auto* x = p.as<Process::Tau>()) {
    out.push_back({CapKind::kTau, {}, {}, nullptr, 0, x->next});
  }
}

RuleLabel com_label(const ChannelId& c) {
  auto u = [](int x) { return static_cast<std::uint8_t>(x); };
  switch (c.kind) {
    case ChannelKind::kA: return {Rule::kComA, c.sender, c.receiver, c.round};
    case ChannelKind::kB: return {Rule::kComB, c.sender, c.receiver, 0};
    case ChannelKind::kC: return {Rule::kComC, c.sender, 0, 0};
    case ChannelKind::kOk: break;
  }
  return {Rule::kComC, u(0), 0, 0};
}

// Replacement processes for some components of a flattened network.
using Replaced = std::vector<std::pair<std::size_t, Process>>;
using EmitFn = std::function<void(Action, RuleLabel, Gamma, const Replaced&)>;

// Enumerates the transitions of an evaluated configuration whose
// network flattens to `flat`.
void transitions(const Configuration& c, const FlatNetwork& flat, const Model& model,
                 const EmitFn& emit) {
  auto restricted = [&](const ChannelId& id) {
    return std::binary_search(flat.restricted.begin(), flat.restricted.end(), id);
  };

  std::vector<std::vector<Capability>> caps(flat.components.size());
  for (std::size_t k = 0; k < flat.components.size(); ++k) {
    const auto& comp = flat.components[k];
    if (c.gamma.is_live(comp.location)) capabilities(comp.process, model.program, caps[k]);
  }

  for (std::size_t k = 0; k < caps.size(); ++k) {
    const Location l = flat.components[k].location;
    const auto u8l = static_cast<std::uint8_t>(l);
    for (const auto& cap : caps[k]) {
      switch (cap.kind) {
        case CapKind::kSusp:
          if (cap.target != l &&
              (!c.ti || cap.target != *c.ti || model.mutations.no_ti_protection)) {
            emit(Action::tau(), {Rule::kSusp, u8l, static_cast<std::uint8_t>(cap.target), 0},
                 c.gamma, {{k, cap.next}});
          }
          break;
        case CapKind::kPSusp:
          if (!c.gamma.is_live(cap.target)) {
            emit(Action::tau(), {Rule::kPSusp, static_cast<std::uint8_t>(cap.target), 0, 0},
                 c.gamma, {{k, cap.next}});
          }
          break;
        case CapKind::kTau:
          emit(Action::tau(), {Rule::kTau, u8l, 0, 0}, c.gamma, {{k, cap.next}});
          break;
        case CapKind::kRecv:
          if (!restricted(cap.channel)) {
            throw Error(ErrorCode::kOpenInput, "input on free channel " + cap.channel.to_string());
          }
          break;
        case CapKind::kSend:
          if (!restricted(cap.channel)) {
            emit(Action::send(cap.channel, cap.value), {Rule::kSnd, 0, 0, 0}, c.gamma,
                 {{k, cap.next}});
            break;
          }
          for (std::size_t m = 0; m < caps.size(); ++m) {
            if (m == k) continue;
            for (const auto& in : caps[m]) {
              if (in.kind != CapKind::kRecv || in.channel != cap.channel) continue;
              emit(Action::tau(), com_label(cap.channel), c.gamma,
                   {{k, cap.next}, {m, substitute(in.next, *in.pattern, cap.value)}});
            }
          }
          break;
      }
    }
  }

  if (c.ti && c.gamma.budget > 0) {
    for (Location l : c.gamma.live) {
      if (l == *c.ti) continue;
      Gamma g = c.gamma;
      std::erase(g.live, l);
      --g.budget;
      emit(Action::tau(), {Rule::kStop, static_cast<std::uint8_t>(l), 0, 0}, std::move(g), {});
    }
  }
}

}  // namespace

std::vector<ConfigTransition> config_transitions(const Configuration& input, const Model& model,
                                                 bool evaluate_targets) {
  const Configuration c = evaluate(input, model.program);
  const FlatNetwork flat = flatten(c.net);
  std::vector<ConfigTransition> out;
  transitions(c, flat, model, [&](Action action, RuleLabel label, Gamma gamma,
                                  const Replaced& replaced) {
    FlatNetwork next = flat;
    for (const auto& [k, proc] : replaced) next.components[k].process = proc;
    Configuration t{std::move(gamma), c.ti, build(next)};
    if (evaluate_targets) t = evaluate(t, model.program);
    out.push_back({std::move(action), label, std::move(t)});
  });
  return out;
}

std::vector<Transition> calculus_successors(const Representative& r, const Model& model) {
  // Works on flattened networks: the source is already evaluated, so only
  // replaced components (and a crash) can change under evaluation.
  const Configuration c = sfi(r, model);
  const FlatNetwork flat = flatten(c.net);
  std::vector<Transition> out;
  transitions(c, flat, model, [&](Action action, RuleLabel label, Gamma gamma,
                                  const Replaced& replaced) {
    FlatNetwork next{flat.restricted, {}};
    next.components.reserve(flat.components.size() + 1);
    for (std::size_t k = 0; k < flat.components.size(); ++k) {
      const Component* comp = &flat.components[k];
      Process proc = comp->process;
      bool changed = false;
      for (const auto& [m, p] : replaced) {
        if (m == k) {
          proc = p;
          changed = true;
        }
      }
      if (!gamma.is_live(comp->location)) continue;
      if (!changed) {
        next.components.push_back(*comp);
        continue;
      }
      Configuration one{gamma, c.ti, Network::located(comp->location, std::move(proc))};
      FlatNetwork part = flatten(evaluate(one, model.program).net);
      for (auto& x : part.components) next.components.push_back(std::move(x));
    }
    out.push_back({std::move(action), label, sf(gamma, *c.ti, std::move(next), model)});
  });
  return out;
}

std::vector<Transition> representative_successors(const Representative& r, const Model& model) {
  std::vector<Transition> out;
  for (auto& s : rep_successors(r, model)) {
    out.push_back({Action::tau(), s.label, std::move(s.target)});
  }
  if (r.wrap.j == 0 && r.wrap.b == 1 && !r.wrap.w.is_bot()) {
    Representative t = r;
    t.wrap = Wrap{0, Value::bot(), 1};
    out.push_back({Action::send(ChannelId::ok(), Value::bot()), {Rule::kOK, 0, 0, 0}, std::move(t)});
  }
  return out;
}

std::vector<Representative> initial_representatives(const Model& model) {
  std::vector<Representative> out;
  for (const auto& c : select_ti(make_initial(model.instance))) out.push_back(sf(c, model));
  return out;
}

}  // namespace ctsf
