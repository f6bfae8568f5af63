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

#include "ctsf/consensus.hh"

#include <algorithm>
#include <limits>
#include <sstream>

#include "ctsf/error.hh"

namespace ctsf {

ProblemInstance ProblemInstance::make(std::vector<std::uint64_t> values,
                                      std::optional<int> budget) {
  if (values.empty()) throw Error(ErrorCode::kConfig, "at least one proposed value is required");
  if (values.size() > 16) throw Error(ErrorCode::kConfig, "at most 16 agents are supported");
  for (auto v : values) {
    if (v == 0) throw Error(ErrorCode::kConfig, "proposed values must be positive");
  }
  ProblemInstance inst;
  inst.n = static_cast<int>(values.size());
  inst.values = std::move(values);
  inst.budget = budget.value_or(inst.n - 1);
  if (inst.budget < 0 || inst.budget > inst.n - 1) {
    throw Error(ErrorCode::kConfig, "budget " + std::to_string(inst.budget) +
                                        " outside 0.." + std::to_string(inst.n - 1) +
                                        ": at least one agent must stay correct");
  }
  return inst;
}

bool ProblemInstance::proposed(const Value& v) const {
  if (!v.is_nat()) return false;
  return std::find(values.begin(), values.end(), v.as_nat()) != values.end();
}

// ---------------------------------------------------------------------------

std::vector<std::string> Mutations::names() {
  return {"no-ti-protection", "skip-correct", "sr1-drops-in1", "disable-sr4"};
}

Mutations Mutations::parse(const std::string& list) {
  Mutations m;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (item.empty()) continue;
    if (item == "no-ti-protection") {
      m.no_ti_protection = true;
    } else if (item == "skip-correct") {
      m.skip_correct = true;
    } else if (item == "sr1-drops-in1") {
      m.sr1_drops_in1 = true;
    } else if (item == "disable-sr4") {
      m.disable_sr4 = true;
    } else {
      throw Error(ErrorCode::kConfig, "unknown mutation '" + item + "'");
    }
  }
  return m;
}

std::string Mutations::to_string() const {
  std::vector<std::string> on;
  if (no_ti_protection) on.push_back("no-ti-protection");
  if (skip_correct) on.push_back("skip-correct");
  if (sr1_drops_in1) on.push_back("sr1-drops-in1");
  if (disable_sr4) on.push_back("disable-sr4");
  std::string s;
  for (const auto& x : on) s += (s.empty() ? "" : ",") + x;
  return s;
}

// ---------------------------------------------------------------------------
// Vectors

Value know_vector(const std::vector<Value>& values, const std::vector<std::uint64_t>& rounds) {
  std::vector<Value> items;
  items.reserve(values.size());
  for (std::size_t q = 0; q < values.size(); ++q) {
    items.push_back(Value::pair(Value::nat(q + 1),
                                Value::pair(values[q], Value::nat(rounds.at(q)))));
  }
  return Value::set(std::move(items));
}

Value relay_vector(const std::vector<Value>& values) {
  std::vector<Value> items;
  items.reserve(values.size());
  for (std::size_t q = 0; q < values.size(); ++q) {
    items.push_back(Value::pair(Value::nat(q + 1), values[q]));
  }
  return Value::set(std::move(items));
}

namespace {

const Value* find_slot(const Value& vector, int q) {
  for (const auto& e : vector.elements()) {
    if (e.first().as_nat() == static_cast<std::uint64_t>(q)) return &e.second();
  }
  return nullptr;
}

// Slot payload, with knowledge entries reduced to their value.
Value slot_of(const Value& vector, int q) {
  const Value* s = find_slot(vector, q);
  if (s == nullptr) return Value::bot();
  return s->is_pair() ? s->first() : *s;
}

std::vector<Value> know_values(const Value& know) {
  std::vector<Value> out;
  for (const auto& e : know.elements()) out.push_back(e.second().first());
  return out;
}

std::vector<std::uint64_t> know_rounds(const Value& know) {
  std::vector<std::uint64_t> out;
  for (const auto& e : know.elements()) out.push_back(e.second().second().as_nat());
  return out;
}

// The value first learned for slot q in round r, from the smallest sender.
Value learned(std::uint64_t r, const Value& msgs, int q) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  Value found;
  for (const auto& m : msgs.elements()) {
    if (!is_phase1_entry(m)) continue;
    const Value& delta = m.first();
    if (delta.is_bot() || m.second().first().as_nat() != r) continue;
    Value v = slot_of(delta, q);
    std::uint64_t sender = m.second().second().as_nat();
    if (!v.is_bot() && sender < best) {
      best = sender;
      found = v;
    }
  }
  return found;
}

}  // namespace

Value slot_value(const Value& vector, int q) { return slot_of(vector, q); }

std::uint64_t slot_round(const Value& know, int q) {
  const Value* s = find_slot(know, q);
  if (s == nullptr || !s->is_pair()) throw Error(ErrorCode::kTypeMismatch, "not a knowledge slot");
  return s->second().as_nat();
}

int vector_size(const Value& vector) { return static_cast<int>(vector.elements().size()); }

Value phase1_entry(const Value& delta, int round, int sender) {
  return Value::pair(delta, Value::pair(Value::nat(round), Value::nat(sender)));
}

Value phase2_entry(const Value& vector, int sender) {
  return Value::pair(vector, Value::nat(sender));
}

bool is_phase1_entry(const Value& entry) { return entry.second().is_pair(); }

Value updatek(std::uint64_t r, const Value& msgs, const Value& know) {
  auto values = know_values(know);
  auto rounds = know_rounds(know);
  for (std::size_t q = 0; q < values.size(); ++q) {
    if (!values[q].is_bot()) continue;
    Value v = learned(r, msgs, static_cast<int>(q + 1));
    if (!v.is_bot()) {
      values[q] = v;
      rounds[q] = r;
    }
  }
  return know_vector(values, rounds);
}

Value updater(std::uint64_t r, const Value& msgs, const Value& know) {
  auto values = know_values(know);
  std::vector<Value> relay(values.size());
  for (std::size_t q = 0; q < values.size(); ++q) {
    if (values[q].is_bot()) relay[q] = learned(r, msgs, static_cast<int>(q + 1));
  }
  return relay_vector(relay);
}

Value correct_fn(const Value& msgs, const Value& know) {
  auto values = know_values(know);
  auto rounds = know_rounds(know);
  for (const auto& m : msgs.elements()) {
    if (is_phase1_entry(m) || m.first().is_bot()) continue;
    for (std::size_t q = 0; q < values.size(); ++q) {
      if (slot_of(m.first(), static_cast<int>(q + 1)).is_bot()) values[q] = Value::bot();
    }
  }
  return know_vector(values, rounds);
}

Value getfst(const Value& know) {
  for (const auto& e : know.elements()) {
    const Value& s = e.second();
    Value v = s.is_pair() ? s.first() : s;
    if (!v.is_bot()) return v;
  }
  throw Error(ErrorCode::kEmptyKnowledge, "no known slot in " + know.to_string());
}

FunctionTable consensus_functions() {
  FunctionTable t = FunctionTable::standard();
  // (r, (M, V))
  t.define("updatek", [](const Value& a) {
    return updatek(a.first().as_nat(), a.second().first(), a.second().second());
  });
  t.define("updater", [](const Value& a) {
    return updater(a.first().as_nat(), a.second().first(), a.second().second());
  });
  // (M, V)
  t.define("correct", [](const Value& a) { return correct_fn(a.first(), a.second()); });
  t.define("getfst", [](const Value& a) { return getfst(a); });
  return t;
}

// ---------------------------------------------------------------------------
// Equations

std::string phase1_name(int p) { return "P1_" + std::to_string(p); }
std::string collect1_name(int p) { return "C1_" + std::to_string(p); }
std::string phase2_name(int p) { return "P2_" + std::to_string(p); }
std::string collect2_name(int p) { return "C2_" + std::to_string(p); }
std::string phase3_name(int p) { return "P3_" + std::to_string(p); }

namespace {

Expr v(const char* name) { return Expr::var(name); }
Expr call(const char* f, std::vector<Expr> args) {
  return Expr::call(f, args.size() == 1 ? args[0] : Expr::tuple(args));
}
IndexTerm ix(int k) { return IndexTerm::constant(k); }
IndexTerm iv(const char* name) { return IndexTerm::variable(name); }

}  // namespace

EquationSet consensus_equations(int n, const Mutations& mutations) {
  EquationSet d;
  const Expr nn = Expr::nat(n);
  for (int p = 1; p <= n; ++p) {
    // P1_p(r, V, D, M)
    std::vector<Process> sends;
    for (int i = 1; i <= n; ++i) {
      sends.push_back(Process::out(ChannelTerm::a(ix(p), ix(i), iv("r")), v("D")));
    }
    sends.push_back(Process::call(collect1_name(p),
                                  Expr::tuple({v("r"), v("V"), v("M"), Expr::nat(1)})));
    d.define(phase1_name(p), Pattern::tuple({"r", "V", "D", "M"}),
             Process::if_then_else(call("lt", {v("r"), nn}), Process::par_all(sends),
                                   Process::call(phase2_name(p), Expr::tuple({v("V"), v("M")}))));

    // C1_p(r, V, M, i)
    Expr entry1 = Expr::tuple({v("d"), v("r"), v("i")});
    Process next1 = Process::call(
        collect1_name(p),
        Expr::tuple({v("r"), v("V"), call("insert", {v("M"), entry1}),
                     call("plus", {v("i"), Expr::nat(1)})}));
    Expr rmv = Expr::tuple({v("r"), v("M"), v("V")});
    Process done1 = Process::call(
        phase1_name(p), Expr::tuple({call("plus", {v("r"), Expr::nat(1)}),
                                     call("updatek", {rmv}), call("updater", {rmv}), v("M")}));
    d.define(collect1_name(p), Pattern::tuple({"r", "V", "M", "i"}),
             Process::if_then_else(
                 call("le", {v("i"), nn}),
                 Process::inpat(ChannelTerm::a(iv("i"), ix(p), iv("r")), "d", iv("i"), next1),
                 done1));

    // P2_p(V, M)
    std::vector<Process> sends2;
    for (int i = 1; i <= n; ++i) {
      sends2.push_back(Process::out(ChannelTerm::b(ix(p), ix(i)), v("V")));
    }
    sends2.push_back(
        Process::call(collect2_name(p), Expr::tuple({v("V"), v("M"), Expr::nat(1)})));
    d.define(phase2_name(p), Pattern::tuple({"V", "M"}), Process::par_all(sends2));

    // C2_p(V, M, i)
    Process next2 = Process::call(
        collect2_name(p),
        Expr::tuple({v("V"), call("insert", {v("M"), Expr::tuple({v("w"), v("i")})}),
                     call("plus", {v("i"), Expr::nat(1)})}));
    Expr decided = mutations.skip_correct ? v("V") : call("correct", {v("M"), v("V")});
    d.define(collect2_name(p), Pattern::tuple({"V", "M", "i"}),
             Process::if_then_else(
                 call("le", {v("i"), nn}),
                 Process::inpat(ChannelTerm::b(iv("i"), ix(p)), "w", iv("i"), next2),
                 Process::call(phase3_name(p), decided)));

    // P3_p(V)
    d.define(phase3_name(p), Pattern::var("V"),
             Process::out(ChannelTerm::c(ix(p)), call("getfst", {v("V")})));
  }

  // WRAP(i, v, b)
  Expr accept = call("or", {call("and", {call("eq", {v("v"), Expr::lit(Value::bot())}),
                                         call("neq", {v("v2"), Expr::lit(Value::bot())})}),
                            call("eq", {v("v"), v("v2")})});
  Process receive = Process::in(
      ChannelTerm::c(iv("i")), Pattern::var("v2"),
      Process::if_then_else(
          accept,
          Process::call(kWrapper, Expr::tuple({call("plus", {v("i"), Expr::nat(1)}), v("v2"),
                                               Expr::nat(1)})),
          Process::call(kWrapper, Expr::tuple({v("i"), v("v"), Expr::nat(0)}))));
  Process skip = Process::psusp(
      iv("i"),
      Process::call(kWrapper,
                    Expr::tuple({call("plus", {v("i"), Expr::nat(1)}), v("v"), Expr::nat(1)})));
  Process ok = Process::out(ChannelTerm::of(ChannelId::ok()), Expr::lit(Value::bot()),
                            Process::call(kWrapper, Expr::tuple({Expr::nat(0), v("v"),
                                                                 Expr::nat(1)})));
  d.define(kWrapper, Pattern::tuple({"i", "v", "b"}),
           Process::if_then_else(
               call("eq", {v("b"), Expr::nat(1)}),
               Process::if_then_else(
                   call("and", {call("le", {Expr::nat(1), v("i")}), call("le", {v("i"), nn})}),
                   Process::sum(skip, receive),
                   Process::if_then_else(call("eq", {v("i"), Expr::nat(n + 1)}), ok,
                                         Process::nil())),
               Process::call(kWrapper, Expr::tuple({v("i"), v("v"), Expr::nat(0)}))));
  return d;
}

std::vector<ChannelId> restriction_set(int n) {
  std::vector<ChannelId> r;
  for (int p = 1; p <= n; ++p) {
    for (int i = 1; i <= n; ++i) {
      for (int round = 1; round < n; ++round) r.push_back(ChannelId::a(p, i, round));
      r.push_back(ChannelId::b(p, i));
    }
    r.push_back(ChannelId::c(p));
  }
  std::sort(r.begin(), r.end());
  return r;
}

bool Model::is_restricted(const ChannelId& c) const {
  return std::binary_search(restricted.begin(), restricted.end(), c);
}

Model make_model(const ProblemInstance& instance, const Mutations& mutations) {
  Model m;
  m.instance = instance;
  m.mutations = mutations;
  m.program.equations = consensus_equations(instance.n, mutations);
  m.program.functions = consensus_functions();
  m.restricted = restriction_set(instance.n);
  return m;
}

Value initial_knowledge(const ProblemInstance& instance, int p) {
  std::vector<Value> values(instance.n);
  values[p - 1] = instance.proposal(p);
  return know_vector(values, std::vector<std::uint64_t>(instance.n, 0));
}

Value initial_relay(const ProblemInstance& instance, int p) {
  std::vector<Value> values(instance.n);
  values[p - 1] = instance.proposal(p);
  return relay_vector(values);
}

Configuration make_initial(const ProblemInstance& instance) {
  std::vector<Network> parts;
  for (int p = 1; p <= instance.n; ++p) {
    Value arg = Value::pair(
        Value::nat(1), Value::pair(initial_knowledge(instance, p),
                                   Value::pair(initial_relay(instance, p), Value::set({}))));
    parts.push_back(Network::located(p, Process::call(phase1_name(p), Expr::lit(arg))));
  }
  Value wrap = Value::pair(Value::nat(1), Value::pair(Value::bot(), Value::nat(1)));
  parts.push_back(Network::located(kStar, Process::call(kWrapper, Expr::lit(wrap))));
  Gamma gamma;
  for (int p = 1; p <= instance.n; ++p) gamma.live.push_back(p);
  gamma.budget = instance.budget;
  return Configuration{gamma, std::nullopt,
                       Network::restrict_all(Network::par_all(parts), restriction_set(instance.n))};
}

}  // namespace ctsf
