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

#include <doctest.h>

#include <algorithm>

#include "ctsf/consensus.hh"
#include "ctsf/error.hh"
#include "ctsf/evaluation.hh"

using namespace ctsf;

namespace {

const Value bot = Value::bot();
Value nat(std::uint64_t v) { return Value::nat(v); }

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kConfig;
}

}  // namespace

TEST_CASE("problem instances") {
  ProblemInstance i = ProblemInstance::make({5, 7});
  CHECK(i.n == 2);
  CHECK(i.budget == 1);
  CHECK(i.proposal(2) == nat(7));
  CHECK(i.proposed(nat(5)));
  CHECK_FALSE(i.proposed(nat(6)));
  CHECK(ProblemInstance::make({5, 7}, 0).budget == 0);
  CHECK(code_of([] { ProblemInstance::make({5, 7}, 2); }) == ErrorCode::kConfig);
  CHECK(code_of([] { ProblemInstance::make({5, 7}, -1); }) == ErrorCode::kConfig);
  CHECK(code_of([] { ProblemInstance::make({}); }) == ErrorCode::kConfig);
  CHECK(code_of([] { ProblemInstance::make({0}); }) == ErrorCode::kConfig);
}

TEST_CASE("mutation lists") {
  CHECK_FALSE(Mutations::parse("").any());
  Mutations m = Mutations::parse("skip-correct,disable-sr4");
  CHECK(m.skip_correct);
  CHECK(m.disable_sr4);
  CHECK_FALSE(m.no_ti_protection);
  CHECK(Mutations::parse(m.to_string()).to_string() == m.to_string());
  CHECK(Mutations::names().size() == 4);
  CHECK(code_of([] { Mutations::parse("nope"); }) == ErrorCode::kConfig);
}

TEST_CASE("vector helpers") {
  Value k = know_vector({nat(5), bot}, {0, 1});
  CHECK(vector_size(k) == 2);
  CHECK(slot_value(k, 1) == nat(5));
  CHECK(slot_value(k, 2).is_bot());
  CHECK(slot_round(k, 2) == 1);
  Value r = relay_vector({bot, nat(7)});
  CHECK(slot_value(r, 2) == nat(7));
  CHECK(is_phase1_entry(phase1_entry(r, 1, 2)));
  CHECK_FALSE(is_phase1_entry(phase2_entry(k, 2)));
  CHECK_FALSE(is_phase1_entry(phase2_entry(bot, 2)));
}

TEST_CASE("updatek and updater") {
  Value v = know_vector({nat(5), bot}, {0, 0});
  Value empty = Value::set({});
  SUBCASE("no messages") {
    CHECK(updatek(1, empty, v) == v);
    CHECK(updater(1, empty, v) == relay_vector({bot, bot}));
  }
  SUBCASE("a fresh value is learned and relayed") {
    Value m = Value::set({phase1_entry(relay_vector({bot, nat(7)}), 1, 2)});
    CHECK(updatek(1, m, v) == know_vector({nat(5), nat(7)}, {0, 1}));
    CHECK(updater(1, m, v) == relay_vector({bot, nat(7)}));
  }
  SUBCASE("known slots are never overwritten nor relayed") {
    Value m = Value::set({phase1_entry(relay_vector({nat(5), bot}), 1, 2)});
    CHECK(updatek(1, m, v) == v);
    CHECK(updater(1, m, v) == relay_vector({bot, bot}));
  }
  SUBCASE("only entries of round r count") {
    Value m = Value::set({phase1_entry(relay_vector({bot, nat(7)}), 2, 2)});
    CHECK(updatek(1, m, v) == v);
  }
  SUBCASE("suspicion entries are skipped") {
    Value m = Value::set({phase1_entry(bot, 1, 2)});
    CHECK(updatek(1, m, v) == v);
    CHECK(updater(1, m, v) == relay_vector({bot, bot}));
  }
  SUBCASE("the two agree slot by slot") {
    Value m = Value::set({phase1_entry(relay_vector({bot, nat(7)}), 1, 1),
                          phase1_entry(relay_vector({nat(5), nat(7)}), 1, 2)});
    Value k = updatek(1, m, v), r = updater(1, m, v);
    for (int q = 1; q <= 2; ++q) {
      bool changed = !(slot_value(k, q) == slot_value(v, q));
      CHECK(changed == !slot_value(r, q).is_bot());
      if (changed) CHECK(slot_value(k, q) == slot_value(r, q));
    }
  }
}

TEST_CASE("correct_fn") {
  Value v = know_vector({nat(5), nat(7)}, {0, 1});
  CHECK(correct_fn(Value::set({phase2_entry(v, 1), phase2_entry(v, 2)}), v) == v);
  Value partial = know_vector({nat(5), bot}, {0, 0});
  Value m = Value::set({phase2_entry(v, 1), phase2_entry(partial, 2)});
  Value out = correct_fn(m, v);
  CHECK(out == know_vector({nat(5), bot}, {0, 1}));
  CHECK(correct_fn(Value::set({phase2_entry(bot, 2)}), v) == v);
}

TEST_CASE("getfst") {
  CHECK(getfst(know_vector({nat(5), nat(7)}, {0, 1})) == nat(5));
  CHECK(getfst(know_vector({bot, nat(7)}, {0, 1})) == nat(7));
  CHECK(code_of([] { getfst(know_vector({bot, bot}, {0, 0})); }) == ErrorCode::kEmptyKnowledge);
}

TEST_CASE("restriction set") {
  auto r = restriction_set(2);
  // a: 2*2*1, b: 2*2, c: 2
  CHECK(r.size() == 10);
  CHECK(std::is_sorted(r.begin(), r.end()));
  CHECK(std::find(r.begin(), r.end(), ChannelId::ok()) == r.end());
  CHECK(std::find(r.begin(), r.end(), ChannelId::a(2, 1, 1)) != r.end());
  CHECK(restriction_set(1).size() == 2);
}

TEST_CASE("equation bodies") {
  EquationSet d = consensus_equations(2);
  CHECK(d.size() == 11);
  CHECK(d.contains(phase1_name(1)));
  CHECK(d.contains(collect2_name(2)));

  SUBCASE("phase 1 broadcasts then collects while r < n") {
    const auto* body = d.lookup(phase1_name(1)).body.as<Process::If>();
    REQUIRE(body);
    const auto* fin = body->else_branch.as<Process::Call>();
    REQUIRE(fin);
    CHECK(fin->name == phase2_name(1));
    int sends = 0, collects = 0;
    std::vector<Process> todo{body->then_branch};
    while (!todo.empty()) {
      Process p = todo.back();
      todo.pop_back();
      if (const auto* par = p.as<Process::Par>()) {
        todo.push_back(par->left);
        todo.push_back(par->right);
      } else if (p.as<Process::Out>()) {
        ++sends;
      } else if (const auto* c = p.as<Process::Call>()) {
        collects += c->name == collect1_name(1);
      }
    }
    CHECK(sends == 2);
    CHECK(collects == 1);
  }
  SUBCASE("phase 2 collection ends in phase 3 on the corrected vector") {
    const auto* body = d.lookup(collect2_name(1)).body.as<Process::If>();
    REQUIRE(body);
    const auto* fin = body->else_branch.as<Process::Call>();
    REQUIRE(fin);
    CHECK(fin->name == phase3_name(1));
    CHECK(fin->arg.as<Expr::Call>()->function == "correct");
    const auto* skipped =
        consensus_equations(2, Mutations::parse("skip-correct")).lookup(collect2_name(1)).body.as<Process::If>();
    CHECK(skipped->else_branch.as<Process::Call>()->arg.as<Expr::Var>() != nullptr);
  }
  SUBCASE("the wrapper emits ok once every agent is accounted for") {
    Program prog{d, consensus_functions()};
    Value arg = Value::pair(nat(3), Value::pair(nat(5), nat(1)));
    Process p = d.unfold(kWrapper, arg);
    Configuration c{Gamma{{1, 2}, 0}, 1, Network::located(kStar, p)};
    Network net = evaluate(c, prog).net;
    const auto* loc = net.as<Network::Located>();
    REQUIRE(loc);
    const auto* out = loc->process.as<Process::Out>();
    REQUIRE(out);
    CHECK(out->channel.resolve() == ChannelId::ok());
  }
}

TEST_CASE("make_initial") {
  ProblemInstance one = ProblemInstance::make({4});
  Configuration c = make_initial(one);
  CHECK_FALSE(c.ti.has_value());
  CHECK(c.gamma.budget == 0);
  CHECK(c.gamma.live == std::vector<Location>{1});
  Value p1 = Value::pair(nat(1), Value::pair(know_vector({nat(4)}, {0}),
                                             Value::pair(relay_vector({nat(4)}), Value::set({}))));
  Value wrap = Value::pair(nat(1), Value::pair(bot, nat(1)));
  Network expect = Network::restrict_all(
      Network::par(Network::located(1, Process::call(phase1_name(1), Expr::lit(p1))),
                   Network::located(kStar, Process::call(kWrapper, Expr::lit(wrap)))),
      restriction_set(1));
  CHECK(c.net == expect);

  Configuration two = make_initial(ProblemInstance::make({5, 7}));
  CHECK(two.gamma.live == std::vector<Location>{1, 2});
  CHECK(two.gamma.budget == 1);
  CHECK_FALSE(two.ti.has_value());
  CHECK(initial_knowledge(ProblemInstance::make({5, 7}), 2) == know_vector({bot, nat(7)}, {0, 0}));
}

TEST_CASE("built-in helpers are reachable from expressions") {
  FunctionTable f = consensus_functions();
  Value k = know_vector({bot, nat(7)}, {0, 1});
  CHECK(eval_expr(Expr::call("getfst", Expr::lit(k)), f) == nat(7));
}
