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

#include "ctsf/consensus.hh"
#include "ctsf/error.hh"
#include "ctsf/evaluation.hh"
#include "ctsf/lts.hh"
#include "ctsf/standard_form.hh"

using namespace ctsf;

namespace {

ChannelTerm ch(const ChannelId& id) { return ChannelTerm::of(id); }

Configuration conf(Network net, std::vector<Location> live = {1, 2}) {
  return Configuration{Gamma{std::move(live), 0}, 1, std::move(net)};
}

Process plus_one_out(Process next) {
  return Process::out(ch(ChannelId::c(1)), Expr::call("plus", Expr::pair(Expr::nat(1), Expr::nat(1))),
                      std::move(next));
}

const Process kQ = Process::tau(Process::nil());
const Process kR = Process::out(ch(ChannelId::c(2)), Expr::nat(0));

}  // namespace

TEST_CASE("eval_steps: the conditional resolves in one step") {
  Program prog;
  Process inner = Process::par(plus_one_out(Process::nil()), kQ);
  Configuration c = conf(Network::located(1, Process::if_then_else(Expr::nat(1), inner, kR)));
  auto steps = eval_steps(c, prog);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == EvalRule::kEIfTrue);
  CHECK(steps[0].result.net == Network::located(1, inner));

  Configuration f = conf(Network::located(1, Process::if_then_else(Expr::nat(0), inner, kR)));
  auto fs = eval_steps(f, prog);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].rule == EvalRule::kEIfFalse);
  CHECK(fs[0].result.net == Network::located(1, kR));
}

TEST_CASE("eval_steps: garbage collection") {
  Program prog;
  SUBCASE("nil at a live location") {
    auto steps = eval_steps(conf(Network::located(1, Process::nil())), prog);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].rule == EvalRule::kE2);
    CHECK(steps[0].result.net.is_nil());
  }
  SUBCASE("anything at a dead location") {
    auto steps = eval_steps(conf(Network::located(3, kQ)), prog);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].rule == EvalRule::kE3);
    CHECK(steps[0].result.net.is_nil());
  }
  SUBCASE("the star never dies") {
    CHECK(eval_steps(conf(Network::located(kStar, kQ), {}), prog).empty());
  }
  SUBCASE("nil beside a network") {
    auto steps = eval_steps(conf(Network::par(Network::nil(), Network::located(1, kQ))), prog);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].rule == EvalRule::kE4);
  }
}

TEST_CASE("eval_steps: every redex is offered, without transitivity") {
  Program prog;
  Network n = Network::par(Network::located(1, Process::par(kQ, kQ)),
                           Network::located(2, plus_one_out(Process::nil())));
  auto steps = eval_steps(conf(n), prog);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].rule == EvalRule::kE1);
  CHECK(steps[1].rule == EvalRule::kEOut);
  CHECK(steps[1].focus == std::vector<std::uint8_t>{1});
}

TEST_CASE("evaluate chains the worked example to its fixed point") {
  Program prog;
  Process p = Process::tau(Process::nil());
  Process inner = Process::par(plus_one_out(p), kQ);
  Configuration c = conf(Network::located(1, Process::if_then_else(Expr::nat(1), inner, kR)));
  Configuration expect = conf(Network::par(
      Network::located(1, Process::out(ch(ChannelId::c(1)), Expr::nat(2), p)), Network::located(1, kQ)));
  CHECK(evaluate(c, prog) == expect);
  CHECK(evaluate_stepwise(c, prog) == expect);
  CHECK(evaluate(expect, prog) == expect);
  CHECK(eval_steps(expect, prog).empty());
}

TEST_CASE("constants unfold with the evaluated argument") {
  Program prog;
  prog.equations.define("K", Pattern::var("x"), Process::out(ch(ChannelId::c(1)), Expr::var("x")));
  Configuration c =
      conf(Network::located(1, Process::call("K", Expr::call("plus", Expr::pair(Expr::nat(2), Expr::nat(3))))));
  auto steps = eval_steps(c, prog);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == EvalRule::kEConst);
  CHECK(steps[0].result.net == Network::located(1, Process::out(ch(ChannelId::c(1)), Expr::nat(5))));

  Configuration undefined = conf(Network::located(1, Process::call("Nope", Expr::nat(0))));
  try {
    eval_steps(undefined, prog);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUndefinedConstant);
  }
}

TEST_CASE("divergent unfolding hits the step budget") {
  Program prog;
  prog.equations.define(
      "Up", Pattern::var("x"),
      Process::call("Up", Expr::call("plus", Expr::pair(Expr::var("x"), Expr::nat(1)))));
  Configuration c = conf(Network::located(1, Process::call("Up", Expr::nat(0))));
  try {
    evaluate(c, prog, 100);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonTermination);
  }
}

TEST_CASE("a constant that only unfolds back to itself is inert") {
  Program prog;
  prog.equations.define("Idle", Pattern::var("x"),
                        Process::if_then_else(Expr::nat(1), Process::call("Idle", Expr::var("x")),
                                              Process::nil()));
  Process idle = Process::call("Idle", Expr::nat(7));
  CHECK(is_inert_call(*idle.as<Process::Call>(), prog));
  Configuration c = conf(Network::located(1, idle));
  CHECK(evaluate(c, prog) == c);
  CHECK(eval_steps(c, prog).empty());

  Model m = make_model(ProblemInstance::make({5, 7}));
  Process rejected = Process::call(
      kWrapper, Expr::lit(Value::pair(Value::nat(1), Value::pair(Value::nat(5), Value::nat(0)))));
  CHECK(is_inert_call(*rejected.as<Process::Call>(), m.program));
}

TEST_CASE("evaluating the n=1 initial configuration") {
  Model m = make_model(ProblemInstance::make({4}));
  Configuration c = select_ti(make_initial(m.instance)).at(0);
  FlatNetwork flat = flatten(evaluate(c, m.program).net);
  REQUIRE(flat.components.size() == 3);
  int outs = 0, guards = 0, wrappers = 0;
  for (const auto& comp : flat.components) {
    if (comp.location == kStar) {
      wrappers += comp.process.as<Process::Sum>() != nullptr;
    } else if (const auto* o = comp.process.as<Process::Out>()) {
      outs += o->channel.resolve() == ChannelId::b(1, 1);
    } else if (const auto* s = comp.process.as<Process::Sum>()) {
      guards += s->left.as<Process::In>()->channel.resolve() == ChannelId::b(1, 1);
    }
  }
  CHECK(outs == 1);
  CHECK(guards == 1);
  CHECK(wrappers == 1);
}

TEST_CASE("canonical_order") {
  Value v = Value::nat(1), w = Value::nat(2);
  Network b21 = Network::located(2, Process::out(ch(ChannelId::b(2, 1)), Expr::lit(v)));
  Network a121 = Network::located(1, Process::out(ch(ChannelId::a(1, 2, 1)), Expr::lit(w)));
  Configuration c = conf(Network::par(b21, a121));
  CHECK(canonical_order(c).net == Network::par(a121, b21));
  CHECK(canonical_order(canonical_order(c)) == canonical_order(c));
  Configuration single = conf(a121);
  CHECK(canonical_order(single) == single);

  SUBCASE("restrictions are hoisted into one sorted group") {
    Configuration r = conf(Network::par(Network::res(b21, ChannelId::b(2, 1)),
                                        Network::res(a121, ChannelId::a(1, 2, 1))));
    CHECK(canonical_order(r).net ==
          Network::restrict_all(Network::par(a121, b21), {ChannelId::a(1, 2, 1), ChannelId::b(2, 1)}));
  }
  SUBCASE("unevaluated components are rejected") {
    Configuration bad = conf(Network::located(1, Process::call("K", Expr::nat(1))));
    try {
      canonical_order(bad);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotFullyEvaluated);
    }
  }
}

TEST_CASE("congruent on reachable configurations") {
  Model m = make_model(ProblemInstance::make({5, 7}));
  Configuration raw = select_ti(make_initial(m.instance)).at(0);
  Configuration nf = sfi(sf(raw, m), m);
  CHECK(congruent(nf, nf, m));
  CHECK(congruent(raw, nf, m));

  SUBCASE("commuting parallel components") {
    FlatNetwork flat = flatten(nf.net);
    std::reverse(flat.components.begin(), flat.components.end());
    Configuration rev{nf.gamma, nf.ti, build(flat)};
    CHECK_FALSE(rev == nf);
    CHECK(congruent(rev, nf, m));
  }
  SUBCASE("one evaluation step") {
    auto steps = eval_steps(raw, m.program);
    REQUIRE_FALSE(steps.empty());
    CHECK(congruent(raw, steps.front().result, m));
  }
  SUBCASE("distinct states") {
    auto ts = config_transitions(nf, m);
    REQUIRE_FALSE(ts.empty());
    CHECK_FALSE(congruent(nf, ts.front().target, m));
  }
}
