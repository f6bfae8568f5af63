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

#include "ctsf/standard_form.hh"

#include <algorithm>

#include "ctsf/error.hh"
#include "ctsf/evaluation.hh"

namespace ctsf {

namespace {

[[noreturn]] void bad_shape(const Component& c, const std::string& why) {
  throw Error(ErrorCode::kNotReachableShape,
              why + ": " + Network::located(c.location, c.process).to_string());
}

// k-th element of a right-nested tuple expression.
const Expr& nth(const Expr& e, int k) {
  const Expr* cur = &e;
  for (; k > 0; --k) {
    const auto* p = cur->as<Expr::Pair>();
    if (p == nullptr) throw Error(ErrorCode::kNotReachableShape, "short tuple " + e.to_string());
    cur = &p->second;
  }
  if (const auto* p = cur->as<Expr::Pair>()) return p->first;
  return *cur;
}

const Expr& insert_base(const Expr& e) {
  const auto* call = e.as<Expr::Call>();
  if (call == nullptr || call->function != "insert") {
    throw Error(ErrorCode::kNotReachableShape, "expected insert(...) in " + e.to_string());
  }
  return nth(call->arg, 0);
}

int as_int(const Value& v) { return static_cast<int>(v.as_nat()); }

void flatten_into_components(const Network& n, std::vector<Component>& out) {
  if (const auto* loc = n.as<Network::Located>()) {
    out.push_back({loc->location, loc->process});
  } else if (const auto* par = n.as<Network::Par>()) {
    flatten_into_components(par->left, out);
    flatten_into_components(par->right, out);
  }
}

class Extractor {
 public:
  Extractor(const Gamma& gamma, Location ti, const Model& model) : model_(model) {
    rep_.live = gamma.live;
    rep_.budget = gamma.budget;
    rep_.ti = ti;
  }

  void add(const Component& c) {
    try {
      classify(c);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNotReachableShape) throw;
      bad_shape(c, std::string("unreadable component (") + e.what() + ")");
    }
  }

  Representative finish() {
    if (!have_wrap_) rep_.wrap = Wrap{0, Value::bot(), 1};
    rep_.normalize();
    return std::move(rep_);
  }

 private:
  Value eval(const Expr& e) const { return eval_expr(e, model_.program.functions); }

  void set_wrap(const Component& c, Wrap w) {
    if (have_wrap_) bad_shape(c, "second wrapper");
    have_wrap_ = true;
    rep_.wrap = std::move(w);
  }

  void classify(const Component& c) {
    const Process& p = c.process;
    if (c.location != kStar) {
      if (const auto* x = p.as<Process::Out>()) return output(c, *x);
      if (const auto* x = p.as<Process::Sum>()) return collector(c, *x);
      bad_shape(c, "unexpected agent component");
    }
    if (const auto* x = p.as<Process::Sum>()) {
      const auto* skip = x->left.as<Process::PSusp>();
      const auto* next = skip ? skip->next.as<Process::Call>() : nullptr;
      if (next == nullptr || skip->target.is_var()) bad_shape(c, "unexpected wrapper sum");
      Value arg = eval(next->arg);
      return set_wrap(c, Wrap{skip->target.value, arg.second().first(), 1});
    }
    if (const auto* x = p.as<Process::Out>()) {
      const auto* next = x->next.as<Process::Call>();
      if (!x->channel.closed() || x->channel.resolve() != ChannelId::ok() || next == nullptr) {
        bad_shape(c, "unexpected wrapper output");
      }
      Value arg = eval(next->arg);
      return set_wrap(c, Wrap{0, arg.second().first(), 1});
    }
    if (const auto* x = p.as<Process::Call>(); x && x->name == kWrapper) {
      Value arg = eval(x->arg);
      return set_wrap(c, Wrap{as_int(arg.first()), arg.second().first(),
                              as_int(arg.second().second())});
    }
    bad_shape(c, "unexpected wrapper component");
  }

  void output(const Component& c, const Process::Out& x) {
    const auto* lit = x.payload.as<Expr::Lit>();
    if (!x.channel.closed() || lit == nullptr || !x.next.is_nil()) bad_shape(c, "open output");
    ChannelId id = x.channel.resolve();
    if (id.sender != c.location) bad_shape(c, "output away from its sender");
    switch (id.kind) {
      case ChannelKind::kA:
        rep_.out1.push_back(Out1{id.sender, id.receiver, id.round, lit->value});
        return;
      case ChannelKind::kB:
        rep_.out2.push_back(Out2{id.sender, id.receiver, lit->value});
        return;
      case ChannelKind::kC:
        rep_.out3.push_back(Out3{id.sender, lit->value});
        return;
      case ChannelKind::kOk: break;
    }
    bad_shape(c, "ok output at an agent");
  }

  void collector(const Component& c, const Process::Sum& x) {
    const auto* in = x.left.as<Process::In>();
    if (in == nullptr || !in->channel.closed()) bad_shape(c, "unexpected sum");
    const auto* next = in->next.as<Process::Call>();
    if (next == nullptr) bad_shape(c, "collector without continuation");
    ChannelId id = in->channel.resolve();
    if (id.receiver != c.location) bad_shape(c, "collector away from its receiver");
    if (id.kind == ChannelKind::kA && next->name == collect1_name(c.location)) {
      rep_.in1.push_back(In1{c.location, id.round, eval(nth(next->arg, 1)),
                             eval(insert_base(nth(next->arg, 2))), id.sender});
      return;
    }
    if (id.kind == ChannelKind::kB && next->name == collect2_name(c.location)) {
      rep_.in2.push_back(In2{c.location, eval(nth(next->arg, 0)),
                             eval(insert_base(nth(next->arg, 1))), id.sender});
      return;
    }
    bad_shape(c, "unexpected collector");
  }

  const Model& model_;
  Representative rep_;
  bool have_wrap_ = false;
};

// Evaluated components of the normal form of `r`, canonically sorted.
std::vector<Component> expand(const Representative& r, const Model& model) {
  validate(r, model.n());
  const int n = model.n();
  const Gamma gamma{r.live, r.budget};
  std::vector<Component> out;
  auto add = [&](Location l, Process p) {
    Configuration c{gamma, r.ti, Network::located(l, std::move(p))};
    flatten_into_components(evaluate(c, model.program).net, out);
  };
  for (const auto& m : r.out1) {
    add(m.p, Process::out(ChannelTerm::of(ChannelId::a(m.p, m.i, m.r)), Expr::lit(m.delta)));
  }
  for (const auto& m : r.out2) {
    add(m.p, Process::out(ChannelTerm::of(ChannelId::b(m.p, m.i)), Expr::lit(m.vector)));
  }
  for (const auto& m : r.out3) {
    add(m.p, Process::out(ChannelTerm::of(ChannelId::c(m.p)), Expr::lit(m.v)));
  }
  for (const auto& s : r.in1) {
    Value arg = Value::pair(
        Value::nat(s.r),
        Value::pair(s.know, Value::pair(s.msgs, Value::nat(s.next))));
    add(s.p, Process::call(collect1_name(s.p), Expr::lit(arg)));
  }
  for (const auto& s : r.in2) {
    Value arg = Value::pair(s.know, Value::pair(s.msgs, Value::nat(s.next)));
    add(s.p, Process::call(collect2_name(s.p), Expr::lit(arg)));
  }
  const Wrap& w = r.wrap;
  if (w.b == 0) {
    // Written exactly as the wrapper's own rejecting branch leaves it.
    add(kStar, Process::call(kWrapper, Expr::tuple({Expr::nat(w.j), Expr::lit(w.w),
                                                    Expr::nat(0)})));
  } else if (w.j > 0 || !w.w.is_bot()) {
    int index = w.j == 0 ? n + 1 : w.j;
    Value arg = Value::pair(Value::nat(index), Value::pair(w.w, Value::nat(1)));
    add(kStar, Process::call(kWrapper, Expr::lit(arg)));
  }
  canonical_sort(out);
  return out;
}

}  // namespace

Representative sf(const Gamma& gamma, Location ti, FlatNetwork flat, const Model& model) {
  Extractor ex(gamma, ti, model);
  for (const auto& comp : flat.components) ex.add(comp);
  Representative rep = ex.finish();

  try {
    validate(rep, model.n());
  } catch (const Error& e) {
    throw Error(ErrorCode::kNotReachableShape, e.what());
  }
  // The expansion must give back exactly the evaluated input.
  canonical_sort(flat.components);
  if (flat.restricted != model.restricted || flat.components != expand(rep, model)) {
    throw Error(ErrorCode::kNotReachableShape,
                "components do not match their normal form: " +
                    Configuration{gamma, ti, build(flat)}.to_string());
  }
  return rep;
}

Representative sf(const Configuration& c, const Model& model) {
  if (!c.ti) throw Error(ErrorCode::kNotReachableShape, "trusted immortal not set");
  Configuration evaluated = evaluate(c, model.program);
  return sf(evaluated.gamma, *c.ti, flatten(evaluated.net), model);
}

Configuration sfi(const Representative& r, const Model& model) {
  FlatNetwork flat{model.restricted, expand(r, model)};
  return Configuration{Gamma{r.live, r.budget}, r.ti, build(flat)};
}

bool congruent(const Configuration& a, const Configuration& b, const Model& model) {
  return sf(a, model) == sf(b, model);
}

}  // namespace ctsf
