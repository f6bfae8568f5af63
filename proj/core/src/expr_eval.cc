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

#include "ctsf/expr_eval.hh"

#include "ctsf/error.hh"

namespace ctsf {

const FunctionTable::Function& FunctionTable::lookup(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) throw Error(ErrorCode::kUnboundFunction, name);
  return it->second;
}

namespace {

bool is_true(const Value& v) { return v.as_nat() > 0; }

}  // namespace

FunctionTable FunctionTable::standard() {
  FunctionTable t;
  t.define("plus", [](const Value& a) {
    return Value::nat(a.first().as_nat() + a.second().as_nat());
  });
  t.define("lt", [](const Value& a) {
    return truth(a.first().as_nat() < a.second().as_nat());
  });
  t.define("le", [](const Value& a) {
    return truth(a.first().as_nat() <= a.second().as_nat());
  });
  // Structural equality, defined on every value including bottom.
  t.define("eq", [](const Value& a) { return truth(a.first() == a.second()); });
  t.define("neq", [](const Value& a) { return truth(!(a.first() == a.second())); });
  t.define("and", [](const Value& a) {
    return truth(is_true(a.first()) && is_true(a.second()));
  });
  t.define("or", [](const Value& a) {
    return truth(is_true(a.first()) || is_true(a.second()));
  });
  t.define("not", [](const Value& a) { return truth(!is_true(a)); });
  t.define("insert", [](const Value& a) { return a.first().insert(a.second()); });
  return t;
}

Value eval_expr(const Expr& e, const FunctionTable& functions) {
  if (const auto* x = e.as<Expr::Lit>()) return x->value;
  if (const auto* x = e.as<Expr::Var>()) {
    throw Error(ErrorCode::kTypeMismatch, "free variable " + x->name + " in expression");
  }
  if (const auto* x = e.as<Expr::Pair>()) {
    return Value::pair(eval_expr(x->first, functions), eval_expr(x->second, functions));
  }
  const auto& call = std::get<Expr::Call>(e.node());
  const auto& f = functions.lookup(call.function);
  return f(eval_expr(call.arg, functions));
}

}  // namespace ctsf
