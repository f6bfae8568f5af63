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

#ifndef CTSF_EXPR_EVAL_HH_
#define CTSF_EXPR_EVAL_HH_

#include <functional>
#include <string>
#include <unordered_map>

#include "ctsf/syntax.hh"
#include "ctsf/value.hh"

namespace ctsf {

/// Built-in functions by name. Multi-argument functions take a
/// right-nested tuple.
class FunctionTable {
 public:
  using Function = std::function<Value(const Value&)>;

  void define(const std::string& name, Function f) { functions_[name] = std::move(f); }
  bool contains(const std::string& name) const { return functions_.count(name) > 0; }
  /// Throws Error(kUnboundFunction) for unknown names.
  const Function& lookup(const std::string& name) const;

  /// Arithmetic and comparison helpers. Booleans are Nat 1 / Nat 0.
  static FunctionTable standard();

 private:
  std::unordered_map<std::string, Function> functions_;
};

/// Evaluates a closed expression. Throws Error(kTypeMismatch) on a free
/// variable and propagates errors raised by the called functions.
Value eval_expr(const Expr& e, const FunctionTable& functions);

/// Nat 1 / Nat 0.
inline Value truth(bool b) { return Value::nat(b ? 1 : 0); }

}  // namespace ctsf

#endif  // CTSF_EXPR_EVAL_HH_
