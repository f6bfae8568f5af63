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

#ifndef CTSF_EVALUATION_HH_
#define CTSF_EVALUATION_HH_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctsf/expr_eval.hh"
#include "ctsf/syntax.hh"

namespace ctsf {

struct Equation {
  Pattern param;
  Process body;
};

/// The set D of process equations K(X) = P.
class EquationSet {
 public:
  void define(const std::string& name, Pattern param, Process body);
  /// Throws Error(kUndefinedConstant).
  const Equation& lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return equations_.count(name) > 0; }
  std::size_t size() const { return equations_.size(); }

  /// K(v) unfolded: the body with v substituted for the parameter.
  /// Results are memoized; the cache is shared by copies and safe to use
  /// from several threads.
  Process unfold(const std::string& name, const Value& v) const;

 private:
  struct Cache;
  std::unordered_map<std::string, Equation> equations_;
  std::shared_ptr<Cache> cache_;
};

/// Equations plus the built-in functions their expressions call.
struct Program {
  EquationSet equations;
  FunctionTable functions = FunctionTable::standard();
};

enum class EvalRule : std::uint8_t {
  kE1,  // l[P | Q] > l[P] || l[Q]
  kE2,  // l[0] > 0
  kE3,  // l[P] > 0 when l is not live
  kE4,  // 0 || N > N
  kE5,  // N || 0 > N
  kEOut,
  kEConst,
  kEIfTrue,
  kEIfFalse,
};

std::string_view to_string(EvalRule rule);

/// One application of the evaluation relation. `focus` is the path of
/// child indices from the root of the network to the rewritten subterm.
struct EvalStep {
  EvalRule rule;
  std::vector<std::uint8_t> focus;
  Configuration result;
};

inline constexpr std::size_t kDefaultStepBudget = 1'000'000;

/// All single-step successors of the evaluation relation (no transitivity).
std::vector<EvalStep> eval_steps(const Configuration& c, const Program& program);

/**
 * Maximal evaluation: the fixed point of the evaluation relation.
 *
 * Evaluates every located process in place, so the result is the same
 * tree the step relation reaches under any schedule. Throws
 * Error(kNonTermination) once `budget` constant unfoldings are spent.
 */
Configuration evaluate(const Configuration& c, const Program& program,
                       std::size_t budget = kDefaultStepBudget);

/// Maximal evaluation by repeatedly firing the first enabled step.
/// Reference route for checking `evaluate`.
Configuration evaluate_stepwise(const Configuration& c, const Program& program,
                                std::size_t budget = kDefaultStepBudget);

/// A constant call whose unfolding only resolves conditionals and
/// unfolds constants until it reaches itself again. Such calls are
/// already evaluated: unfolding them would only cycle.
bool is_inert_call(const Process::Call& call, const Program& program);

struct Component {
  Location location;
  Process process;

  friend bool operator==(const Component&, const Component&) = default;
};

/// A network with parallel composition flattened, nil dropped and all
/// restrictions hoisted to one outer group.
struct FlatNetwork {
  std::vector<ChannelId> restricted;  // sorted, unique
  std::vector<Component> components;
};

FlatNetwork flatten(const Network& n);
/// Restriction group (first channel outermost) over a right-nested
/// parallel composition, in the given component order.
Network build(const FlatNetwork& flat);

/**
 * Sorts the components of a fully evaluated configuration into the
 * normal-form segments: a-outputs, b-outputs, c-outputs, phase-1
 * collectors, phase-2 collectors, then the wrapper. Restrictions are
 * hoisted into a single sorted group. Idempotent.
 *
 * Throws Error(kNotFullyEvaluated) for a component of any other shape.
 */
Configuration canonical_order(const Configuration& c);
/// Sorts components into the order used by canonical_order.
void canonical_sort(std::vector<Component>& components);

}  // namespace ctsf

#endif  // CTSF_EVALUATION_HH_
