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

#ifndef CTSF_SYNTAX_HH_
#define CTSF_SYNTAX_HH_

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ctsf/value.hh"

namespace ctsf {

/// Locations are agent ids 1..n; 0 is the wrapper location (the star).
using Location = int;
inline constexpr Location kStar = 0;

enum class ChannelKind : std::uint8_t { kA, kB, kC, kOk };

/**
 * A concrete channel name. Phase-1 channels are indexed by (sender,
 * receiver, round), phase-2 channels by (sender, receiver), decision
 * channels by the deciding agent (stored in `sender`).
 */
struct ChannelId {
  ChannelKind kind = ChannelKind::kOk;
  std::uint8_t sender = 0;
  std::uint8_t receiver = 0;
  std::uint8_t round = 0;

  static ChannelId a(int sender, int receiver, int round);
  static ChannelId b(int sender, int receiver);
  static ChannelId c(int agent);
  static ChannelId ok() { return {}; }

  auto operator<=>(const ChannelId&) const = default;
  std::string to_string() const;
};

/// A location or channel subscript: either a constant or a variable bound
/// by an equation parameter.
struct IndexTerm {
  int value = 0;
  std::string var;

  static IndexTerm constant(int v) { return {v, {}}; }
  static IndexTerm variable(std::string name) { return {0, std::move(name)}; }
  bool is_var() const { return !var.empty(); }

  auto operator<=>(const IndexTerm&) const = default;
  std::string to_string() const;
};

/// Channel as written in process terms; subscripts may still be variables.
struct ChannelTerm {
  ChannelKind kind = ChannelKind::kOk;
  std::array<IndexTerm, 3> index;

  static ChannelTerm of(const ChannelId& id);
  static ChannelTerm a(IndexTerm sender, IndexTerm receiver, IndexTerm round);
  static ChannelTerm b(IndexTerm sender, IndexTerm receiver);
  static ChannelTerm c(IndexTerm agent);

  bool closed() const;
  /// Throws Error(kTypeMismatch) when a subscript is still a variable.
  ChannelId resolve() const;

  auto operator<=>(const ChannelTerm&) const = default;
  std::string to_string() const;
};

/// Variable pattern: `x` or `(X, X)`.
class Pattern {
 public:
  Pattern() = default;
  static Pattern var(std::string name);
  static Pattern pair(Pattern first, Pattern second);
  /// Right-nested tuple (a, (b, (c, d))).
  static Pattern tuple(const std::vector<std::string>& names);

  bool is_var() const { return pair_ == nullptr; }
  const std::string& name() const { return name_; }
  const Pattern& first() const { return pair_->first; }
  const Pattern& second() const { return pair_->second; }

  void collect(std::set<std::string>& out) const;
  bool binds(const std::string& name) const;

  friend bool operator==(const Pattern& a, const Pattern& b);
  friend std::strong_ordering operator<=>(const Pattern& a, const Pattern& b);
  std::string to_string() const;

 private:
  std::string name_;
  std::shared_ptr<const std::pair<Pattern, Pattern>> pair_;
};

class Expr {
 public:
  struct Lit;
  struct Var;
  struct Pair;
  struct Call;
  using Node = std::variant<Lit, Var, Pair, Call>;

  Expr() : Expr(lit(Value::bot())) {}
  static Expr lit(Value v);
  static Expr nat(std::uint64_t n) { return lit(Value::nat(n)); }
  static Expr var(std::string name);
  static Expr pair(Expr first, Expr second);
  static Expr call(std::string function, Expr arg);
  static Expr tuple(const std::vector<Expr>& items);

  const Node& node() const;
  template <class T>
  const T* as() const;
  std::size_t hash() const;
  bool same(const Expr& other) const { return impl_ == other.impl_; }

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);
  std::string to_string() const;

 private:
  struct Impl;
  explicit Expr(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct Expr::Lit {
  Value value;
};
struct Expr::Var {
  std::string name;
};
struct Expr::Pair {
  Expr first;
  Expr second;
};
struct Expr::Call {
  std::string function;
  Expr arg;
};

template <class T>
const T* Expr::as() const {
  return std::get_if<T>(&node());
}

class Process {
 public:
  struct Nil;
  struct Out;
  struct In;
  struct Susp;
  struct PSusp;
  struct Sum;
  struct If;
  struct Tau;
  struct Call;
  struct Par;
  using Node = std::variant<Nil, Out, In, Susp, PSusp, Sum, If, Tau, Call, Par>;

  Process();  // nil
  static Process nil();
  static Process out(ChannelTerm channel, Expr payload, Process next = nil());
  static Process in(ChannelTerm channel, Pattern pattern, Process next);
  static Process susp(IndexTerm target, Process next);
  static Process psusp(IndexTerm target, Process next);
  /// Throws Error(kTypeMismatch) if a branch is a bare parallel composition
  /// or constant call; sums only combine guarded processes.
  static Process sum(Process left, Process right);
  static Process if_then_else(Expr cond, Process then_branch, Process else_branch);
  static Process tau(Process next);
  static Process call(std::string name, Expr arg);
  static Process par(Process left, Process right);
  /// Right-nested parallel composition; nil for an empty list.
  static Process par_all(const std::vector<Process>& items);

  /// Derived form c.P, i.e. c(x).P with x not free in P.
  static Process in_sync(ChannelTerm channel, Process next);
  /// Derived form: receive on `channel` into `var`, or suspect `suspect`
  /// and continue with bottom substituted for `var`.
  static Process inpat(ChannelTerm channel, const std::string& var, IndexTerm suspect,
                       Process next);

  const Node& node() const;
  template <class T>
  const T* as() const;
  bool is_nil() const;
  std::size_t hash() const;
  bool same(const Process& other) const { return impl_ == other.impl_; }

  friend bool operator==(const Process& a, const Process& b);
  friend std::strong_ordering operator<=>(const Process& a, const Process& b);
  std::string to_string() const;

 private:
  struct Impl;
  explicit Process(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct Process::Nil {};
struct Process::Out {
  ChannelTerm channel;
  Expr payload;
  Process next;
};
struct Process::In {
  ChannelTerm channel;
  Pattern pattern;
  Process next;
};
struct Process::Susp {
  IndexTerm target;
  Process next;
};
struct Process::PSusp {
  IndexTerm target;
  Process next;
};
struct Process::Sum {
  Process left;
  Process right;
};
struct Process::If {
  Expr cond;
  Process then_branch;
  Process else_branch;
};
struct Process::Tau {
  Process next;
};
struct Process::Call {
  std::string name;
  Expr arg;
};
struct Process::Par {
  Process left;
  Process right;
};

template <class T>
const T* Process::as() const {
  return std::get_if<T>(&node());
}

inline bool Process::is_nil() const { return as<Nil>() != nullptr; }

class Network {
 public:
  struct Nil;
  struct Located;
  struct Par;
  struct Res;
  using Node = std::variant<Nil, Located, Par, Res>;

  Network();  // nil
  static Network nil();
  static Network located(Location location, Process process);
  static Network par(Network left, Network right);
  static Network res(Network body, ChannelId channel);
  /// Right-nested parallel composition; nil for an empty list.
  static Network par_all(const std::vector<Network>& items);
  /// Wraps `body` in one restriction per channel, first channel outermost.
  static Network restrict_all(Network body, const std::vector<ChannelId>& channels);

  const Node& node() const;
  template <class T>
  const T* as() const;
  bool is_nil() const;
  std::size_t hash() const;
  bool same(const Network& other) const { return impl_ == other.impl_; }

  friend bool operator==(const Network& a, const Network& b);
  friend std::strong_ordering operator<=>(const Network& a, const Network& b);
  std::string to_string() const;

 private:
  struct Impl;
  explicit Network(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct Network::Nil {};
struct Network::Located {
  Location location;
  Process process;
};
struct Network::Par {
  Network left;
  Network right;
};
struct Network::Res {
  Network body;
  ChannelId channel;
};

template <class T>
const T* Network::as() const {
  return std::get_if<T>(&node());
}

inline bool Network::is_nil() const { return as<Nil>() != nullptr; }

/// The live-set and crash budget of a configuration.
struct Gamma {
  std::vector<Location> live;  // sorted agent ids; the star is implicit
  int budget = 0;

  bool is_live(Location l) const;
  auto operator<=>(const Gamma&) const = default;
};

struct Configuration {
  Gamma gamma;
  std::optional<Location> ti;
  Network net;

  bool is_live(Location l) const { return gamma.is_live(l); }
  friend bool operator==(const Configuration&, const Configuration&) = default;
  std::string to_string() const;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const;
};

/// Binds the variables of `pattern` to the matching components of `v`.
/// Throws Error(kPatternMismatch) when the shapes disagree.
std::vector<std::pair<std::string, Value>> match(const Pattern& pattern, const Value& v);

Expr substitute(const Expr& e, const std::vector<std::pair<std::string, Value>>& bindings);
Process substitute(const Process& p,
                   const std::vector<std::pair<std::string, Value>>& bindings);
/// P{v/X}: replaces the free occurrences of the variables of X.
Process substitute(const Process& p, const Pattern& x, const Value& v);

/// Free variable and channel names. Channels are named by their rendering.
std::set<std::string> free_names(const Process& p);
std::set<std::string> free_names(const Network& n);
std::set<std::string> free_names(const Expr& e);

}  // namespace ctsf

#endif  // CTSF_SYNTAX_HH_
