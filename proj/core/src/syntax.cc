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

#include "ctsf/syntax.hh"

#include <algorithm>

#include "ctsf/error.hh"

namespace ctsf {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

std::size_t hash_index(const IndexTerm& t) {
  return t.is_var() ? std::hash<std::string>{}(t.var) : std::hash<int>{}(t.value) + 17;
}

std::size_t hash_channel(const ChannelTerm& c) {
  std::size_t h = static_cast<std::size_t>(c.kind) + 101;
  for (const auto& i : c.index) h = mix(h, hash_index(i));
  return h;
}

std::size_t hash_channel_id(const ChannelId& c) {
  return (static_cast<std::size_t>(c.kind) << 24) | (std::size_t{c.sender} << 16) |
         (std::size_t{c.receiver} << 8) | c.round;
}

std::size_t hash_pattern(const Pattern& p) {
  if (p.is_var()) return std::hash<std::string>{}(p.name());
  return mix(mix(7, hash_pattern(p.first())), hash_pattern(p.second()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Channels

ChannelId ChannelId::a(int sender, int receiver, int round) {
  return {ChannelKind::kA, static_cast<std::uint8_t>(sender),
          static_cast<std::uint8_t>(receiver), static_cast<std::uint8_t>(round)};
}

ChannelId ChannelId::b(int sender, int receiver) {
  return {ChannelKind::kB, static_cast<std::uint8_t>(sender),
          static_cast<std::uint8_t>(receiver), 0};
}

ChannelId ChannelId::c(int agent) {
  return {ChannelKind::kC, static_cast<std::uint8_t>(agent), 0, 0};
}

std::string ChannelId::to_string() const {
  switch (kind) {
    case ChannelKind::kA:
      return "a[" + std::to_string(sender) + "," + std::to_string(receiver) + "," +
             std::to_string(round) + "]";
    case ChannelKind::kB:
      return "b[" + std::to_string(sender) + "," + std::to_string(receiver) + "]";
    case ChannelKind::kC:
      return "c[" + std::to_string(sender) + "]";
    case ChannelKind::kOk:
      return "ok";
  }
  return "?";
}

std::string IndexTerm::to_string() const {
  return is_var() ? var : std::to_string(value);
}

ChannelTerm ChannelTerm::of(const ChannelId& id) {
  ChannelTerm t;
  t.kind = id.kind;
  switch (id.kind) {
    case ChannelKind::kA:
      t.index = {IndexTerm::constant(id.sender), IndexTerm::constant(id.receiver),
                 IndexTerm::constant(id.round)};
      break;
    case ChannelKind::kB:
      t.index = {IndexTerm::constant(id.sender), IndexTerm::constant(id.receiver), {}};
      break;
    case ChannelKind::kC:
      t.index = {IndexTerm::constant(id.sender), {}, {}};
      break;
    case ChannelKind::kOk:
      break;
  }
  return t;
}

ChannelTerm ChannelTerm::a(IndexTerm sender, IndexTerm receiver, IndexTerm round) {
  return {ChannelKind::kA, {std::move(sender), std::move(receiver), std::move(round)}};
}

ChannelTerm ChannelTerm::b(IndexTerm sender, IndexTerm receiver) {
  return {ChannelKind::kB, {std::move(sender), std::move(receiver), {}}};
}

ChannelTerm ChannelTerm::c(IndexTerm agent) {
  return {ChannelKind::kC, {std::move(agent), {}, {}}};
}

bool ChannelTerm::closed() const {
  return std::none_of(index.begin(), index.end(),
                      [](const IndexTerm& t) { return t.is_var(); });
}

ChannelId ChannelTerm::resolve() const {
  if (!closed()) {
    throw Error(ErrorCode::kTypeMismatch, "unresolved channel subscript in " + to_string());
  }
  ChannelId id;
  id.kind = kind;
  id.sender = static_cast<std::uint8_t>(index[0].value);
  id.receiver = static_cast<std::uint8_t>(index[1].value);
  id.round = static_cast<std::uint8_t>(index[2].value);
  return id;
}

std::string ChannelTerm::to_string() const {
  switch (kind) {
    case ChannelKind::kA:
      return "a[" + index[0].to_string() + "," + index[1].to_string() + "," +
             index[2].to_string() + "]";
    case ChannelKind::kB:
      return "b[" + index[0].to_string() + "," + index[1].to_string() + "]";
    case ChannelKind::kC:
      return "c[" + index[0].to_string() + "]";
    case ChannelKind::kOk:
      return "ok";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Patterns

Pattern Pattern::var(std::string name) {
  Pattern p;
  p.name_ = std::move(name);
  return p;
}

Pattern Pattern::pair(Pattern first, Pattern second) {
  Pattern p;
  p.pair_ = std::make_shared<const std::pair<Pattern, Pattern>>(std::move(first),
                                                               std::move(second));
  return p;
}

Pattern Pattern::tuple(const std::vector<std::string>& names) {
  Pattern p = var(names.back());
  for (auto it = names.rbegin() + 1; it != names.rend(); ++it) p = pair(var(*it), p);
  return p;
}

void Pattern::collect(std::set<std::string>& out) const {
  if (is_var()) {
    out.insert(name_);
  } else {
    first().collect(out);
    second().collect(out);
  }
}

bool Pattern::binds(const std::string& name) const {
  if (is_var()) return name_ == name;
  return first().binds(name) || second().binds(name);
}

bool operator==(const Pattern& a, const Pattern& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) {
  if (a.is_var() != b.is_var()) return a.is_var() ? std::strong_ordering::less
                                                  : std::strong_ordering::greater;
  if (a.is_var()) return a.name_ <=> b.name_;
  if (auto c = a.first() <=> b.first(); c != 0) return c;
  return a.second() <=> b.second();
}

std::string Pattern::to_string() const {
  if (is_var()) return name_;
  return "(" + first().to_string() + ", " + second().to_string() + ")";
}

// ---------------------------------------------------------------------------
// Expressions

struct Expr::Impl {
  Node node;
  std::size_t hash;
};

namespace {

std::size_t hash_expr_node(const Expr::Node& n) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::Lit>) {
          return mix(11, x.value.hash());
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          return mix(12, std::hash<std::string>{}(x.name));
        } else if constexpr (std::is_same_v<T, Expr::Pair>) {
          return mix(mix(13, x.first.hash()), x.second.hash());
        } else {
          return mix(mix(14, std::hash<std::string>{}(x.function)), x.arg.hash());
        }
      },
      n);
}

}  // namespace

Expr Expr::lit(Value v) {
  Node n = Lit{std::move(v)};
  auto h = hash_expr_node(n);
  return Expr(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Expr Expr::var(std::string name) {
  Node n = Var{std::move(name)};
  auto h = hash_expr_node(n);
  return Expr(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Expr Expr::pair(Expr first, Expr second) {
  Node n = Pair{std::move(first), std::move(second)};
  auto h = hash_expr_node(n);
  return Expr(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Expr Expr::call(std::string function, Expr arg) {
  Node n = Call{std::move(function), std::move(arg)};
  auto h = hash_expr_node(n);
  return Expr(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Expr Expr::tuple(const std::vector<Expr>& items) {
  Expr e = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it) e = pair(*it, e);
  return e;
}

const Expr::Node& Expr::node() const { return impl_->node; }
std::size_t Expr::hash() const { return impl_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.impl_ == b.impl_) return std::strong_ordering::equal;
  const auto& na = a.node();
  const auto& nb = b.node();
  if (na.index() != nb.index()) return na.index() <=> nb.index();
  if (const auto* x = std::get_if<Expr::Lit>(&na)) {
    return x->value <=> std::get<Expr::Lit>(nb).value;
  }
  if (const auto* x = std::get_if<Expr::Var>(&na)) {
    return x->name <=> std::get<Expr::Var>(nb).name;
  }
  if (const auto* x = std::get_if<Expr::Pair>(&na)) {
    const auto& y = std::get<Expr::Pair>(nb);
    if (auto c = x->first <=> y.first; c != 0) return c;
    return x->second <=> y.second;
  }
  const auto& x = std::get<Expr::Call>(na);
  const auto& y = std::get<Expr::Call>(nb);
  if (auto c = x.function <=> y.function; c != 0) return c;
  return x.arg <=> y.arg;
}

std::string Expr::to_string() const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Expr::Lit>) {
          return x.value.to_string();
        } else if constexpr (std::is_same_v<T, Expr::Var>) {
          return x.name;
        } else if constexpr (std::is_same_v<T, Expr::Pair>) {
          return "(" + x.first.to_string() + ", " + x.second.to_string() + ")";
        } else {
          return x.function + "(" + x.arg.to_string() + ")";
        }
      },
      node());
}

// ---------------------------------------------------------------------------
// Processes

struct Process::Impl {
  Node node;
  std::size_t hash;
};

namespace {

std::size_t hash_process_node(const Process::Node& n) {
  std::size_t h = mix(31, n.index());
  std::visit(
      [&h](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Process::Out>) {
          h = mix(mix(mix(h, hash_channel(x.channel)), x.payload.hash()), x.next.hash());
        } else if constexpr (std::is_same_v<T, Process::In>) {
          h = mix(mix(mix(h, hash_channel(x.channel)), hash_pattern(x.pattern)),
                  x.next.hash());
        } else if constexpr (std::is_same_v<T, Process::Susp> ||
                             std::is_same_v<T, Process::PSusp>) {
          h = mix(mix(h, hash_index(x.target)), x.next.hash());
        } else if constexpr (std::is_same_v<T, Process::Sum> ||
                             std::is_same_v<T, Process::Par>) {
          h = mix(mix(h, x.left.hash()), x.right.hash());
        } else if constexpr (std::is_same_v<T, Process::If>) {
          h = mix(mix(mix(h, x.cond.hash()), x.then_branch.hash()), x.else_branch.hash());
        } else if constexpr (std::is_same_v<T, Process::Tau>) {
          h = mix(h, x.next.hash());
        } else if constexpr (std::is_same_v<T, Process::Call>) {
          h = mix(mix(h, std::hash<std::string>{}(x.name)), x.arg.hash());
        }
      },
      n);
  return h;
}

}  // namespace

Process::Process() : Process(nil()) {}

Process Process::nil() {
  static const auto kNil = std::make_shared<const Impl>(Impl{Node{Nil{}}, hash_process_node(Node{Nil{}})});
  return Process(kNil);
}

Process Process::out(ChannelTerm channel, Expr payload, Process next) {
  Node n = Out{std::move(channel), std::move(payload), std::move(next)};
  auto h = hash_process_node(n);
  return Process(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Process Process::in(ChannelTerm channel, Pattern pattern, Process next) {
  Node n = In{std::move(channel), std::move(pattern), std::move(next)};
  auto h = hash_process_node(n);
  return Process(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Process Process::susp(IndexTerm target, Process next) {
  Node n = Susp{std::move(target), std::move(next)};
  auto h = hash_process_node(n);
  return Process(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Process Process::psusp(IndexTerm target, Process next) {
  Node n = PSusp{std::move(target), std::move(next)};
  auto h = hash_process_node(n);
  return Process(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Process Process::sum(Process left, Process right) {
  for (const auto* branch : {&left, &right}) {
    if (branch->as<Par>() || branch->as<Call>()) {
      throw Error(ErrorCode::kTypeMismatch,
                  "sum branch is not a guarded process: " + branch->to_string());
    }
  }
  Node n = Sum{std::move(left), std::move(right)};
  auto h = hash_process_node(n);
  return Process(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Process Process::if_then_else(Expr cond, Process then_branch, Process else_branch) {
  Node n = If{std::move(cond), std::move(then_branch), std::move(else_branch)};
  auto h = hash_process_node(n);
  return Process(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Process Process::tau(Process next) {
  Node n = Tau{std::move(next)};
  auto h = hash_process_node(n);
  return Process(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Process Process::call(std::string name, Expr arg) {
  Node n = Call{std::move(name), std::move(arg)};
  auto h = hash_process_node(n);
  return Process(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Process Process::par(Process left, Process right) {
  Node n = Par{std::move(left), std::move(right)};
  auto h = hash_process_node(n);
  return Process(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Process Process::par_all(const std::vector<Process>& items) {
  if (items.empty()) return nil();
  Process p = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it) p = par(*it, p);
  return p;
}

Process Process::in_sync(ChannelTerm channel, Process next) {
  return in(std::move(channel), Pattern::var("_"), std::move(next));
}

Process Process::inpat(ChannelTerm channel, const std::string& var, IndexTerm suspect,
                       Process next) {
  auto suspected = substitute(next, Pattern::var(var), Value::bot());
  return sum(in(std::move(channel), Pattern::var(var), std::move(next)),
             susp(std::move(suspect), std::move(suspected)));
}

const Process::Node& Process::node() const { return impl_->node; }
std::size_t Process::hash() const { return impl_->hash; }

bool operator==(const Process& a, const Process& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Process& a, const Process& b) {
  if (a.impl_ == b.impl_) return std::strong_ordering::equal;
  const auto& na = a.node();
  const auto& nb = b.node();
  if (na.index() != nb.index()) return na.index() <=> nb.index();
  return std::visit(
      [&nb](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(nb);
        if constexpr (std::is_same_v<T, Process::Nil>) {
          return std::strong_ordering::equal;
        } else if constexpr (std::is_same_v<T, Process::Out>) {
          if (auto c = x.channel <=> y.channel; c != 0) return c;
          if (auto c = x.payload <=> y.payload; c != 0) return c;
          return x.next <=> y.next;
        } else if constexpr (std::is_same_v<T, Process::In>) {
          if (auto c = x.channel <=> y.channel; c != 0) return c;
          if (auto c = x.pattern <=> y.pattern; c != 0) return c;
          return x.next <=> y.next;
        } else if constexpr (std::is_same_v<T, Process::Susp> ||
                             std::is_same_v<T, Process::PSusp>) {
          if (auto c = x.target <=> y.target; c != 0) return c;
          return x.next <=> y.next;
        } else if constexpr (std::is_same_v<T, Process::Sum> ||
                             std::is_same_v<T, Process::Par>) {
          if (auto c = x.left <=> y.left; c != 0) return c;
          return x.right <=> y.right;
        } else if constexpr (std::is_same_v<T, Process::If>) {
          if (auto c = x.cond <=> y.cond; c != 0) return c;
          if (auto c = x.then_branch <=> y.then_branch; c != 0) return c;
          return x.else_branch <=> y.else_branch;
        } else if constexpr (std::is_same_v<T, Process::Tau>) {
          return x.next <=> y.next;
        } else {
          if (auto c = x.name <=> y.name; c != 0) return c;
          return x.arg <=> y.arg;
        }
      },
      na);
}

std::string Process::to_string() const {
  auto suffix = [](const Process& next) {
    return next.is_nil() ? std::string() : "." + next.to_string();
  };
  return std::visit(
      [&suffix](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Process::Nil>) {
          return "0";
        } else if constexpr (std::is_same_v<T, Process::Out>) {
          return "'" + x.channel.to_string() + "<" + x.payload.to_string() + ">" +
                 suffix(x.next);
        } else if constexpr (std::is_same_v<T, Process::In>) {
          return x.channel.to_string() + "(" + x.pattern.to_string() + ")" + suffix(x.next);
        } else if constexpr (std::is_same_v<T, Process::Susp>) {
          return "susp " + x.target.to_string() + suffix(x.next);
        } else if constexpr (std::is_same_v<T, Process::PSusp>) {
          return "psusp " + x.target.to_string() + suffix(x.next);
        } else if constexpr (std::is_same_v<T, Process::Sum>) {
          return "(" + x.left.to_string() + " + " + x.right.to_string() + ")";
        } else if constexpr (std::is_same_v<T, Process::If>) {
          return "(if " + x.cond.to_string() + " then " + x.then_branch.to_string() +
                 " else " + x.else_branch.to_string() + ")";
        } else if constexpr (std::is_same_v<T, Process::Tau>) {
          return "t" + suffix(x.next);
        } else if constexpr (std::is_same_v<T, Process::Call>) {
          return x.name + "(" + x.arg.to_string() + ")";
        } else {
          return "(" + x.left.to_string() + " | " + x.right.to_string() + ")";
        }
      },
      node());
}

// ---------------------------------------------------------------------------
// Networks

struct Network::Impl {
  Node node;
  std::size_t hash;
};

namespace {

std::size_t hash_network_node(const Network::Node& n) {
  std::size_t h = mix(53, n.index());
  std::visit(
      [&h](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Network::Located>) {
          h = mix(mix(h, std::hash<int>{}(x.location)), x.process.hash());
        } else if constexpr (std::is_same_v<T, Network::Par>) {
          h = mix(mix(h, x.left.hash()), x.right.hash());
        } else if constexpr (std::is_same_v<T, Network::Res>) {
          h = mix(mix(h, x.body.hash()), hash_channel_id(x.channel));
        }
      },
      n);
  return h;
}

}  // namespace

Network::Network() : Network(nil()) {}

Network Network::nil() {
  static const auto kNil =
      std::make_shared<const Impl>(Impl{Node{Nil{}}, hash_network_node(Node{Nil{}})});
  return Network(kNil);
}

Network Network::located(Location location, Process process) {
  Node n = Located{location, std::move(process)};
  auto h = hash_network_node(n);
  return Network(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Network Network::par(Network left, Network right) {
  Node n = Par{std::move(left), std::move(right)};
  auto h = hash_network_node(n);
  return Network(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Network Network::res(Network body, ChannelId channel) {
  Node n = Res{std::move(body), channel};
  auto h = hash_network_node(n);
  return Network(std::make_shared<const Impl>(Impl{std::move(n), h}));
}

Network Network::par_all(const std::vector<Network>& items) {
  if (items.empty()) return nil();
  Network n = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it) n = par(*it, n);
  return n;
}

Network Network::restrict_all(Network body, const std::vector<ChannelId>& channels) {
  for (auto it = channels.rbegin(); it != channels.rend(); ++it) body = res(body, *it);
  return body;
}

const Network::Node& Network::node() const { return impl_->node; }
std::size_t Network::hash() const { return impl_->hash; }

bool operator==(const Network& a, const Network& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Network& a, const Network& b) {
  if (a.impl_ == b.impl_) return std::strong_ordering::equal;
  const auto& na = a.node();
  const auto& nb = b.node();
  if (na.index() != nb.index()) return na.index() <=> nb.index();
  if (const auto* x = std::get_if<Network::Located>(&na)) {
    const auto& y = std::get<Network::Located>(nb);
    if (auto c = x->location <=> y.location; c != 0) return c;
    return x->process <=> y.process;
  }
  if (const auto* x = std::get_if<Network::Par>(&na)) {
    const auto& y = std::get<Network::Par>(nb);
    if (auto c = x->left <=> y.left; c != 0) return c;
    return x->right <=> y.right;
  }
  if (const auto* x = std::get_if<Network::Res>(&na)) {
    const auto& y = std::get<Network::Res>(nb);
    if (auto c = x->channel <=> y.channel; c != 0) return c;
    return x->body <=> y.body;
  }
  return std::strong_ordering::equal;
}

std::string Network::to_string() const {
  if (as<Nil>()) return "0";
  if (const auto* x = as<Located>()) {
    return (x->location == kStar ? std::string("*") : std::to_string(x->location)) + "[" +
           x->process.to_string() + "]";
  }
  if (const auto* x = as<Par>()) {
    return "(" + x->left.to_string() + " || " + x->right.to_string() + ")";
  }
  const auto& r = std::get<Res>(node());
  return "(" + r.body.to_string() + " \\ " + r.channel.to_string() + ")";
}

// ---------------------------------------------------------------------------
// Configurations

bool Gamma::is_live(Location l) const {
  return l == kStar || std::binary_search(live.begin(), live.end(), l);
}

std::string Configuration::to_string() const {
  std::string s = "<({";
  for (std::size_t i = 0; i < gamma.live.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(gamma.live[i]);
  }
  s += "}, " + std::to_string(gamma.budget) + "), ";
  s += ti ? std::to_string(*ti) : std::string("_");
  return s + ", " + net.to_string() + ">";
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const {
  std::size_t h = c.net.hash();
  for (auto l : c.gamma.live) h = mix(h, static_cast<std::size_t>(l));
  h = mix(h, static_cast<std::size_t>(c.gamma.budget));
  return mix(h, c.ti ? static_cast<std::size_t>(*c.ti) + 1 : 0);
}

// ---------------------------------------------------------------------------
// Substitution

using Bindings = std::vector<std::pair<std::string, Value>>;

namespace {

void match_into(const Pattern& p, const Value& v, Bindings& out) {
  if (p.is_var()) {
    out.emplace_back(p.name(), v);
    return;
  }
  if (!v.is_pair()) {
    throw Error(ErrorCode::kPatternMismatch,
                "pattern " + p.to_string() + " does not match " + v.to_string());
  }
  match_into(p.first(), v.first(), out);
  match_into(p.second(), v.second(), out);
}

const Value* lookup(const Bindings& b, const std::string& name) {
  for (const auto& [k, v] : b) {
    if (k == name) return &v;
  }
  return nullptr;
}

IndexTerm substitute_index(const IndexTerm& t, const Bindings& b) {
  if (!t.is_var()) return t;
  if (const auto* v = lookup(b, t.var)) {
    return IndexTerm::constant(static_cast<int>(v->as_nat()));
  }
  return t;
}

ChannelTerm substitute_channel(const ChannelTerm& c, const Bindings& b) {
  if (c.closed()) return c;
  ChannelTerm out = c;
  for (auto& i : out.index) i = substitute_index(i, b);
  return out;
}

Bindings without(const Bindings& b, const Pattern& p) {
  Bindings out;
  for (const auto& kv : b) {
    if (!p.binds(kv.first)) out.push_back(kv);
  }
  return out;
}

}  // namespace

Bindings match(const Pattern& pattern, const Value& v) {
  Bindings out;
  match_into(pattern, v, out);
  return out;
}

Expr substitute(const Expr& e, const Bindings& b) {
  if (b.empty()) return e;
  if (const auto* x = e.as<Expr::Var>()) {
    if (const auto* v = lookup(b, x->name)) return Expr::lit(*v);
    return e;
  }
  if (const auto* x = e.as<Expr::Pair>()) {
    auto f = substitute(x->first, b);
    auto s = substitute(x->second, b);
    if (f.same(x->first) && s.same(x->second)) return e;
    return Expr::pair(std::move(f), std::move(s));
  }
  if (const auto* x = e.as<Expr::Call>()) {
    auto a = substitute(x->arg, b);
    if (a.same(x->arg)) return e;
    return Expr::call(x->function, std::move(a));
  }
  return e;
}

Process substitute(const Process& p, const Bindings& b) {
  if (b.empty()) return p;
  return std::visit(
      [&](const auto& x) -> Process {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Process::Nil>) {
          return p;
        } else if constexpr (std::is_same_v<T, Process::Out>) {
          auto ch = substitute_channel(x.channel, b);
          auto e = substitute(x.payload, b);
          auto next = substitute(x.next, b);
          if (ch == x.channel && e.same(x.payload) && next.same(x.next)) return p;
          return Process::out(std::move(ch), std::move(e), std::move(next));
        } else if constexpr (std::is_same_v<T, Process::In>) {
          auto ch = substitute_channel(x.channel, b);
          auto next = substitute(x.next, without(b, x.pattern));
          if (ch == x.channel && next.same(x.next)) return p;
          return Process::in(std::move(ch), x.pattern, std::move(next));
        } else if constexpr (std::is_same_v<T, Process::Susp>) {
          auto t = substitute_index(x.target, b);
          auto next = substitute(x.next, b);
          if (t == x.target && next.same(x.next)) return p;
          return Process::susp(std::move(t), std::move(next));
        } else if constexpr (std::is_same_v<T, Process::PSusp>) {
          auto t = substitute_index(x.target, b);
          auto next = substitute(x.next, b);
          if (t == x.target && next.same(x.next)) return p;
          return Process::psusp(std::move(t), std::move(next));
        } else if constexpr (std::is_same_v<T, Process::Sum>) {
          auto l = substitute(x.left, b);
          auto r = substitute(x.right, b);
          if (l.same(x.left) && r.same(x.right)) return p;
          return Process::sum(std::move(l), std::move(r));
        } else if constexpr (std::is_same_v<T, Process::If>) {
          auto c = substitute(x.cond, b);
          auto t = substitute(x.then_branch, b);
          auto e = substitute(x.else_branch, b);
          if (c.same(x.cond) && t.same(x.then_branch) && e.same(x.else_branch)) return p;
          return Process::if_then_else(std::move(c), std::move(t), std::move(e));
        } else if constexpr (std::is_same_v<T, Process::Tau>) {
          auto next = substitute(x.next, b);
          if (next.same(x.next)) return p;
          return Process::tau(std::move(next));
        } else if constexpr (std::is_same_v<T, Process::Call>) {
          auto a = substitute(x.arg, b);
          if (a.same(x.arg)) return p;
          return Process::call(x.name, std::move(a));
        } else {
          auto l = substitute(x.left, b);
          auto r = substitute(x.right, b);
          if (l.same(x.left) && r.same(x.right)) return p;
          return Process::par(std::move(l), std::move(r));
        }
      },
      p.node());
}

Process substitute(const Process& p, const Pattern& x, const Value& v) {
  return substitute(p, match(x, v));
}

// ---------------------------------------------------------------------------
// Free names

namespace {

void add_index(const IndexTerm& t, std::set<std::string>& out) {
  if (t.is_var()) out.insert(t.var);
}

void add_channel(const ChannelTerm& c, std::set<std::string>& out) {
  out.insert(c.to_string());
  for (const auto& i : c.index) add_index(i, out);
}

void free_names_into(const Expr& e, std::set<std::string>& out) {
  if (const auto* x = e.as<Expr::Var>()) {
    out.insert(x->name);
  } else if (const auto* x = e.as<Expr::Pair>()) {
    free_names_into(x->first, out);
    free_names_into(x->second, out);
  } else if (const auto* x = e.as<Expr::Call>()) {
    free_names_into(x->arg, out);
  }
}

void free_names_into(const Process& p, std::set<std::string>& out) {
  std::visit(
      [&out](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Process::Out>) {
          add_channel(x.channel, out);
          free_names_into(x.payload, out);
          free_names_into(x.next, out);
        } else if constexpr (std::is_same_v<T, Process::In>) {
          add_channel(x.channel, out);
          std::set<std::string> inner;
          free_names_into(x.next, inner);
          std::set<std::string> bound;
          x.pattern.collect(bound);
          for (const auto& n : inner) {
            if (!bound.count(n)) out.insert(n);
          }
        } else if constexpr (std::is_same_v<T, Process::Susp> ||
                             std::is_same_v<T, Process::PSusp>) {
          add_index(x.target, out);
          free_names_into(x.next, out);
        } else if constexpr (std::is_same_v<T, Process::Sum> ||
                             std::is_same_v<T, Process::Par>) {
          free_names_into(x.left, out);
          free_names_into(x.right, out);
        } else if constexpr (std::is_same_v<T, Process::If>) {
          free_names_into(x.cond, out);
          free_names_into(x.then_branch, out);
          free_names_into(x.else_branch, out);
        } else if constexpr (std::is_same_v<T, Process::Tau>) {
          free_names_into(x.next, out);
        } else if constexpr (std::is_same_v<T, Process::Call>) {
          free_names_into(x.arg, out);
        }
      },
      p.node());
}

void free_names_into(const Network& n, std::set<std::string>& out) {
  if (const auto* x = n.as<Network::Located>()) {
    free_names_into(x->process, out);
  } else if (const auto* x = n.as<Network::Par>()) {
    free_names_into(x->left, out);
    free_names_into(x->right, out);
  } else if (const auto* x = n.as<Network::Res>()) {
    std::set<std::string> inner;
    free_names_into(x->body, inner);
    inner.erase(x->channel.to_string());
    out.insert(inner.begin(), inner.end());
  }
}

}  // namespace

std::set<std::string> free_names(const Process& p) {
  std::set<std::string> out;
  free_names_into(p, out);
  return out;
}

std::set<std::string> free_names(const Network& n) {
  std::set<std::string> out;
  free_names_into(n, out);
  return out;
}

std::set<std::string> free_names(const Expr& e) {
  std::set<std::string> out;
  free_names_into(e, out);
  return out;
}

}  // namespace ctsf
