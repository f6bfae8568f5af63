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

#include "ctsf/rules.hh"

#include <array>
#include <charconv>
#include <vector>

namespace ctsf {

namespace {

struct RuleInfo {
  Rule rule;
  std::string_view name;
  // Parameter names; empty entries are unused.
  std::array<std::string_view, 3> params;
};

constexpr std::array<RuleInfo, 22> kRules = {{
    {Rule::kComA, "Com", {}},
    {Rule::kComB, "Com", {}},
    {Rule::kComC, "Com", {}},
    {Rule::kSusp, "Susp", {"l", "k", ""}},
    {Rule::kPSusp, "PSusp", {"k", "", ""}},
    {Rule::kStop, "Stop", {"l", "", ""}},
    {Rule::kSnd, "Snd", {}},
    {Rule::kTau, "Tau", {"l", "", ""}},
    {Rule::kSR1, "SR1", {"q", "p", "r"}},
    {Rule::kSR2, "SR2", {"q", "p", "r"}},
    {Rule::kSR3, "SR3", {"q", "p", "r"}},
    {Rule::kSR4, "SR4", {"q", "p", "r"}},
    {Rule::kSR5, "SR5", {"q", "p", "r"}},
    {Rule::kSR6, "SR6", {"q", "p", "r"}},
    {Rule::kSR1p, "SR1'", {"q", "p", ""}},
    {Rule::kSR2p, "SR2'", {"q", "p", ""}},
    {Rule::kSR4p, "SR4'", {"q", "p", ""}},
    {Rule::kSR5p, "SR5'", {"q", "p", ""}},
    {Rule::kSRW1, "SRW1", {"i", "", ""}},
    {Rule::kSRW2, "SRW2", {"i", "", ""}},
    {Rule::kSR7, "SR7", {"p", "", ""}},
    {Rule::kOK, "OK", {}},
}};

const RuleInfo& info(Rule r) { return kRules[static_cast<std::size_t>(r)]; }

}  // namespace

std::string_view rule_name(Rule rule) { return info(rule).name; }

bool is_calculus_rule(Rule rule) { return rule <= Rule::kTau; }

std::string RuleLabel::to_string() const {
  auto n = [](std::uint8_t x) { return std::to_string(x); };
  switch (rule) {
    case Rule::kComA: return "Com(a[" + n(a) + "," + n(b) + "," + n(c) + "])";
    case Rule::kComB: return "Com(b[" + n(a) + "," + n(b) + "])";
    case Rule::kComC: return "Com(c[" + n(a) + "])";
    case Rule::kSnd: return "Snd(ok)";
    case Rule::kOK: return "OK";
    default: break;
  }
  const auto& ri = info(rule);
  std::string s(ri.name);
  s += "(";
  const std::array<std::uint8_t, 3> values{a, b, c};
  for (std::size_t k = 0; k < 3 && !ri.params[k].empty(); ++k) {
    if (k) s += ",";
    s += std::string(ri.params[k]) + "=" + n(values[k]);
  }
  return s + ")";
}

std::optional<RuleLabel> RuleLabel::parse(std::string_view id) {
  auto open = id.find('(');
  std::string_view name = id.substr(0, open);
  std::string_view body;
  if (open != std::string_view::npos) {
    if (!id.ends_with(")")) return std::nullopt;
    body = id.substr(open + 1, id.size() - open - 2);
  }
  // Comma-separated numbers, each optionally prefixed by `key=`.
  auto numbers = [](std::string_view text, std::vector<int>& out) {
    while (!text.empty()) {
      auto comma = text.find(',');
      auto item = text.substr(0, comma);
      if (auto eq = item.find('='); eq != std::string_view::npos) item = item.substr(eq + 1);
      int v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size() || v < 0 || v > 255) return false;
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    return true;
  };
  std::optional<RuleLabel> result;
  for (const auto& ri : kRules) {
    if (ri.name != name) continue;
    std::vector<int> v;
    std::size_t want = 0;
    Rule rule = ri.rule;
    if (name == "Com") {
      if (body.size() < 4 || body[1] != '[' || !body.ends_with("]")) return std::nullopt;
      rule = body[0] == 'a' ? Rule::kComA : body[0] == 'b' ? Rule::kComB : Rule::kComC;
      want = body[0] == 'a' ? 3 : body[0] == 'b' ? 2 : 1;
      if (body[0] != 'a' && body[0] != 'b' && body[0] != 'c') return std::nullopt;
      if (!numbers(body.substr(2, body.size() - 3), v)) return std::nullopt;
    } else {
      for (const auto& pn : ri.params) want += pn.empty() ? 0 : 1;
      if (name == "Snd") {
        if (body != "ok") return std::nullopt;
      } else if (!numbers(body, v)) {
        return std::nullopt;
      }
    }
    if (v.size() != want) return std::nullopt;
    v.resize(3, 0);
    RuleLabel l{rule, static_cast<std::uint8_t>(v[0]), static_cast<std::uint8_t>(v[1]),
                static_cast<std::uint8_t>(v[2])};
    // Accept only the canonical spelling.
    if (l.to_string() == id) result = l;
    break;
  }
  return result;
}

}  // namespace ctsf
