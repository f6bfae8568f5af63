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

#include "ctsf/representative.hh"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "ctsf/error.hh"

namespace ctsf {

bool Representative::is_live(int p) const {
  return std::binary_search(live.begin(), live.end(), p);
}

void Representative::normalize() {
  std::sort(live.begin(), live.end());
  std::sort(out1.begin(), out1.end());
  std::sort(out2.begin(), out2.end());
  std::sort(out3.begin(), out3.end());
  std::sort(in1.begin(), in1.end());
  std::sort(in2.begin(), in2.end());
}

namespace {

[[noreturn]] void violated(const std::string& what) {
  throw Error(ErrorCode::kInvariantViolation, what);
}

void require(bool cond, const std::string& what) {
  if (!cond) violated(what);
}

template <class T, class Key>
void require_unique(const std::vector<T>& items, Key key, const char* what) {
  std::set<decltype(key(items.front()))> seen;
  for (const auto& x : items) {
    if (!seen.insert(key(x)).second) violated(std::string("duplicate ") + what);
  }
}

}  // namespace

void validate(const Representative& r, int n) {
  auto agent = [n](int p) { return p >= 1 && p <= n; };
  require(std::is_sorted(r.live.begin(), r.live.end()), "live set not sorted");
  for (int p : r.live) require(agent(p), "live agent out of range");
  require(r.budget >= 0, "negative budget");
  require(agent(r.ti) && r.is_live(r.ti), "trusted immortal not live");
  for (const auto& m : r.out1) {
    require(agent(m.p) && agent(m.i) && m.r >= 1 && m.r < n, "out1 index out of range");
    require(r.is_live(m.p), "out1 sender not live");
  }
  for (const auto& m : r.out2) {
    require(agent(m.p) && agent(m.i), "out2 index out of range");
    require(r.is_live(m.p), "out2 sender not live");
  }
  for (const auto& m : r.out3) require(agent(m.p) && r.is_live(m.p), "out3 sender not live");
  std::set<int> roles;
  for (const auto& s : r.in1) {
    require(agent(s.p) && r.is_live(s.p), "in1 agent not live");
    require(s.r >= 1 && s.r < n && s.next >= 1 && s.next <= n, "in1 index out of range");
    require(roles.insert(s.p).second, "agent has two roles");
  }
  for (const auto& s : r.in2) {
    require(agent(s.p) && r.is_live(s.p), "in2 agent not live");
    require(s.next >= 1 && s.next <= n, "in2 index out of range");
    require(roles.insert(s.p).second, "agent has two roles");
  }
  for (const auto& m : r.out3) require(roles.insert(m.p).second, "agent has two roles");
  if (!r.out1.empty()) require_unique(r.out1, [](const Out1& m) { return std::tuple(m.p, m.i, m.r); }, "out1 key");
  if (!r.out2.empty()) require_unique(r.out2, [](const Out2& m) { return std::pair(m.p, m.i); }, "out2 key");
  require(r.wrap.j >= 0 && r.wrap.j <= n, "wrapper index out of range");
  require(r.wrap.b == 0 || r.wrap.b == 1, "wrapper flag not 0 or 1");
  require(r.wrap.b == 1 || r.wrap.j >= 1, "rejecting wrapper without an index");
}

// ---------------------------------------------------------------------------
// Binary key

namespace {

enum Tag : char { kBotTag = 'b', kNatTag = 'n', kPairTag = 'p', kSetTag = 's' };

void put_varint(std::uint64_t x, std::string& out) {
  while (x >= 0x80) {
    out.push_back(static_cast<char>((x & 0x7f) | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<char>(x));
}

[[noreturn]] void garbage() {
  throw Error(ErrorCode::kInvalidRepresentative, "malformed representative key");
}

std::uint64_t get_varint(std::string_view& in) {
  std::uint64_t x = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    if (in.empty()) garbage();
    auto byte = static_cast<unsigned char>(in.front());
    in.remove_prefix(1);
    x |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if ((byte & 0x80) == 0) return x;
  }
  garbage();
}

int get_small(std::string_view& in) { return static_cast<int>(get_varint(in)); }

}  // namespace

void encode_value(const Value& v, std::string& out) {
  switch (v.kind()) {
    case Value::Kind::kBot:
      out.push_back(kBotTag);
      return;
    case Value::Kind::kNat:
      out.push_back(kNatTag);
      put_varint(v.as_nat(), out);
      return;
    case Value::Kind::kPair:
      out.push_back(kPairTag);
      encode_value(v.first(), out);
      encode_value(v.second(), out);
      return;
    case Value::Kind::kSet:
      out.push_back(kSetTag);
      put_varint(v.elements().size(), out);
      for (const auto& e : v.elements()) encode_value(e, out);
      return;
  }
}

Value decode_value(std::string_view& in) {
  if (in.empty()) garbage();
  char tag = in.front();
  in.remove_prefix(1);
  switch (tag) {
    case kBotTag: return Value::bot();
    case kNatTag: return Value::nat(get_varint(in));
    case kPairTag: {
      Value a = decode_value(in);
      Value b = decode_value(in);
      return Value::pair(std::move(a), std::move(b));
    }
    case kSetTag: {
      auto count = get_varint(in);
      if (count > in.size()) garbage();
      std::vector<Value> items;
      items.reserve(count);
      for (std::uint64_t k = 0; k < count; ++k) items.push_back(decode_value(in));
      return Value::set(std::move(items));
    }
    default: garbage();
  }
}

std::string encode(const Representative& r) {
  std::string out;
  out.reserve(128);
  std::uint64_t mask = 0;
  for (int p : r.live) mask |= std::uint64_t{1} << p;
  put_varint(mask, out);
  put_varint(r.budget, out);
  put_varint(r.ti, out);
  put_varint(r.out1.size(), out);
  for (const auto& m : r.out1) {
    put_varint(m.p, out);
    put_varint(m.i, out);
    put_varint(m.r, out);
    encode_value(m.delta, out);
  }
  put_varint(r.out2.size(), out);
  for (const auto& m : r.out2) {
    put_varint(m.p, out);
    put_varint(m.i, out);
    encode_value(m.vector, out);
  }
  put_varint(r.out3.size(), out);
  for (const auto& m : r.out3) {
    put_varint(m.p, out);
    encode_value(m.v, out);
  }
  put_varint(r.in1.size(), out);
  for (const auto& s : r.in1) {
    put_varint(s.p, out);
    put_varint(s.r, out);
    encode_value(s.know, out);
    encode_value(s.msgs, out);
    put_varint(s.next, out);
  }
  put_varint(r.in2.size(), out);
  for (const auto& s : r.in2) {
    put_varint(s.p, out);
    encode_value(s.know, out);
    encode_value(s.msgs, out);
    put_varint(s.next, out);
  }
  put_varint(r.wrap.j, out);
  encode_value(r.wrap.w, out);
  put_varint(r.wrap.b, out);
  return out;
}

Representative decode(std::string_view in) {
  Representative r;
  auto mask = get_varint(in);
  for (int p = 0; p < 64; ++p) {
    if (mask & (std::uint64_t{1} << p)) r.live.push_back(p);
  }
  r.budget = get_small(in);
  r.ti = get_small(in);
  for (auto k = get_varint(in); k > 0; --k) {
    Out1 m;
    m.p = get_small(in);
    m.i = get_small(in);
    m.r = get_small(in);
    m.delta = decode_value(in);
    r.out1.push_back(std::move(m));
  }
  for (auto k = get_varint(in); k > 0; --k) {
    Out2 m;
    m.p = get_small(in);
    m.i = get_small(in);
    m.vector = decode_value(in);
    r.out2.push_back(std::move(m));
  }
  for (auto k = get_varint(in); k > 0; --k) {
    Out3 m;
    m.p = get_small(in);
    m.v = decode_value(in);
    r.out3.push_back(std::move(m));
  }
  for (auto k = get_varint(in); k > 0; --k) {
    In1 s;
    s.p = get_small(in);
    s.r = get_small(in);
    s.know = decode_value(in);
    s.msgs = decode_value(in);
    s.next = get_small(in);
    r.in1.push_back(std::move(s));
  }
  for (auto k = get_varint(in); k > 0; --k) {
    In2 s;
    s.p = get_small(in);
    s.know = decode_value(in);
    s.msgs = decode_value(in);
    s.next = get_small(in);
    r.in2.push_back(std::move(s));
  }
  r.wrap.j = get_small(in);
  r.wrap.w = decode_value(in);
  r.wrap.b = get_small(in);
  if (!in.empty()) garbage();
  return r;
}

// ---------------------------------------------------------------------------
// JSON and text

std::string value_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kBot: return "null";
    case Value::Kind::kNat: return std::to_string(v.as_nat());
    case Value::Kind::kPair:
      return "[" + value_json(v.first()) + "," + value_json(v.second()) + "]";
    case Value::Kind::kSet: {
      std::string s = "{\"set\":[";
      bool first = true;
      for (const auto& e : v.elements()) {
        if (!first) s += ",";
        first = false;
        s += value_json(e);
      }
      return s + "]}";
    }
  }
  return "null";
}

namespace {

template <class T, class F>
std::string json_array(const std::vector<T>& items, F item) {
  std::string s = "[";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) s += ",";
    s += item(items[k]);
  }
  return s + "]";
}

std::string num(int x) { return std::to_string(x); }

}  // namespace

std::string to_json(const Representative& r) {
  // Keys in lexicographic order.
  std::string s = "{";
  s += "\"budget\":" + num(r.budget);
  s += ",\"in1\":" + json_array(r.in1, [](const In1& x) {
    return "{\"M\":" + value_json(x.msgs) + ",\"V\":" + value_json(x.know) +
           ",\"i\":" + num(x.next) + ",\"p\":" + num(x.p) + ",\"r\":" + num(x.r) + "}";
  });
  s += ",\"in2\":" + json_array(r.in2, [](const In2& x) {
    return "{\"M\":" + value_json(x.msgs) + ",\"V\":" + value_json(x.know) +
           ",\"i\":" + num(x.next) + ",\"p\":" + num(x.p) + "}";
  });
  s += ",\"live\":" + json_array(r.live, [](int p) { return num(p); });
  s += ",\"out1\":" + json_array(r.out1, [](const Out1& x) {
    return "{\"delta\":" + value_json(x.delta) + ",\"i\":" + num(x.i) + ",\"p\":" + num(x.p) +
           ",\"r\":" + num(x.r) + "}";
  });
  s += ",\"out2\":" + json_array(r.out2, [](const Out2& x) {
    return "{\"V\":" + value_json(x.vector) + ",\"i\":" + num(x.i) + ",\"p\":" + num(x.p) + "}";
  });
  s += ",\"out3\":" + json_array(r.out3, [](const Out3& x) {
    return "{\"p\":" + num(x.p) + ",\"v\":" + value_json(x.v) + "}";
  });
  s += ",\"ti\":" + num(r.ti);
  s += ",\"wrap\":{\"b\":" + num(r.wrap.b) + ",\"j\":" + num(r.wrap.j) +
       ",\"w\":" + value_json(r.wrap.w) + "}";
  return s + "}";
}

std::string render(const Representative& r) {
  std::ostringstream os;
  os << "live {";
  for (std::size_t k = 0; k < r.live.size(); ++k) os << (k ? "," : "") << r.live[k];
  os << "} budget " << r.budget << " ti " << r.ti << "\n";
  for (const auto& m : r.out1) {
    os << "  out1 " << m.p << "->" << m.i << " r" << m.r << " " << m.delta.to_string() << "\n";
  }
  for (const auto& m : r.out2) {
    os << "  out2 " << m.p << "->" << m.i << " " << m.vector.to_string() << "\n";
  }
  for (const auto& m : r.out3) os << "  out3 " << m.p << " decides " << m.v.to_string() << "\n";
  for (const auto& s : r.in1) {
    os << "  in1  " << s.p << " r" << s.r << " awaits " << s.next << " V " << s.know.to_string()
       << " M " << s.msgs.to_string() << "\n";
  }
  for (const auto& s : r.in2) {
    os << "  in2  " << s.p << " awaits " << s.next << " V " << s.know.to_string() << " M "
       << s.msgs.to_string() << "\n";
  }
  os << "  wrap (" << r.wrap.j << ", " << r.wrap.w.to_string() << ", " << r.wrap.b << ")";
  return os.str();
}

std::string digest(std::string_view key) {
  // 64-bit FNV-1a.
  std::uint64_t h = 1469598103934665603ull;
  for (char c : key) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(12, '0');
  for (int k = 11; k >= 0; --k) {
    s[k] = hex[h & 0xf];
    h >>= 4;
  }
  return s;
}

}  // namespace ctsf
