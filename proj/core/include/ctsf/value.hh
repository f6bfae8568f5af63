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

#ifndef CTSF_VALUE_HH_
#define CTSF_VALUE_HH_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ctsf {

/**
 * A data value of the calculus: bottom, a natural number, a pair or a
 * finite set.
 *
 * Values are immutable. Compound values share their children, so copies
 * are cheap. Sets are kept sorted and duplicate free, which makes the
 * derived equality and ordering set semantics.
 */
class Value {
 public:
  enum class Kind : std::uint8_t { kBot, kNat, kPair, kSet };

  Value() = default;

  static Value bot() { return Value(); }
  static Value nat(std::uint64_t n);
  static Value pair(Value first, Value second);
  static Value set(std::vector<Value> elements);

  Kind kind() const { return kind_; }
  bool is_bot() const { return kind_ == Kind::kBot; }
  bool is_nat() const { return kind_ == Kind::kNat; }
  bool is_pair() const { return kind_ == Kind::kPair; }
  bool is_set() const { return kind_ == Kind::kSet; }

  // Accessors throw Error(kTypeMismatch) on the wrong kind.
  std::uint64_t as_nat() const;
  const Value& first() const;
  const Value& second() const;
  std::span<const Value> elements() const;

  /// Returns a set with `element` added; this must be a set.
  Value insert(const Value& element) const;

  std::size_t hash() const { return hash_; }

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  /// Compact rendering: `_` for bottom, `(a, b)` for pairs, `{a, b}` for sets.
  std::string to_string() const;

 private:
  Kind kind_ = Kind::kBot;
  std::uint64_t nat_ = 0;
  std::shared_ptr<const std::vector<Value>> items_;
  std::size_t hash_ = 0x9e3779b9u;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

}  // namespace ctsf

#endif  // CTSF_VALUE_HH_
