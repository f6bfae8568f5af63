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

#include "ctsf/value.hh"

#include <algorithm>

#include "ctsf/error.hh"

namespace ctsf {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

Value Value::nat(std::uint64_t n) {
  Value v;
  v.kind_ = Kind::kNat;
  v.nat_ = n;
  v.hash_ = mix(1, std::hash<std::uint64_t>{}(n));
  return v;
}

Value Value::pair(Value first, Value second) {
  Value v;
  v.kind_ = Kind::kPair;
  v.hash_ = mix(mix(2, first.hash_), second.hash_);
  v.items_ = std::make_shared<const std::vector<Value>>(
      std::vector<Value>{std::move(first), std::move(second)});
  return v;
}

Value Value::set(std::vector<Value> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Value v;
  v.kind_ = Kind::kSet;
  std::size_t h = 3;
  for (const auto& e : elements) h = mix(h, e.hash_);
  v.hash_ = h;
  v.items_ = std::make_shared<const std::vector<Value>>(std::move(elements));
  return v;
}

std::uint64_t Value::as_nat() const {
  if (kind_ != Kind::kNat) {
    throw Error(ErrorCode::kTypeMismatch, "expected a number, got " + to_string());
  }
  return nat_;
}

const Value& Value::first() const {
  if (kind_ != Kind::kPair) {
    throw Error(ErrorCode::kTypeMismatch, "expected a pair, got " + to_string());
  }
  return (*items_)[0];
}

const Value& Value::second() const {
  if (kind_ != Kind::kPair) {
    throw Error(ErrorCode::kTypeMismatch, "expected a pair, got " + to_string());
  }
  return (*items_)[1];
}

std::span<const Value> Value::elements() const {
  if (kind_ != Kind::kSet) {
    throw Error(ErrorCode::kTypeMismatch, "expected a set, got " + to_string());
  }
  return {items_->data(), items_->size()};
}

Value Value::insert(const Value& element) const {
  auto elems = elements();
  auto it = std::lower_bound(elems.begin(), elems.end(), element);
  if (it != elems.end() && *it == element) return *this;
  std::vector<Value> out;
  out.reserve(elems.size() + 1);
  out.insert(out.end(), elems.begin(), it);
  out.push_back(element);
  out.insert(out.end(), it, elems.end());
  return Value::set(std::move(out));
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_ || a.hash_ != b.hash_) return false;
  switch (a.kind_) {
    case Value::Kind::kBot:
      return true;
    case Value::Kind::kNat:
      return a.nat_ == b.nat_;
    default:
      return a.items_ == b.items_ || *a.items_ == *b.items_;
  }
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Value::Kind::kBot:
      return std::strong_ordering::equal;
    case Value::Kind::kNat:
      return a.nat_ <=> b.nat_;
    default:
      if (a.items_ == b.items_) return std::strong_ordering::equal;
      return std::lexicographical_compare_three_way(
          a.items_->begin(), a.items_->end(), b.items_->begin(), b.items_->end());
  }
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::kBot:
      return "_";
    case Kind::kNat:
      return std::to_string(nat_);
    case Kind::kPair:
      return "(" + (*items_)[0].to_string() + ", " + (*items_)[1].to_string() + ")";
    case Kind::kSet: {
      std::string s = "{";
      for (std::size_t i = 0; i < items_->size(); ++i) {
        if (i) s += ", ";
        s += (*items_)[i].to_string();
      }
      return s + "}";
    }
  }
  return "?";
}

}  // namespace ctsf
