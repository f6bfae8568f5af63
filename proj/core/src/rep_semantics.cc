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

#include "ctsf/rep_semantics.hh"

#include <algorithm>

namespace ctsf {

namespace {

std::uint8_t u8(int x) { return static_cast<std::uint8_t>(x); }

class Stepper {
 public:
  Stepper(const Representative& r, const Model& model)
      : r_(r), model_(model), n_(model.n()) {}

  std::vector<RepStep> run() {
    for (std::size_t k = 0; k < r_.in1.size(); ++k) phase1(k);
    for (std::size_t k = 0; k < r_.in2.size(); ++k) phase2(k);
    wrapper();
    crashes();
    return std::move(steps_);
  }

 private:
  bool may_suspect(int q, int p) const {
    return p != q && (p != r_.ti || model_.mutations.no_ti_protection);
  }

  void emit(Rule rule, int a, int b, int c, Representative target) {
    target.normalize();
    steps_.push_back({RuleLabel{rule, u8(a), u8(b), u8(c)}, std::move(target)});
  }

  void phase1(std::size_t k) {
    const In1& s = r_.in1[k];
    const int q = s.p, p = s.next, r = s.r;
    auto msg = std::find_if(r_.out1.begin(), r_.out1.end(), [&](const Out1& m) {
      return m.p == p && m.i == q && m.r == r;
    });
    const int family = p < n_ ? 0 : (r < n_ - 1 ? 1 : 2);
    if (msg != r_.out1.end()) {
      Representative t = r_;
      t.out1.erase(t.out1.begin() + (msg - r_.out1.begin()));
      Value msgs = s.msgs.insert(phase1_entry(msg->delta, r, p));
      advance1(t, k, msgs);
      if (family == 0 && model_.mutations.sr1_drops_in1) {
        t.in1.erase(std::find_if(t.in1.begin(), t.in1.end(),
                                 [&](const In1& x) { return x.p == q; }));
      }
      emit(static_cast<Rule>(static_cast<int>(Rule::kSR1) + family), q, p, r, std::move(t));
    }
    if (may_suspect(q, p) && !(family == 0 && model_.mutations.disable_sr4)) {
      Representative t = r_;
      advance1(t, k, s.msgs.insert(phase1_entry(Value::bot(), r, p)));
      emit(static_cast<Rule>(static_cast<int>(Rule::kSR4) + family), q, p, r, std::move(t));
    }
  }

  // Collector k has received from its awaited sender; msgs already holds
  // the new entry.
  void advance1(Representative& t, std::size_t k, const Value& msgs) {
    In1 s = r_.in1[k];
    t.in1.erase(t.in1.begin() + static_cast<std::ptrdiff_t>(k));
    if (s.next < n_) {
      s.msgs = msgs;
      ++s.next;
      t.in1.push_back(std::move(s));
      return;
    }
    Value know = updatek(s.r, msgs, s.know);
    if (s.r + 1 < n_) {
      Value relay = updater(s.r, msgs, s.know);
      for (int j = 1; j <= n_; ++j) t.out1.push_back(Out1{s.p, j, s.r + 1, relay});
      t.in1.push_back(In1{s.p, s.r + 1, know, msgs, 1});
    } else {
      for (int j = 1; j <= n_; ++j) t.out2.push_back(Out2{s.p, j, know});
      t.in2.push_back(In2{s.p, know, msgs, 1});
    }
  }

  void phase2(std::size_t k) {
    const In2& s = r_.in2[k];
    const int q = s.p, p = s.next;
    auto msg = std::find_if(r_.out2.begin(), r_.out2.end(),
                            [&](const Out2& m) { return m.p == p && m.i == q; });
    const bool last = p == n_;
    if (msg != r_.out2.end()) {
      Representative t = r_;
      t.out2.erase(t.out2.begin() + (msg - r_.out2.begin()));
      advance2(t, k, s.msgs.insert(phase2_entry(msg->vector, p)));
      emit(last ? Rule::kSR2p : Rule::kSR1p, q, p, 0, std::move(t));
    }
    if (may_suspect(q, p)) {
      Representative t = r_;
      advance2(t, k, s.msgs.insert(phase2_entry(Value::bot(), p)));
      emit(last ? Rule::kSR5p : Rule::kSR4p, q, p, 0, std::move(t));
    }
  }

  void advance2(Representative& t, std::size_t k, const Value& msgs) {
    In2 s = r_.in2[k];
    t.in2.erase(t.in2.begin() + static_cast<std::ptrdiff_t>(k));
    if (s.next < n_) {
      s.msgs = msgs;
      ++s.next;
      t.in2.push_back(std::move(s));
      return;
    }
    Value know = model_.mutations.skip_correct ? s.know : correct_fn(msgs, s.know);
    t.out3.push_back(Out3{s.p, getfst(know)});
  }

  void wrapper() {
    const Wrap& w = r_.wrap;
    if (w.b != 1 || w.j < 1 || w.j > n_) return;
    auto collapse = [this](Wrap x) {
      if (x.j == n_ + 1) x.j = 0;
      return x;
    };
    auto msg = std::find_if(r_.out3.begin(), r_.out3.end(),
                            [&](const Out3& m) { return m.p == w.j; });
    if (msg != r_.out3.end()) {
      Representative t = r_;
      t.out3.erase(t.out3.begin() + (msg - r_.out3.begin()));
      const Value& v = msg->v;
      bool accept = (w.w.is_bot() && !v.is_bot()) || w.w == v;
      t.wrap = accept ? collapse(Wrap{w.j + 1, v, 1}) : Wrap{w.j, w.w, 0};
      emit(Rule::kSRW1, w.j, 0, 0, std::move(t));
    }
    if (!r_.is_live(w.j)) {
      Representative t = r_;
      t.wrap = collapse(Wrap{w.j + 1, w.w, 1});
      emit(Rule::kSRW2, w.j, 0, 0, std::move(t));
    }
  }

  void crashes() {
    if (r_.budget <= 0) return;
    for (int p : r_.live) {
      if (p == r_.ti) continue;
      Representative t = r_;
      std::erase(t.live, p);
      --t.budget;
      std::erase_if(t.out1, [p](const Out1& m) { return m.p == p; });
      std::erase_if(t.out2, [p](const Out2& m) { return m.p == p; });
      std::erase_if(t.out3, [p](const Out3& m) { return m.p == p; });
      std::erase_if(t.in1, [p](const In1& s) { return s.p == p; });
      std::erase_if(t.in2, [p](const In2& s) { return s.p == p; });
      emit(Rule::kSR7, p, 0, 0, std::move(t));
    }
  }

  const Representative& r_;
  const Model& model_;
  const int n_;
  std::vector<RepStep> steps_;
};

}  // namespace

std::vector<RepStep> rep_successors(const Representative& r, const Model& model) {
  return Stepper(r, model).run();
}

}  // namespace ctsf
