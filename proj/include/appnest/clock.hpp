// Copyright 2026 The appnest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <chrono>

namespace appnest {

// Seconds since the Unix epoch. All expiry arithmetic is done at this
// resolution.
using Timestamp = std::chrono::sys_seconds;

class Clock {
 public:
  virtual ~Clock() = default;
  [[nodiscard]] virtual Timestamp now() const = 0;
};

class SystemClock final : public Clock {
 public:
  [[nodiscard]] Timestamp now() const override {
    return std::chrono::floor<std::chrono::seconds>(
        std::chrono::system_clock::now());
  }
};

// Test clock; only moves when told to.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(Timestamp start = Timestamp{std::chrono::seconds{1'700'000'000}})
      : now_(start.time_since_epoch().count()) {}

  [[nodiscard]] Timestamp now() const override {
    return Timestamp{std::chrono::seconds{now_.load()}};
  }
  void advance(std::chrono::seconds by) { now_ += by.count(); }
  void set(Timestamp t) { now_ = t.time_since_epoch().count(); }

 private:
  std::atomic<long long> now_;
};

inline long long to_unix(Timestamp t) { return t.time_since_epoch().count(); }
inline Timestamp from_unix(long long s) { return Timestamp{std::chrono::seconds{s}}; }

}  // namespace appnest
