/*
 * Copyright 2026 The hetgames authors
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

#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetgames {

enum class Player { P1 = 0, P2 = 1 };

inline Player opponent(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }

inline const char* player_name(Player p) { return p == Player::P1 ? "P1" : "P2"; }

using Vertex = int;
using Weight = long long;

/** Sentinel for the bottom element of the blocked-sum domain. */
constexpr Weight kNegInf = std::numeric_limits<Weight>::min();

/** Default cap on vertices materialized by product constructions. */
constexpr long long kDefaultNodeBudget = 1ll << 22;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DeadlockVertexError : public Error {
 public:
  DeadlockVertexError(Vertex v, const std::string& what) : Error(what), vertex(v) {}
  Vertex vertex;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class BadEndpointError : public Error {
 public:
  using Error::Error;
};

class NotClosedError : public Error {
 public:
  NotClosedError(Vertex v, const std::string& what) : Error(what), vertex(v) {}
  Vertex vertex;
};

class BadDimensionError : public Error {
 public:
  using Error::Error;
};

class ObjectiveSyntaxError : public Error {
 public:
  ObjectiveSyntaxError(std::size_t pos, const std::string& expected)
      : Error("objective syntax error at position " + std::to_string(pos) +
              ": expected " + expected),
        position(pos),
        expected(expected) {}
  std::size_t position;
  std::string expected;
};

class BadWindowError : public Error {
 public:
  using Error::Error;
};

class ProductTooLargeError : public Error {
 public:
  using Error::Error;
};

class NotIslError : public Error {
 public:
  using Error::Error;
};

class FragmentMismatchError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

class TooShortError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/** Fixed-universe bit set over vertex indices. */
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe) : n_(universe), bits_((universe + 63) / 64, 0) {}

  static VertexSet all(int universe) {
    VertexSet s(universe);
    for (int v = 0; v < universe; ++v) s.set(v);
    return s;
  }

  int universe() const { return n_; }

  bool test(Vertex v) const {
    assert(v >= 0 && v < n_);
    return (bits_[v >> 6] >> (v & 63)) & 1u;
  }

  void set(Vertex v) {
    assert(v >= 0 && v < n_);
    bits_[v >> 6] |= (std::uint64_t{1} << (v & 63));
  }

  void reset(Vertex v) {
    assert(v >= 0 && v < n_);
    bits_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : bits_) c += __builtin_popcountll(w);
    return c;
  }

  bool empty() const {
    for (std::uint64_t w : bits_) {
      if (w != 0) return false;
    }
    return true;
  }

  bool operator==(const VertexSet& o) const = default;

  VertexSet& operator|=(const VertexSet& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }

  VertexSet& operator&=(const VertexSet& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
  }

  VertexSet& subtract(const VertexSet& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
    return *this;
  }

  VertexSet complement() const {
    VertexSet r(n_);
    for (int v = 0; v < n_; ++v) {
      if (!test(v)) r.set(v);
    }
    return r;
  }

  bool subset_of(const VertexSet& o) const {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] & ~o.bits_[i]) return false;
    }
    return true;
  }

  bool intersects(const VertexSet& o) const {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] & o.bits_[i]) return true;
    }
    return false;
  }

  std::vector<Vertex> elements() const {
    std::vector<Vertex> out;
    for (int v = 0; v < n_; ++v) {
      if (test(v)) out.push_back(v);
    }
    return out;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
inline VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
inline VertexSet operator-(VertexSet a, const VertexSet& b) { return a.subtract(b); }

/** Mixed-radix packer for composite memory states. */
class StatePacker {
 public:
  /** Adds a component with values in [0, radix); returns its slot. */
  int add(long long radix) {
    assert(radix >= 1);
    radices_.push_back(radix);
    return static_cast<int>(radices_.size()) - 1;
  }

  long long size() const {
    long long s = 1;
    for (long long r : radices_) s *= r;
    return s;
  }

  long long pack(const std::vector<long long>& comps) const {
    assert(comps.size() == radices_.size());
    long long id = 0;
    for (std::size_t i = 0; i < radices_.size(); ++i) {
      assert(comps[i] >= 0 && comps[i] < radices_[i]);
      id = id * radices_[i] + comps[i];
    }
    return id;
  }

  std::vector<long long> unpack(long long id) const {
    std::vector<long long> comps(radices_.size(), 0);
    for (std::size_t i = radices_.size(); i-- > 0;) {
      comps[i] = id % radices_[i];
      id /= radices_[i];
    }
    assert(id == 0);
    return comps;
  }

 private:
  std::vector<long long> radices_;
};

}  // namespace hetgames
