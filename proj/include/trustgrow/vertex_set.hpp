#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "trustgrow/error.hpp"

namespace trustgrow {

using VertexId = std::uint32_t;

// Membership bitset over the vertex range [0, universe).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSet of(std::size_t universe, std::span<const VertexId> ids) {
    VertexSet s(universe);
    for (VertexId v : ids) s.insert(v);
    return s;
  }
  static VertexSet of(std::size_t universe, std::initializer_list<VertexId> ids) {
    return of(universe, std::span<const VertexId>(ids.begin(), ids.size()));
  }
  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }
  // First `count` vertices of the universe.
  static VertexSet range(std::size_t universe, std::size_t count) {
    VertexSet s(universe);
    for (std::size_t v = 0; v < count; ++v) s.insert(static_cast<VertexId>(v));
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(VertexId v) const {
    return v < universe_ && ((words_[v / 64] >> (v % 64)) & 1u) != 0;
  }
  void insert(VertexId v) {
    check(v);
    words_[v / 64] |= std::uint64_t{1} << (v % 64);
  }
  void erase(VertexId v) {
    check(v);
    words_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  VertexSet complement() const {
    VertexSet s(*this);
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  VertexSet& operator|=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  bool is_subset_of(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }
  bool intersects(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & o.words_[i]) != 0) return true;
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        const int bit = std::countr_zero(w);
        f(static_cast<VertexId>(i * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::vector<VertexId> members() const {
    std::vector<VertexId> out;
    out.reserve(size());
    for_each([&](VertexId v) { out.push_back(v); });
    return out;
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

 private:
  void check(VertexId v) const {
    if (v >= universe_)
      fail(ErrorKind::input, "vertex " + std::to_string(v) + " outside range [0, " +
                                 std::to_string(universe_) + ")");
  }
  void same_universe(const VertexSet& o) const {
    if (o.universe_ != universe_) fail(ErrorKind::input, "vertex sets over different ranges");
  }
  void trim() {
    if (universe_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace trustgrow
