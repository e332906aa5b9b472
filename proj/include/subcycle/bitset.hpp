#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "subcycle/errors.hpp"

namespace subcycle {

/// Fixed-universe bitset used for every set handed to a cost oracle.
/// Universes are dense integer ids (vertices, edges, colors, family
/// elements), all small at the scales this library targets.
class Bitset {
 public:
  Bitset() = default;

  explicit Bitset(int universe_size)
      : size_(universe_size), words_((universe_size + 63) / 64, 0) {
    if (universe_size < 0) throw InputError("bitset universe must be nonnegative");
  }

  static Bitset of(int universe_size, std::initializer_list<int> elems) {
    Bitset b(universe_size);
    for (int e : elems) b.set(e);
    return b;
  }

  static Bitset of(int universe_size, const std::vector<int>& elems) {
    Bitset b(universe_size);
    for (int e : elems) b.set(e);
    return b;
  }

  static Bitset full(int universe_size) {
    Bitset b(universe_size);
    for (int i = 0; i < universe_size; ++i) b.set(i);
    return b;
  }

  int universe_size() const { return size_; }

  bool test(int i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(int i) {
    check_index(i);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(int i) {
    check_index(i);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (std::uint64_t w : words_)
      if (w != 0) return false;
    return true;
  }

  Bitset& operator|=(const Bitset& o) {
    check_same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  Bitset& operator&=(const Bitset& o) {
    check_same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

  bool operator==(const Bitset& o) const {
    return size_ == o.size_ && words_ == o.words_;
  }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  bool is_subset_of(const Bitset& o) const {
    check_same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const Bitset& o) const {
    check_same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  /// Ascending iteration over the set elements.
  template <typename F>
  void for_each(F f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        int bit = std::countr_zero(w);
        f(static_cast<int>(wi * 64) + bit);
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    // FNV-1a over the words plus the universe size.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    };
    mix(static_cast<std::uint64_t>(size_));
    for (std::uint64_t w : words_) mix(w);
    return static_cast<std::size_t>(h);
  }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int i) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    });
    return s + "}";
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= size_)
      throw InputError("bitset element " + std::to_string(i) +
                       " out of universe [0," + std::to_string(size_) + ")");
  }
  void check_same_universe(const Bitset& o) const {
    if (size_ != o.size_) throw InternalError("bitset universe mismatch");
  }

  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace subcycle
