#pragma once

/**
 * @file dense_set.hpp
 * @brief Subsets of Z_p as flag arrays, and the set constructions built on
 *        them: sumsets and difference sets, iterated sumsets, slices
 *        A_s = A ∩ (A - s), dilates and product sets.
 *
 * A DenseSet is a value: every operation returns a new set and the flag
 * array is never mutated after construction.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "ntt.hpp"

namespace subsum {

using u64 = std::uint64_t;

enum class Sign { plus, minus };

class DenseSet {
 public:
  DenseSet() = default;

  /// Empty subset of Z_p.
  explicit DenseSet(u64 p) : p_(p), words_(word_count(p), 0) {
    if (p == 0) throw DomainError("DenseSet: modulus must be positive");
  }

  static DenseSet from_elements(u64 p, std::span<const u64> xs) {
    DenseSet s(p);
    for (u64 x : xs) {
      if (x >= p) throw DomainError("DenseSet: element " + std::to_string(x) + " outside [0, p)");
      s.words_[x >> 6] |= u64{1} << (x & 63);
    }
    s.recount();
    return s;
  }

  static DenseSet from_elements(u64 p, std::initializer_list<u64> xs) {
    return from_elements(p, std::span<const u64>(xs.begin(), xs.size()));
  }

  /// Takes ownership of a flag array; bits at positions >= p are cleared.
  static DenseSet from_words(u64 p, std::vector<u64> words) {
    DenseSet s;
    if (p == 0) throw DomainError("DenseSet: modulus must be positive");
    s.p_ = p;
    words.resize(word_count(p), 0);
    if (p & 63) words.back() &= (u64{1} << (p & 63)) - 1;
    s.words_ = std::move(words);
    s.recount();
    return s;
  }

  static DenseSet full(u64 p) {
    return from_words(p, std::vector<u64>(word_count(p), ~u64{0}));
  }

  /// F_p^* = {1, ..., p-1}.
  static DenseSet nonzero(u64 p) { return full(p).without(0); }

  u64 modulus() const { return p_; }
  std::size_t size() const { return card_; }
  bool empty() const { return card_ == 0; }
  bool contains(u64 x) const { return x < p_ && ((words_[x >> 6] >> (x & 63)) & 1); }
  std::span<const u64> words() const { return words_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      u64 bits = words_[w];
      while (bits) {
        f(static_cast<u64>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<u64> elements() const {
    std::vector<u64> out;
    out.reserve(card_);
    for_each([&](u64 x) { out.push_back(x); });
    return out;
  }

  std::optional<u64> min() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + std::countr_zero(words_[w]);
    return std::nullopt;
  }

  DenseSet with(u64 x) const { return toggled(x, true); }
  DenseSet without(u64 x) const { return toggled(x, false); }

  bool is_subset_of(const DenseSet& other) const {
    if (other.p_ != p_) return false;
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  bool operator==(const DenseSet&) const = default;

  static std::size_t word_count(u64 p) { return static_cast<std::size_t>((p + 63) / 64); }

 private:
  DenseSet toggled(u64 x, bool on) const {
    if (x >= p_) throw DomainError("DenseSet: element outside [0, p)");
    auto w = words_;
    if (on)
      w[x >> 6] |= u64{1} << (x & 63);
    else
      w[x >> 6] &= ~(u64{1} << (x & 63));
    return from_words(p_, std::move(w));
  }

  void recount() {
    card_ = 0;
    for (u64 w : words_) card_ += std::popcount(w);
  }

  u64 p_ = 0;
  std::vector<u64> words_;
  std::size_t card_ = 0;
};

namespace detail {

inline u64 extract_bits(std::span<const u64> src, u64 pos, unsigned n) {
  const std::size_t w = pos >> 6;
  const unsigned off = pos & 63;
  u64 v = src[w] >> off;
  if (off != 0 && w + 1 < src.size()) v |= src[w + 1] << (64 - off);
  return n == 64 ? v : v & ((u64{1} << n) - 1);
}

// dst[dst_begin + i] |= src[src_begin + i] for i in [0, len).
inline void or_range(std::vector<u64>& dst, u64 dst_begin, std::span<const u64> src, u64 src_begin,
                     u64 len) {
  while (len > 0) {
    const unsigned doff = dst_begin & 63;
    const unsigned take = static_cast<unsigned>(std::min<u64>(64 - doff, len));
    dst[dst_begin >> 6] |= extract_bits(src, src_begin, take) << doff;
    dst_begin += take;
    src_begin += take;
    len -= take;
  }
}

// dst |= (src translated by +shift) in Z_p.
inline void or_rotated(std::vector<u64>& dst, std::span<const u64> src, u64 p, u64 shift) {
  shift %= p;
  or_range(dst, shift, src, 0, p - shift);
  if (shift) or_range(dst, 0, src, p - shift, shift);
}

inline void require_same_modulus(const DenseSet& a, const DenseSet& b, const char* op) {
  if (a.modulus() != b.modulus())
    throw DomainError(std::string(op) + ": modulus mismatch (" + std::to_string(a.modulus()) +
                      " vs " + std::to_string(b.modulus()) + ")");
}

inline void require_nonempty(const DenseSet& a, const char* op) {
  if (a.empty()) throw DomainError(std::string(op) + ": empty operand");
}

}  // namespace detail

inline DenseSet set_union(const DenseSet& a, const DenseSet& b) {
  detail::require_same_modulus(a, b, "set_union");
  std::vector<u64> w(a.words().begin(), a.words().end());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= b.words()[i];
  return DenseSet::from_words(a.modulus(), std::move(w));
}

inline DenseSet set_intersection(const DenseSet& a, const DenseSet& b) {
  detail::require_same_modulus(a, b, "set_intersection");
  std::vector<u64> w(a.words().begin(), a.words().end());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= b.words()[i];
  return DenseSet::from_words(a.modulus(), std::move(w));
}

/// A + t = {a + t mod p}.
inline DenseSet translate(const DenseSet& a, u64 t) {
  std::vector<u64> w(a.words().size(), 0);
  detail::or_rotated(w, a.words(), a.modulus(), t % a.modulus());
  return DenseSet::from_words(a.modulus(), std::move(w));
}

/// -A = {-a mod p}.
inline DenseSet negate(const DenseSet& a) {
  const u64 p = a.modulus();
  std::vector<u64> w(a.words().size(), 0);
  a.for_each([&](u64 x) {
    const u64 y = x == 0 ? 0 : p - x;
    w[y >> 6] |= u64{1} << (y & 63);
  });
  return DenseSet::from_words(p, std::move(w));
}

namespace detail {

// Pair enumeration; for operands whose product of sizes is small against p.
inline DenseSet sumset_pairs(const DenseSet& a, const DenseSet& b) {
  const u64 p = a.modulus();
  const auto xs = a.elements();
  const auto ys = b.elements();
  std::vector<u64> w(DenseSet::word_count(p), 0);
  for (u64 x : xs)
    for (u64 y : ys) {
      u64 s = x + y;
      if (s >= p) s -= p;
      w[s >> 6] |= u64{1} << (s & 63);
    }
  return DenseSet::from_words(p, std::move(w));
}

// OR of translates of the larger operand, one per element of the smaller.
inline DenseSet sumset_shift_or(const DenseSet& a, const DenseSet& b) {
  const DenseSet& small = a.size() <= b.size() ? a : b;
  const DenseSet& large = a.size() <= b.size() ? b : a;
  std::vector<u64> w(DenseSet::word_count(a.modulus()), 0);
  small.for_each([&](u64 x) { detail::or_rotated(w, large.words(), a.modulus(), x); });
  return DenseSet::from_words(a.modulus(), std::move(w));
}

// Support of the exact convolution A * B computed by NTT.
inline DenseSet sumset_convolution(const DenseSet& a, const DenseSet& b) {
  const u64 p = a.modulus();
  // (A + B)(x) > 0  iff  sum_y (-A)(y) B(y + x) > 0.
  const DenseSet neg_a = negate(a);
  std::vector<u64> f(p, 0), g(p, 0);
  neg_a.for_each([&](u64 x) { f[x] = 1; });
  b.for_each([&](u64 x) { g[x] = 1; });
  const auto c = ntt::cyclic_correlation(f, g);
  std::vector<u64> w(DenseSet::word_count(p), 0);
  for (u64 x = 0; x < p; ++x)
    if (c[x]) w[x >> 6] |= u64{1} << (x & 63);
  return DenseSet::from_words(p, std::move(w));
}

// Above this operand size the convolution route is cheaper than shift-or.
inline double convolution_threshold(u64 p) {
  const double dp = static_cast<double>(p);
  return std::sqrt(dp * std::log2(std::max(dp, 2.0))) * 8.0;
}

}  // namespace detail

/// A + B or A - B in Z_p. Both operands must be nonempty and share p.
inline DenseSet sumset(const DenseSet& a, const DenseSet& b, Sign sign) {
  detail::require_same_modulus(a, b, "sumset");
  detail::require_nonempty(a, "sumset");
  detail::require_nonempty(b, "sumset");
  const DenseSet b_signed = sign == Sign::plus ? b : negate(b);
  const u64 p = a.modulus();
  const double small = static_cast<double>(std::min(a.size(), b.size()));
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) * 16.0 <= static_cast<double>(p))
    return detail::sumset_pairs(a, b_signed);
  if (small > detail::convolution_threshold(p) && p <= (u64{1} << 31))
    return detail::sumset_convolution(a, b_signed);
  return detail::sumset_shift_or(a, b_signed);
}

/// lA = A + ... + A (l summands).
inline DenseSet iterated_sumset(const DenseSet& a, int l) {
  if (l < 1) throw DomainError("iterated_sumset: l must be >= 1, got " + std::to_string(l));
  detail::require_nonempty(a, "iterated_sumset");
  DenseSet acc = a;
  for (int i = 1; i < l; ++i) acc = sumset(acc, a, Sign::plus);
  return acc;
}

/// A_s = A ∩ (A - s); its size is the number of representations of s as a
/// difference a' - a with a, a' in A.
inline DenseSet slice(const DenseSet& a, u64 s) {
  const u64 p = a.modulus();
  s %= p;
  std::vector<u64> w(a.words().size(), 0);
  detail::or_rotated(w, a.words(), p, (p - s) % p);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= a.words()[i];
  return DenseSet::from_words(p, std::move(w));
}

/// λA = {λa mod p}, λ != 0.
inline DenseSet dilate(const DenseSet& a, u64 lambda) {
  const u64 p = a.modulus();
  lambda %= p;
  if (lambda == 0) throw DomainError("dilate: λ must be nonzero mod p");
  std::vector<u64> w(a.words().size(), 0);
  a.for_each([&](u64 x) {
    const u64 y = static_cast<u64>(static_cast<unsigned __int128>(x) * lambda % p);
    w[y >> 6] |= u64{1} << (y & 63);
  });
  return DenseSet::from_words(p, std::move(w));
}

/// AB = {ab mod p}.
inline DenseSet product_set(const DenseSet& a, const DenseSet& b) {
  detail::require_same_modulus(a, b, "product_set");
  const u64 p = a.modulus();
  if (a.empty() || b.empty()) return DenseSet(p);
  const DenseSet& small = a.size() <= b.size() ? a : b;
  const DenseSet& large = a.size() <= b.size() ? b : a;
  DenseSet out(p);
  const DenseSet large_nz = large.without(0);
  if (small.contains(0) || large.contains(0)) out = out.with(0);
  std::vector<u64> w(out.words().begin(), out.words().end());
  small.for_each([&](u64 x) {
    if (x == 0 || large_nz.empty()) return;
    const DenseSet d = dilate(large_nz, x);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= d.words()[i];
  });
  return DenseSet::from_words(p, std::move(w));
}

}  // namespace subsum
