#pragma once

/**
 * @file field.hpp
 * @brief The prime field F_p with a fixed primitive root and discrete-log
 *        map, multiplicative subgroups R of F_p^*, and coset decompositions
 *        of R-invariant sets.
 */

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dense_set.hpp"
#include "errors.hpp"
#include "modular.hpp"

namespace subsum {

/// Immutable after construction; safe to share between threads.
class FieldContext {
 public:
  // Log tables are eager up to this modulus, baby-step/giant-step above it.
  static constexpr u64 kEagerLogLimit = u64{1} << 27;

  explicit FieldContext(u64 p) : p_(p) {
    if (!is_prime(p)) throw DomainError("FieldContext: " + std::to_string(p) + " is not prime");
    g_ = primitive_root(p);
    if (p <= kEagerLogLimit) {
      log_table_.assign(p, 0);
      u64 x = 1;
      for (u64 k = 0; k + 1 < p; ++k) {
        log_table_[x] = static_cast<std::uint32_t>(k);
        x = mul_mod(x, g_, p);
      }
    } else {
      baby_steps_ = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(p - 1))));
      u64 x = 1;
      for (u64 j = 0; j < baby_steps_; ++j) {
        baby_.emplace(x, j);
        x = mul_mod(x, g_, p);
      }
      giant_ = pow_mod(pow_mod(g_, baby_steps_, p), p - 2, p);  // g^{-m}
    }
  }

  static std::shared_ptr<const FieldContext> make(u64 p) {
    return std::make_shared<const FieldContext>(p);
  }

  u64 p() const { return p_; }
  u64 g() const { return g_; }
  bool has_log_table() const { return !log_table_.empty(); }

  /// ind(x): the k in [0, p-2] with g^k = x. x must be nonzero mod p.
  u64 log(u64 x) const {
    x %= p_;
    if (x == 0) throw DomainError("FieldContext::log: zero has no index");
    if (!log_table_.empty()) return log_table_[x];
    u64 y = x;
    for (u64 i = 0; i < baby_steps_; ++i) {
      if (auto it = baby_.find(y); it != baby_.end()) return (i * baby_steps_ + it->second) % (p_ - 1);
      y = mul_mod(y, giant_, p_);
    }
    throw DomainError("FieldContext::log: no index found");  // unreachable for prime p
  }

  u64 pow_g(u64 k) const { return pow_mod(g_, k, p_); }

 private:
  u64 p_;
  u64 g_ = 1;
  std::vector<std::uint32_t> log_table_;
  u64 baby_steps_ = 0;
  std::unordered_map<u64, u64> baby_;
  u64 giant_ = 1;
};

/// Multiplicative subgroup R of order d | p-1, generated by g^{(p-1)/d}.
class SubgroupDescriptor {
 public:
  SubgroupDescriptor(std::shared_ptr<const FieldContext> ctx, u64 d) : ctx_(std::move(ctx)), d_(d) {
    const u64 p = ctx_->p();
    if (d == 0 || (p - 1) % d != 0)
      throw DomainError("subgroup: d = " + std::to_string(d) + " does not divide p - 1 = " +
                        std::to_string(p - 1));
    generator_ = ctx_->pow_g((p - 1) / d);
    powers_.reserve(d);
    u64 x = 1;
    for (u64 k = 0; k < d; ++k) {
      powers_.push_back(x);
      x = mul_mod(x, generator_, p);
    }
    elements_ = DenseSet::from_elements(p, powers_);
  }

  const FieldContext& field() const { return *ctx_; }
  const std::shared_ptr<const FieldContext>& field_ptr() const { return ctx_; }
  u64 p() const { return ctx_->p(); }
  u64 order() const { return d_; }
  u64 generator() const { return generator_; }
  /// Number of cosets of R in F_p^*.
  u64 index() const { return (ctx_->p() - 1) / d_; }
  const DenseSet& elements() const { return elements_; }
  /// Elements in generator-power order: powers()[k] = generator^k.
  const std::vector<u64>& powers() const { return powers_; }
  bool contains(u64 x) const { return elements_.contains(x % ctx_->p()); }

  /// Coset index j of x != 0, meaning x ∈ g^j R, j in [0, index()).
  u64 coset_of(u64 x) const { return ctx_->log(x) % index(); }

 private:
  std::shared_ptr<const FieldContext> ctx_;
  u64 d_;
  u64 generator_ = 1;
  std::vector<u64> powers_;
  DenseSet elements_;
};

inline SubgroupDescriptor subgroup(std::shared_ptr<const FieldContext> ctx, u64 d) {
  return SubgroupDescriptor(std::move(ctx), d);
}

/// QR = Q. Checking one generator of R suffices.
inline bool is_R_invariant(const DenseSet& q, const SubgroupDescriptor& r) {
  if (q.modulus() != r.p()) return false;
  return dilate(q, r.generator()) == q;
}

/// Smallest element of each coset xR contained in Q, ascending.
inline std::vector<u64> coset_decomposition(const DenseSet& q, const SubgroupDescriptor& r) {
  if (q.modulus() != r.p()) throw DomainError("coset_decomposition: modulus mismatch");
  if (q.contains(0)) throw DomainError("coset_decomposition: 0 ∈ Q");
  const u64 p = r.p();
  std::vector<bool> covered(p, false);
  std::vector<u64> reps;
  q.for_each([&](u64 x) {
    if (covered[x]) return;
    reps.push_back(x);
    for (u64 y : r.powers()) {
      const u64 z = mul_mod(x, y, p);
      if (!q.contains(z))
        throw InvarianceError("coset_decomposition: Q is not R-invariant (" + std::to_string(x) +
                              "·" + std::to_string(y) + " ∉ Q)");
      covered[z] = true;
    }
  });
  return reps;
}

}  // namespace subsum
