#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace wdist {

/// Element of Z[zeta_p] as an integer vector sum_r c[r] zeta^r. Vectors that
/// differ by a constant represent the same element (1 + zeta + ... = 0); the
/// relation is only applied when comparing or extracting a rational value.
class Cyclotomic {
 public:
  explicit Cyclotomic(std::uint32_t p) : c_(p, 0) {}
  explicit Cyclotomic(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) {}

  static Cyclotomic rational(std::uint32_t p, std::int64_t value);
  static Cyclotomic zeta_power(std::uint32_t p, std::int64_t r);
  /// G_p = sum_{r=1}^{p-1} eta(r) zeta^r.
  static Cyclotomic gauss_sum(std::uint32_t p);

  std::uint32_t p() const { return static_cast<std::uint32_t>(c_.size()); }
  std::span<const std::int64_t> coeffs() const { return c_; }
  std::int64_t operator[](std::size_t r) const { return c_[r]; }

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(std::int64_t k);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, std::int64_t k) { return a *= k; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);

  /// Multiplication by zeta^r.
  Cyclotomic rotated(std::int64_t r) const;
  /// The automorphism zeta -> zeta^t, t coprime to p.
  Cyclotomic galois(std::int64_t t) const;
  /// Canonical representative: minimum coefficient shifted to 0.
  Cyclotomic reduced() const;
  /// The rational integer this element equals, if it lies in Z.
  std::optional<std::int64_t> rational_value() const;

  /// Equality in Z[zeta_p].
  bool equals(const Cyclotomic& o) const;

 private:
  std::vector<std::int64_t> c_;
};

/// Solution counts N(0..p-1) of Tr(...) = rho, summing to p^n; represents
/// S = sum_rho N(rho) zeta^rho exactly.
struct CyclotomicCounts {
  std::vector<std::int64_t> counts;

  std::uint32_t p() const { return static_cast<std::uint32_t>(counts.size()); }
  std::int64_t total() const;
  Cyclotomic value() const { return Cyclotomic(counts); }

  friend bool operator==(const CyclotomicCounts&, const CyclotomicCounts&) = default;
};

}  // namespace wdist
