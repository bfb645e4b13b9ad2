#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wdist/error.hpp"

namespace wdist {

bool is_prime(std::uint64_t value);

/// Quadratic character of F_p with the convention eta(0) = 0.
int quadratic_character(std::uint64_t p, std::int64_t a);

/// Validated code parameters. Only constructible through validate_params.
struct CodeParams {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t d = 0;  // gcd(n, k)
  std::uint32_t s = 0;  // n / d
};

/// Enforces p odd prime, n >= 3, k >= 1 and s = n / gcd(n, k) odd.
CodeParams validate_params(std::int64_t p, std::int64_t n, std::int64_t k);

// Polynomials over F_p are coefficient vectors in ascending order.
using Polynomial = std::vector<std::uint32_t>;

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);
/// True iff the residue class of x has order p^deg - 1 modulo `monic`.
bool is_primitive_polynomial(std::uint32_t p, std::span<const std::uint32_t> monic);

/// "1,2,0,1" <-> {1,2,0,1} (ascending coefficients).
Polynomial parse_modulus(std::string_view text);
std::string format_modulus(std::span<const std::uint32_t> coeffs);

/// An element of GF(p^n), stored as its coefficient vector packed in base p:
/// index = sum c_i p^i. The packing is the canonical coefficient order.
class Element {
 public:
  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const { return index_; }
  constexpr bool is_zero() const { return index_ == 0; }

  friend constexpr auto operator<=>(Element, Element) = default;

 private:
  std::uint32_t index_ = 0;
};

struct FieldOptions {
  std::uint64_t table_cap = std::uint64_t{1} << 24;  // max p^n
};

/// Immutable description of GF(p^n) built on a primitive modulus. Copies are
/// cheap and share the tables; all operations are const and thread-safe.
class FieldCtx {
 public:
  struct Tables {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::uint32_t q = 0;        // p^n
    std::uint32_t q1 = 0;       // p^n - 1
    Polynomial modulus;         // monic, length n + 1
    std::vector<std::uint32_t> exp;    // exp[i] = alpha^i, i in [0, q - 1)
    std::vector<std::uint32_t> log;    // log[alpha^i] = i; log[0] unused
    std::vector<std::uint32_t> zech;   // zech[i] = log(1 + alpha^i), kNoLog if zero
    std::vector<std::uint8_t> trace;   // Tr_1^n by element index
    std::vector<std::uint32_t> frob_shift;  // p^j mod (q - 1), j in [0, n)
    std::vector<std::uint32_t> powers_of_p;  // p^i, i in [0, n]
    std::vector<std::vector<std::uint32_t>> frob_matrix;  // j -> n*n column-major over F_p
  };

  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  /// Builds GF(p^n). Without a modulus, the first primitive monic polynomial in
  /// lexicographic order of its ascending coefficient list is used.
  static FieldCtx make(std::int64_t p, std::int64_t n,
                       std::optional<Polynomial> modulus = std::nullopt,
                       const FieldOptions& options = {});

  std::uint32_t p() const { return t_->p; }
  std::uint32_t n() const { return t_->n; }
  std::uint32_t size() const { return t_->q; }
  std::uint32_t group_order() const { return t_->q1; }
  const Polynomial& modulus() const { return t_->modulus; }
  const Tables& tables() const { return *t_; }
  std::size_t table_bytes() const;

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }
  Element alpha() const { return Element{t_->exp[1 % t_->q1]}; }
  Element element(std::uint32_t index) const;
  Element from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Element x) const;
  Element from_int(std::int64_t a) const;  // image of a in the prime subfield

  Element exp(std::uint64_t e) const { return Element{t_->exp[e % t_->q1]}; }
  std::uint32_t log(Element x) const;

  Element add(Element a, Element b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::uint32_t la = t_->log[a.index()];
    const std::uint32_t lb = t_->log[b.index()];
    const std::uint32_t diff = lb >= la ? lb - la : lb + t_->q1 - la;
    const std::uint32_t z = t_->zech[diff];
    if (z == kNoLog) return Element{0};
    std::uint64_t e = std::uint64_t{la} + z;
    if (e >= t_->q1) e -= t_->q1;
    return Element{t_->exp[e]};
  }
  Element neg(Element a) const {
    if (a.is_zero()) return a;
    return exp(std::uint64_t{t_->log[a.index()]} + t_->q1 / 2);
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (a.is_zero() || b.is_zero()) return Element{0};
    std::uint64_t e = std::uint64_t{t_->log[a.index()]} + t_->log[b.index()];
    if (e >= t_->q1) e -= t_->q1;
    return Element{t_->exp[e]};
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  /// Coefficient-domain multiply with reduction by the modulus; independent of
  /// the exp/log tables.
  Element mul_schoolbook(Element a, Element b) const;
  /// Coefficient-wise addition mod p; independent of the Zech table.
  Element add_coeffwise(Element a, Element b) const;

  /// x^(p^j); j is reduced mod n, negative j allowed.
  Element frobenius(Element x, std::int64_t j) const {
    if (x.is_zero()) return x;
    const std::uint32_t jj = reduce_shift(j);
    const std::uint64_t e = std::uint64_t{t_->log[x.index()]} * t_->frob_shift[jj] % t_->q1;
    return Element{t_->exp[e]};
  }
  /// Same map through the precomputed F_p-linear Frobenius matrices.
  Element frobenius_linear(Element x, std::int64_t j) const;

  /// Tr_m^n(x); m must divide n. Result lies in the subfield F_{p^m}.
  Element trace_to(std::uint32_t m, Element x) const;
  /// Tr_1^n(x) as an integer in [0, p).
  std::uint32_t trace(Element x) const { return t_->trace[x.index()]; }

  /// True iff x^(p^m) = x.
  bool in_subfield(Element x, std::uint32_t m) const { return frobenius(x, m) == x; }

  std::uint32_t reduce_shift(std::int64_t j) const {
    const std::int64_t n = t_->n;
    return static_cast<std::uint32_t>(((j % n) + n) % n);
  }

 private:
  explicit FieldCtx(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  std::shared_ptr<const Tables> t_;
};

/// Persistent per-(p, n) modulus store. Files are small text records with a
/// versioned header; unreadable or mismatched records are ignored.
class ModulusCache {
 public:
  static constexpr std::string_view kHeader = "wdist-modulus-cache v1";

  explicit ModulusCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(std::uint32_t p, std::uint32_t n) const;
  std::optional<Polynomial> load(std::uint32_t p, std::uint32_t n) const;
  void store(std::uint32_t p, std::uint32_t n, std::span<const std::uint32_t> modulus) const;

 private:
  std::filesystem::path dir_;
};

/// make_field with the default modulus, consulting and filling the cache.
FieldCtx make_field_cached(std::int64_t p, std::int64_t n, const ModulusCache* cache,
                           const FieldOptions& options = {});

}  // namespace wdist
