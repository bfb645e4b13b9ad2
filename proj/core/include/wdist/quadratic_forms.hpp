#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "wdist/cyclotomic.hpp"
#include "wdist/distribution.hpp"
#include "wdist/exponential_sums.hpp"
#include "wdist/finite_field.hpp"
#include "wdist/fp_matrix.hpp"

namespace wdist {

/// The pair (gamma, delta) naming the form Tr_d^n(gamma x^(p^k+1) + delta x^(p^(3k)+1)).
struct FormId {
  Element gamma;
  Element delta;
  bool is_zero() const { return gamma.is_zero() && delta.is_zero(); }
};

/// Rank class i = m and sign j of S(0, gamma, delta).
struct SignClass {
  std::uint32_t i = 0;
  int j = 1;
  friend auto operator<=>(const SignClass&, const SignClass&) = default;
};

struct RankReport {
  std::uint32_t m = 0;                   // kernel dimension over F_{p^d}
  std::uint32_t rank_over_subfield = 0;  // s - m
  std::uint32_t rank_over_prime = 0;     // n - d m
  std::optional<SignClass> sign_class;
};

/// L(z) = gamma z^(p^k) + gamma^(p^-k) z^(p^-k) + delta z^(p^3k) + delta^(p^-3k) z^(p^-3k).
Element linearized_eval(const CodeParams& params, const FieldCtx& ctx, const FormId& form, Element z);

/// Matrix of z -> L(z) in the coefficient basis (column j = L(alpha^j)).
FpMatrix linearized_matrix(const CodeParams& params, const FieldCtx& ctx, const FormId& form);

/// F_p basis of ker L.
std::vector<Element> kernel_basis(const CodeParams& params, const FieldCtx& ctx, const FormId& form);

/// m with |ker L| = p^(d m). Throws InvalidForm for (0, 0) and
/// NonDivisibleKernel if the F_p-dimension is not a multiple of d.
std::uint32_t kernel_dim_m(const CodeParams& params, const FieldCtx& ctx, const FormId& form);

/// Phi(x) = gamma x^(p^k+1) + delta x^(p^3k+1) - delta^(p^-k) x^(p^2k+p^-k) + delta^(p^-2k) x^(p^k+p^-2k).
/// Debug builds check Tr(Phi(x)) = Tr(gamma x^(p^k+1) + delta x^(p^3k+1)) and
/// Phi(x) + Phi(x)^(p^-k) = x L(x).
Element phi_eval(const CodeParams& params, const FieldCtx& ctx, const FormId& form, Element x);

RankReport rank_report(const CodeParams& params, const FieldCtx& ctx, const FormId& form, bool with_sign);

/// Counts of m over all (gamma, delta) != (0, 0).
DistributionTable<std::uint32_t> rank_distribution(const CodeParams& params, const FieldCtx& ctx,
                                                   const SweepOptions& options = {});

/// (i, j) from m and the classified S(0, gamma, delta). Throws
/// ClassificationMismatch if the class shape disagrees with m.
SignClass sign_classification(const CodeParams& params, const FieldCtx& ctx, const FormId& form,
                              const CyclotomicCounts& s0_counts);

DistributionTable<SignClass> sign_class_distribution(const CodeParams& params, const FieldCtx& ctx,
                                                     const SweepOptions& options = {});

/// Closed-form rank-class sizes keyed by m.
DistributionTable<std::uint32_t> closed_form_rank_distribution(const CodeParams& params);
/// Closed-form |R_{i,j}|.
DistributionTable<SignClass> closed_form_sign_classes(const CodeParams& params);
/// (p^(n-d) - 1)(p^n - 1) / (p^(2d) - 1), the number of pairs with m = 2.
BigInt closed_form_m2_count(const CodeParams& params);

struct RankDistributionReport {
  DistributionTable<std::uint32_t> observed;
  DistributionTable<std::uint32_t> expected;
  std::vector<Divergence<std::uint32_t>> divergences;
  bool pass() const { return divergences.empty(); }
};

RankDistributionReport verify_rank_distribution(const CodeParams& params, const FieldCtx& ctx,
                                                const SweepOptions& options = {});

}  // namespace wdist
