#pragma once

#include <cstdint>
#include <vector>

#include "wdist/distribution.hpp"
#include "wdist/exponential_sums.hpp"
#include "wdist/finite_field.hpp"

namespace wdist {

using WeightTable = DistributionTable<std::uint64_t>;

/// Codeword c(eps, gamma, delta) = (Tr(eps x + gamma x^(p^k+1) + delta x^(p^(3k)+1)))_{x != 0}.
struct CodewordId {
  Element epsilon;
  Element gamma;
  Element delta;
};

/// p^n - N(0).
std::uint64_t codeword_weight(const CodeParams& params, const FieldCtx& ctx, const CodewordId& id);

/// Symbols of the codeword for x = alpha^0, alpha^1, ..., alpha^(p^n - 2).
std::vector<std::uint8_t> codeword(const CodeParams& params, const FieldCtx& ctx, const CodewordId& id);

enum class WeightMethod { Enumerate, Transform, Closed };

struct WeightBudget {
  std::uint64_t enumerate_max_ops = std::uint64_t{1} << 28;  // p^(4n)
  double transform_max_ops = 1e11;                           // n p^(3n+2)
};

/// Enumerate: exp_sum_counts for every triple. Transform: one epsilon transform
/// per (gamma, delta). Throws BudgetExceeded if the sweep exceeds the budget.
WeightTable empirical_weight_distribution(const CodeParams& params, const FieldCtx& ctx, WeightMethod method,
                                          const SweepOptions& options = {}, const WeightBudget& budget = {});

bool within_budget(const CodeParams& params, WeightMethod method, const WeightBudget& budget = {});

/// Instantiates the odd-d or even-d weight formulas, merging equal weights.
/// Rows with frequency zero are omitted.
WeightTable closed_form_weight_distribution(const CodeParams& params);

struct WeightInvariantReport {
  BigInt total;
  BigInt expected_total;
  BigInt zero_weight;
  BigInt first_moment;
  BigInt expected_first_moment;
  bool pass() const { return total == expected_total && zero_weight == 1 && first_moment == expected_first_moment; }
};

WeightInvariantReport check_weight_table_invariants(const CodeParams& params, const WeightTable& table);

struct WeightVerification {
  WeightTable closed;
  WeightTable empirical;
  WeightMethod method = WeightMethod::Enumerate;
  std::vector<Divergence<std::uint64_t>> divergences;
  bool pass() const { return divergences.empty(); }
};

/// Compares the closed form against an empirical method (Transform unless the
/// caller asks for Enumerate).
WeightVerification verify_weight_distribution(const CodeParams& params, const FieldCtx& ctx,
                                              WeightMethod method = WeightMethod::Transform,
                                              const SweepOptions& options = {}, const WeightBudget& budget = {});

}  // namespace wdist
