#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "wdist/bigint.hpp"
#include "wdist/cyclotomic.hpp"
#include "wdist/distribution.hpp"
#include "wdist/finite_field.hpp"

namespace wdist {

enum class SumKind : std::uint8_t { Zero, Full, Rational, Gauss };

/// Symbolic value of an exponential sum.
///   Rational: S = sign * p^(exponent2/2) * zeta^rho0          (exponent2 even)
///   Gauss:    S = sign * G_p * p^((exponent2-1)/2) * zeta^rho0 (exponent2 odd)
/// In both cases |S|^2 = p^exponent2. Zero and Full (S = p^n) carry no data.
struct SumClass {
  SumKind kind = SumKind::Zero;
  int sign = 0;
  std::uint32_t exponent2 = 0;
  std::uint32_t rho0 = 0;

  static SumClass zero() { return {}; }
  static SumClass full() { return {SumKind::Full, 0, 0, 0}; }
  static SumClass rational(int sign, std::uint32_t exponent2, std::uint32_t rho0) {
    return {SumKind::Rational, sign, exponent2, rho0};
  }
  static SumClass gauss(int sign, std::uint32_t exponent2, std::uint32_t rho0) {
    return {SumKind::Gauss, sign, exponent2, rho0};
  }

  // Canonical order: kind, magnitude, positive sign first, then rho0.
  friend std::strong_ordering operator<=>(const SumClass& a, const SumClass& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.exponent2 <=> b.exponent2; c != 0) return c;
    if (auto c = b.sign <=> a.sign; c != 0) return c;
    return a.rho0 <=> b.rho0;
  }
  friend bool operator==(const SumClass&, const SumClass&) = default;

  std::string label() const;
};

std::string_view to_string(SumKind kind);

// ---------------------------------------------------------------------------
// Evaluation

/// Q(x) = Tr_1^n(gamma x^(p^k+1) + delta x^(p^(3k)+1)) for every x, through
/// log tables. Immutable; share across threads.
class FormEvaluator {
 public:
  FormEvaluator(const CodeParams& params, const FieldCtx& ctx);

  /// values[x.index()] = Q(x) in [0, p).
  void evaluate(Element gamma, Element delta, std::span<std::uint8_t> values) const;

  const FieldCtx& field() const { return ctx_; }
  const CodeParams& params() const { return params_; }

 private:
  CodeParams params_;
  FieldCtx ctx_;
  std::vector<std::uint32_t> log_u_;      // log x^(p^k+1), x != 0
  std::vector<std::uint32_t> log_w_;      // log x^(p^(3k)+1), x != 0
  std::vector<std::uint8_t> trace_exp_;   // Tr(alpha^j)
};

/// Direct single pass over the field: counts[rho] = #{x : Tr(eps x + gamma
/// x^(p^k+1) + delta x^(p^(3k)+1)) = rho}. Uses only field arithmetic.
CyclotomicCounts exp_sum_counts(const CodeParams& params, const FieldCtx& ctx, Element eps,
                                Element gamma, Element delta);

struct TransformOptions {
  std::uint64_t memory_cap_bytes = std::uint64_t{1} << 30;
};

/// Computes N_eps(rho) for all eps at once for a fixed (gamma, delta) with n
/// size-p transform passes over F_p^n. One instance per thread.
class EpsilonTransform {
 public:
  EpsilonTransform(const FormEvaluator& evaluator, const TransformOptions& options = {});

  /// Returns a q*p row-major table: counts for eps with index e start at e*p.
  std::span<const std::uint32_t> run(Element gamma, Element delta);

  std::uint32_t p() const { return p_; }

  static std::uint64_t memory_required(std::uint32_t p, std::uint32_t n);

 private:
  const FormEvaluator* evaluator_;
  std::uint32_t p_, n_, q_;
  std::vector<std::uint32_t> eps_to_dual_;  // eps index -> y index with Tr(eps x) = y . x
  std::vector<std::uint8_t> values_;
  std::vector<std::uint32_t> cells_;   // q * p working grid
  std::vector<std::uint32_t> result_;  // q * p, indexed by eps
};

std::vector<CyclotomicCounts> batch_counts_over_epsilon(const CodeParams& params, const FieldCtx& ctx,
                                                        Element gamma, Element delta,
                                                        const TransformOptions& options = {});

/// |S|^2 as a rational integer, from the autocorrelation of the counts.
std::int64_t magnitude_squared(const CyclotomicCounts& counts);

SumClass classify_sum(const CodeParams& params, const CyclotomicCounts& counts);

/// G_p^2 computed in Z[zeta_p] and reduced to an integer.
std::int64_t gauss_sum_square_check(std::uint32_t p);

// ---------------------------------------------------------------------------
// Sweeps

struct SweepOptions {
  unsigned threads = 1;
  TransformOptions transform;
};

struct MomentReport {
  BigInt first;
  BigInt second;
  BigInt expected_first;
  BigInt expected_second;
  bool pass() const { return first == expected_first && second == expected_second; }
  void require() const;
};

/// First and second moments of S(0, gamma, delta) over all pairs, exact.
MomentReport moment_checks(const CodeParams& params, const FieldCtx& ctx, const SweepOptions& options = {});

enum class SumSweep { GammaDeltaOnly, Full };

struct SumDistributionReport {
  SumSweep sweep = SumSweep::GammaDeltaOnly;
  DistributionTable<SumClass> observed;
  DistributionTable<SumClass> expected;
  std::vector<Divergence<SumClass>> divergences;
  bool pass() const { return divergences.empty(); }
  void require() const;
};

/// Dense histogram of classes for every (eps, gamma, delta), plus the weight
/// histogram (weight = p^n - N(0)) gathered in the same pass.
struct TripleSweepResult {
  DistributionTable<SumClass> classes;
  std::vector<std::uint64_t> weight_counts;  // index = weight, size p^n + 1
};

TripleSweepResult full_triple_sweep(const CodeParams& params, const FieldCtx& ctx, const SweepOptions& options,
                                    bool classify);

/// S(0, gamma, delta) classes over (gamma, delta) != (0, 0).
DistributionTable<SumClass> gamma_delta_class_histogram(const CodeParams& params, const FieldCtx& ctx,
                                                        const SweepOptions& options = {});

SumDistributionReport s_distribution(const CodeParams& params, const FieldCtx& ctx, SumSweep sweep,
                                     const SweepOptions& options = {});

// ---------------------------------------------------------------------------
// Closed forms

/// Six-row distribution of S(0, gamma, delta), (gamma, delta) != (0, 0).
DistributionTable<SumClass> closed_form_gamma_delta_distribution(const CodeParams& params);
/// Distribution of S(eps, gamma, delta) over all triples.
DistributionTable<SumClass> closed_form_triple_distribution(const CodeParams& params);

/// p^(exponent2/2); throws NonIntegralFrequency if exponent2 is odd or negative.
BigInt pow_half(std::uint32_t p, std::int64_t exponent2);
/// num / den; throws NonIntegralFrequency unless exact.
BigInt exact_div(const BigInt& num, const BigInt& den);

}  // namespace wdist
