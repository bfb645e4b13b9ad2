#include "wdist/weight_distribution.hpp"

#include <cmath>
#include <string>

#include "wdist/parallel.hpp"

namespace wdist {

std::uint64_t codeword_weight(const CodeParams& params, const FieldCtx& ctx, const CodewordId& id) {
  const auto counts = exp_sum_counts(params, ctx, id.epsilon, id.gamma, id.delta);
  return ctx.size() - static_cast<std::uint64_t>(counts.counts[0]);
}

std::vector<std::uint8_t> codeword(const CodeParams& params, const FieldCtx& ctx, const CodewordId& id) {
  const std::int64_t k = params.k;
  std::vector<std::uint8_t> out(ctx.group_order());
  for (std::uint32_t i = 0; i < ctx.group_order(); ++i) {
    const Element x = ctx.exp(i);
    Element v = ctx.mul(id.epsilon, x);
    v = ctx.add(v, ctx.mul(id.gamma, ctx.mul(ctx.frobenius(x, k), x)));
    v = ctx.add(v, ctx.mul(id.delta, ctx.mul(ctx.frobenius(x, 3 * k), x)));
    out[i] = static_cast<std::uint8_t>(ctx.trace(v));
  }
  return out;
}

namespace {

double ops_estimate(const CodeParams& params, WeightMethod method) {
  const double p = params.p, n = params.n;
  if (method == WeightMethod::Enumerate) return std::pow(p, 4 * n);
  if (method == WeightMethod::Transform) return n * std::pow(p, 3 * n + 2);
  return 0;
}

}  // namespace

bool within_budget(const CodeParams& params, WeightMethod method, const WeightBudget& budget) {
  const double ops = ops_estimate(params, method);
  if (method == WeightMethod::Enumerate) return ops <= static_cast<double>(budget.enumerate_max_ops);
  if (method == WeightMethod::Transform) return ops <= budget.transform_max_ops;
  return true;
}

WeightTable empirical_weight_distribution(const CodeParams& params, const FieldCtx& ctx, WeightMethod method,
                                          const SweepOptions& options, const WeightBudget& budget) {
  if (method == WeightMethod::Closed) {
    throw Error(ErrorCode::InvalidArgument, "closed is not an empirical method");
  }
  if (!within_budget(params, method, budget)) {
    throw Error(ErrorCode::BudgetExceeded, "weight sweep needs about " +
                                               std::to_string(ops_estimate(params, method)) + " operations");
  }
  const std::uint32_t q = ctx.size();
  std::vector<std::uint64_t> counts(q + 1, 0);
  if (method == WeightMethod::Transform) {
    counts = full_triple_sweep(params, ctx, options, false).weight_counts;
  } else {
    auto states = parallel_tasks(
        q, options.threads, [&] { return std::vector<std::uint64_t>(q + 1, 0); },
        [&](std::vector<std::uint64_t>& acc, std::size_t gi) {
          const Element gamma{static_cast<std::uint32_t>(gi)};
          for (std::uint32_t di = 0; di < q; ++di) {
            for (std::uint32_t ei = 0; ei < q; ++ei) {
              ++acc[codeword_weight(params, ctx, {Element{ei}, gamma, Element{di}})];
            }
          }
        });
    for (const auto& st : states) {
      for (std::size_t w = 0; w <= q; ++w) counts[w] += st[w];
    }
  }
  WeightTable t;
  for (std::uint64_t w = 0; w <= q; ++w) t.add(w, BigInt(counts[w]));
  return t;
}

namespace {

// p^e for integer e >= 0.
BigInt P(std::uint32_t p, std::int64_t e) { return pow_half(p, 2 * e); }

void add_row(WeightTable& t, const BigInt& weight, const BigInt& freq) {
  if (freq < 0) throw Error(ErrorCode::NegativeFrequency, "weight " + weight.str() + " has frequency " + freq.str());
  if (weight < 0) throw Error(ErrorCode::NegativeFrequency, "negative weight " + weight.str());
  t.add(weight.convert_to<std::uint64_t>(), freq);
}

}  // namespace

WeightTable closed_form_weight_distribution(const CodeParams& prm) {
  const std::uint32_t p = prm.p;
  const std::int64_t n = prm.n, d = prm.d;
  const BigInt qm1 = P(p, n) - 1;
  const BigInt base = (p - 1) * P(p, n - 1);
  const BigInt f0 = exact_div((P(p, n + 2 * d) - P(p, n + d) - P(p, n) + P(p, 2 * d)) * qm1, 2 * (P(p, 2 * d) - 1));
  const BigInt f2 = exact_div((P(p, n - d) - 1) * qm1, 2 * (P(p, 2 * d) - 1));
  const BigInt e = pow_half(p, n - d);
  const BigInt b = pow_half(p, n + d - 2), c = pow_half(p, n - d - 2);

  WeightTable t;
  add_row(t, 0, 1);
  // Rank n - d rows are common to both branches.
  auto rank1_rows = [&] {
    add_row(t, (p - 1) * (P(p, n - 1) - b), exact_div((P(p, n - d - 1) + (p - 1) * c) * (P(p, n - d) + e) * qm1, 2));
    add_row(t, (p - 1) * (P(p, n - 1) + b), exact_div((P(p, n - d - 1) - (p - 1) * c) * (P(p, n - d) - e) * qm1, 2));
    add_row(t, base - b, exact_div((p - 1) * (P(p, n - d - 1) + c) * (P(p, n - d) - e) * qm1, 2));
    add_row(t, base + b, exact_div((p - 1) * (P(p, n - d - 1) - c) * (P(p, n - d) + e) * qm1, 2));
  };

  if (d % 2 == 1) {
    add_row(t, base,
            qm1 * (P(p, 2 * n - 1) + (p - 1) * P(p, 2 * n - d - 1) - P(p, 2 * n - 2 * d) +
                   (p - 1) * P(p, 2 * n - 3 * d - 1) + P(p, n - 1) - (p - 1) * P(p, n - 2 * d - 1) + 1));
    const BigInt a = pow_half(p, n - 1);
    add_row(t, base - a, (p - 1) * (P(p, n - 1) + a) * f0);
    add_row(t, base + a, (p - 1) * (P(p, n - 1) - a) * f0);
    rank1_rows();
    const BigInt g = pow_half(p, n + 2 * d - 1), h = pow_half(p, n - 2 * d - 1);
    add_row(t, base - g, (p - 1) * (P(p, n - 2 * d - 1) + h) * f2);
    add_row(t, base + g, (p - 1) * (P(p, n - 2 * d - 1) - h) * f2);
  } else {
    add_row(t, base, qm1 * (P(p, 2 * n - d) - P(p, 2 * n - 2 * d) + P(p, 2 * n - 3 * d) - P(p, n - 2 * d) + 1));
    const BigInt a = pow_half(p, n - 2);
    add_row(t, (p - 1) * (P(p, n - 1) - a), (P(p, n - 1) + (p - 1) * a) * f0);
    add_row(t, (p - 1) * (P(p, n - 1) + a), (P(p, n - 1) - (p - 1) * a) * f0);
    add_row(t, base - a, (p - 1) * (P(p, n - 1) + a) * f0);
    add_row(t, base + a, (p - 1) * (P(p, n - 1) - a) * f0);
    rank1_rows();
    const BigInt g = pow_half(p, n + 2 * d - 2), h = pow_half(p, n - 2 * d - 2);
    add_row(t, (p - 1) * (P(p, n - 1) - g), (P(p, n - 2 * d - 1) + (p - 1) * h) * f2);
    add_row(t, (p - 1) * (P(p, n - 1) + g), (P(p, n - 2 * d - 1) - (p - 1) * h) * f2);
    add_row(t, base - g, (p - 1) * (P(p, n - 2 * d - 1) + h) * f2);
    add_row(t, base + g, (p - 1) * (P(p, n - 2 * d - 1) - h) * f2);
  }
  return t;
}

WeightInvariantReport check_weight_table_invariants(const CodeParams& params, const WeightTable& table) {
  const std::uint32_t p = params.p, n = params.n;
  WeightInvariantReport r;
  r.total = table.total();
  r.expected_total = ipow(p, 3 * n);
  r.zero_weight = table.frequency(0);
  r.first_moment = 0;
  for (const auto& [w, f] : table) r.first_moment += BigInt(w) * f;
  r.expected_first_moment = (ipow(p, n) - 1) * (p - 1) * ipow(p, 3 * n - 1);
  return r;
}

WeightVerification verify_weight_distribution(const CodeParams& params, const FieldCtx& ctx, WeightMethod method,
                                              const SweepOptions& options, const WeightBudget& budget) {
  WeightVerification v;
  v.method = method;
  v.closed = closed_form_weight_distribution(params);
  v.empirical = empirical_weight_distribution(params, ctx, method, options, budget);
  v.divergences = compare_tables(v.closed, v.empirical);
  return v;
}

}  // namespace wdist
