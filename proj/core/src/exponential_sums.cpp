#include "wdist/exponential_sums.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "wdist/parallel.hpp"

namespace wdist {

std::string_view to_string(SumKind kind) {
  switch (kind) {
    case SumKind::Zero: return "zero";
    case SumKind::Full: return "full";
    case SumKind::Rational: return "rational";
    case SumKind::Gauss: return "gauss";
  }
  return "?";
}

std::string SumClass::label() const {
  switch (kind) {
    case SumKind::Zero: return "0";
    case SumKind::Full: return "p^n";
    case SumKind::Rational:
    case SumKind::Gauss: {
      std::string s = sign > 0 ? "+" : "-";
      if (kind == SumKind::Gauss) s += "G*";
      s += "p^" + std::to_string((kind == SumKind::Gauss ? exponent2 - 1 : exponent2) / 2);
      s += "*z^" + std::to_string(rho0);
      return s;
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------

FormEvaluator::FormEvaluator(const CodeParams& params, const FieldCtx& ctx) : params_(params), ctx_(ctx) {
  if (ctx.p() != params.p || ctx.n() != params.n) {
    throw Error(ErrorCode::InvalidArgument, "field does not match parameters");
  }
  const std::uint32_t q1 = ctx.group_order();
  const std::uint64_t e1 = (std::uint64_t{ctx.tables().frob_shift[params.k % params.n]} + 1) % q1;
  const std::uint64_t e3 = (std::uint64_t{ctx.tables().frob_shift[(3 * std::uint64_t{params.k}) % params.n]} + 1) % q1;
  log_u_.resize(q1);
  log_w_.resize(q1);
  trace_exp_.resize(q1);
  for (std::uint32_t j = 0; j < q1; ++j) {
    log_u_[j] = static_cast<std::uint32_t>(j * e1 % q1);
    log_w_[j] = static_cast<std::uint32_t>(j * e3 % q1);
    trace_exp_[j] = ctx.tables().trace[ctx.tables().exp[j]];
  }
}

void FormEvaluator::evaluate(Element gamma, Element delta, std::span<std::uint8_t> values) const {
  const auto& t = ctx_.tables();
  const std::uint32_t q1 = t.q1, p = t.p;
  values[0] = 0;
  // values indexed by element; iterate x = alpha^j.
  const bool g = !gamma.is_zero(), d = !delta.is_zero();
  const std::uint32_t lg = g ? t.log[gamma.index()] : 0;
  const std::uint32_t ld = d ? t.log[delta.index()] : 0;
  for (std::uint32_t j = 0; j < q1; ++j) {
    std::uint32_t v = 0;
    if (g) {
      std::uint32_t e = lg + log_u_[j];
      if (e >= q1) e -= q1;
      v += trace_exp_[e];
    }
    if (d) {
      std::uint32_t e = ld + log_w_[j];
      if (e >= q1) e -= q1;
      v += trace_exp_[e];
    }
    values[t.exp[j]] = static_cast<std::uint8_t>(v >= p ? v - p : v);
  }
}

CyclotomicCounts exp_sum_counts(const CodeParams& params, const FieldCtx& ctx, Element eps, Element gamma,
                                Element delta) {
  CyclotomicCounts out{std::vector<std::int64_t>(params.p, 0)};
  for (std::uint32_t i = 0; i < ctx.size(); ++i) {
    const Element x = ctx.element(i);
    const Element x_pk = ctx.frobenius(x, params.k);
    const Element x_p3k = ctx.frobenius(x, 3 * std::int64_t{params.k});
    Element v = ctx.mul(eps, x);
    v = ctx.add(v, ctx.mul(gamma, ctx.mul(x_pk, x)));
    v = ctx.add(v, ctx.mul(delta, ctx.mul(x_p3k, x)));
    ++out.counts[ctx.trace(v)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transform

std::uint64_t EpsilonTransform::memory_required(std::uint32_t p, std::uint32_t n) {
  const std::uint64_t q = upow(p, n);
  return q * p * 4 * 2 + q * 4 + q;
}

EpsilonTransform::EpsilonTransform(const FormEvaluator& evaluator, const TransformOptions& options)
    : evaluator_(&evaluator) {
  const FieldCtx& ctx = evaluator.field();
  p_ = ctx.p();
  n_ = ctx.n();
  q_ = ctx.size();
  const std::uint64_t need = memory_required(p_, n_);
  if (need > options.memory_cap_bytes) {
    throw Error(ErrorCode::MemoryCapExceeded, "transform needs " + std::to_string(need) + " bytes, cap is " +
                                                  std::to_string(options.memory_cap_bytes));
  }
  // Tr(eps x) = sum_j x_j Tr(eps alpha^j): the dual coordinates of eps.
  eps_to_dual_.resize(q_);
  const auto& pw = ctx.tables().powers_of_p;
  for (std::uint32_t e = 0; e < q_; ++e) {
    std::uint32_t y = 0;
    for (std::uint32_t j = 0; j < n_; ++j) y += ctx.trace(ctx.mul(Element{e}, Element{pw[j]})) * pw[j];
    eps_to_dual_[e] = y;
  }
  values_.resize(q_);
  cells_.resize(std::size_t{q_} * p_);
  result_.resize(std::size_t{q_} * p_);
}

namespace {

// One size-P pass along a coordinate with the given stride:
//   out[b][rho] = sum_a in[a][rho - a*b]
template <std::uint32_t P>
void transform_pass_fixed(std::uint32_t* cells, std::uint32_t q, std::uint32_t stride) {
  std::array<std::uint32_t, P * P> in{};
  const std::uint32_t block = stride * P;
  for (std::uint32_t base = 0; base < q; base += block) {
    for (std::uint32_t off = 0; off < stride; ++off) {
      std::uint32_t* line = cells + std::size_t{base + off} * P;
      for (std::uint32_t a = 0; a < P; ++a) {
        const std::uint32_t* src = line + std::size_t{a} * stride * P;
        for (std::uint32_t r = 0; r < P; ++r) in[a * P + r] = src[r];
      }
      for (std::uint32_t b = 0; b < P; ++b) {
        std::array<std::uint32_t, P> acc{};
        for (std::uint32_t a = 0; a < P; ++a) {
          const std::uint32_t shift = (a * b) % P;
          const std::uint32_t* v = &in[a * P];
          for (std::uint32_t r = 0; r < P; ++r) {
            std::uint32_t src = r + P - shift;
            if (src >= P) src -= P;
            acc[r] += v[src];
          }
        }
        std::uint32_t* dst = line + std::size_t{b} * stride * P;
        for (std::uint32_t r = 0; r < P; ++r) dst[r] = acc[r];
      }
    }
  }
}

void transform_pass_generic(std::uint32_t* cells, std::uint32_t q, std::uint32_t p, std::uint32_t stride) {
  std::vector<std::uint32_t> in(std::size_t{p} * p), acc(p);
  const std::uint32_t block = stride * p;
  for (std::uint32_t base = 0; base < q; base += block) {
    for (std::uint32_t off = 0; off < stride; ++off) {
      std::uint32_t* line = cells + std::size_t{base + off} * p;
      for (std::uint32_t a = 0; a < p; ++a) {
        const std::uint32_t* src = line + std::size_t{a} * stride * p;
        std::copy(src, src + p, in.begin() + std::size_t{a} * p);
      }
      for (std::uint32_t b = 0; b < p; ++b) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::uint32_t a = 0; a < p; ++a) {
          const std::uint32_t shift = static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
          for (std::uint32_t r = 0; r < p; ++r) acc[r] += in[std::size_t{a} * p + (r + p - shift) % p];
        }
        std::copy(acc.begin(), acc.end(), line + std::size_t{b} * stride * p);
      }
    }
  }
}

void transform_pass(std::uint32_t* cells, std::uint32_t q, std::uint32_t p, std::uint32_t stride) {
  switch (p) {
    case 3: transform_pass_fixed<3>(cells, q, stride); break;
    case 5: transform_pass_fixed<5>(cells, q, stride); break;
    case 7: transform_pass_fixed<7>(cells, q, stride); break;
    default: transform_pass_generic(cells, q, p, stride); break;
  }
}

}  // namespace

std::span<const std::uint32_t> EpsilonTransform::run(Element gamma, Element delta) {
  evaluator_->evaluate(gamma, delta, values_);
  // Channel t = 1 in unreduced count-vector form: cell x starts as zeta^Q(x).
  std::fill(cells_.begin(), cells_.end(), 0);
  for (std::uint32_t x = 0; x < q_; ++x) cells_[std::size_t{x} * p_ + values_[x]] = 1;
  std::uint32_t stride = 1;
  for (std::uint32_t i = 0; i < n_; ++i, stride *= p_) transform_pass(cells_.data(), q_, p_, stride);

  // cells_[y] now holds W(y) = sum_x zeta^(Q(x) + y.x). Reduce each W modulo
  // 1 + zeta + ... + zeta^(p-1), then recover the counts from all channels:
  //   N(rho) = (p^n + sum_{t != 0} zeta^(-t rho) sigma_t(W)) / p
  //          = (p^n + p w_rho - sum_r w_r) / p   for the reduced vector w.
  for (std::uint32_t e = 0; e < q_; ++e) {
    const std::uint32_t* w = &cells_[std::size_t{eps_to_dual_[e]} * p_];
    std::uint32_t lo = w[0];
    for (std::uint32_t r = 1; r < p_; ++r) lo = std::min(lo, w[r]);
    std::uint64_t sum = 0;
    for (std::uint32_t r = 0; r < p_; ++r) sum += w[r] - lo;
    const std::uint64_t base = std::uint64_t{q_} - sum;
    if (base % p_ != 0) throw Error(ErrorCode::NonIntegralCount, "channel sum not divisible by p");
    std::uint32_t* out = &result_[std::size_t{e} * p_];
    for (std::uint32_t r = 0; r < p_; ++r) {
      out[r] = static_cast<std::uint32_t>((base + std::uint64_t{p_} * (w[r] - lo)) / p_);
    }
  }
  return result_;
}

std::vector<CyclotomicCounts> batch_counts_over_epsilon(const CodeParams& params, const FieldCtx& ctx,
                                                        Element gamma, Element delta,
                                                        const TransformOptions& options) {
  FormEvaluator evaluator(params, ctx);
  EpsilonTransform transform(evaluator, options);
  auto table = transform.run(gamma, delta);
  std::vector<CyclotomicCounts> out(ctx.size());
  for (std::uint32_t e = 0; e < ctx.size(); ++e) {
    out[e].counts.assign(table.begin() + std::size_t{e} * params.p, table.begin() + std::size_t{e + 1} * params.p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification

std::int64_t magnitude_squared(const CyclotomicCounts& counts) {
  const std::uint32_t p = counts.p();
  std::vector<std::int64_t> c(p, 0);
  for (std::uint32_t t = 0; t < p; ++t) {
    for (std::uint32_t r = 0; r < p; ++r) c[t] += counts.counts[r] * counts.counts[(r + p - t) % p];
  }
  for (std::uint32_t t = 2; t < p; ++t) {
    if (c[t] != c[1]) throw Error(ErrorCode::NonRationalNorm, "autocorrelation is not constant off zero");
  }
  return c[0] - c[1];
}

namespace {

// Returns e with p^e = v, or -1.
int exact_log(std::int64_t v, std::uint32_t p) {
  if (v <= 0) return -1;
  int e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return v == 1 ? e : -1;
}

}  // namespace

SumClass classify_sum(const CodeParams& params, const CyclotomicCounts& counts) {
  const std::uint32_t p = params.p;
  const auto& c = counts.counts;
  const auto q = static_cast<std::int64_t>(upow(p, params.n));
  if (c.size() != p || counts.total() != q) {
    throw Error(ErrorCode::UnclassifiableCounts, "count vector does not describe a full-field sum");
  }
  if (std::all_of(c.begin(), c.end(), [&](std::int64_t v) { return v == c[0]; })) return SumClass::zero();
  if (c[0] == q) return SumClass::full();

  std::vector<SumClass> candidates;
  for (std::uint32_t r0 = 0; r0 < p; ++r0) {
    // v-pattern: spike at r0, flat elsewhere.
    const std::int64_t flat = c[(r0 + 1) % p];
    bool ok = true;
    for (std::uint32_t r = 0; r < p && ok; ++r) {
      if (r != r0 && c[r] != flat) ok = false;
    }
    if (ok && (c[r0] - flat) % p == 0) {
      const std::int64_t pb = c[r0] - flat;  // S = pB zeta^r0
      const int e = exact_log(pb < 0 ? -pb : pb, p);
      if (e >= 0 && pb != 0) candidates.push_back(SumClass::rational(pb > 0 ? 1 : -1, 2 * e, r0));
    }
    // eta-pattern: c[r] = A + B eta(r - r0).
    const std::int64_t a = c[r0];
    const std::int64_t b = c[(r0 + 1) % p] - a;
    ok = b != 0;
    for (std::uint32_t r = 0; r < p && ok; ++r) {
      if (c[r] != a + b * quadratic_character(p, std::int64_t{r} - r0)) ok = false;
    }
    if (ok) {
      const int e = exact_log(b < 0 ? -b : b, p);
      if (e >= 0) candidates.push_back(SumClass::gauss(b > 0 ? 1 : -1, 2 * e + 1, r0));
    }
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::UnclassifiableCounts, "counts match no value template");
  }
  const std::int64_t norm = magnitude_squared(counts);
  for (const auto& cand : candidates) {
    if (upow(p, cand.exponent2) == static_cast<std::uint64_t>(norm)) return cand;
  }
  throw Error(ErrorCode::UnclassifiableCounts, "template match inconsistent with |S|^2");
}

std::int64_t gauss_sum_square_check(std::uint32_t p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, "p must be an odd prime");
  const Cyclotomic g = Cyclotomic::gauss_sum(p);
  auto v = (g * g).rational_value();
  if (!v) throw Error(ErrorCode::NonRationalNorm, "G_p^2 is not rational");
  return *v;
}

// ---------------------------------------------------------------------------
// Sweeps

void MomentReport::require() const {
  if (first != expected_first) {
    throw Error(ErrorCode::MomentMismatch, "first moment " + first.str() + " != " + expected_first.str());
  }
  if (second != expected_second) {
    throw Error(ErrorCode::MomentMismatch, "second moment " + second.str() + " != " + expected_second.str());
  }
}

MomentReport moment_checks(const CodeParams& params, const FieldCtx& ctx, const SweepOptions& options) {
  const std::uint32_t p = params.p, q = ctx.size();
  if (4.0 * params.n * std::log2(static_cast<double>(p)) > 62.0) {
    throw Error(ErrorCode::BudgetExceeded, "second moment does not fit 64-bit accumulation");
  }
  FormEvaluator evaluator(params, ctx);
  struct Acc {
    std::vector<std::int64_t> first, second;
    std::vector<std::uint8_t> values;
    std::vector<std::int64_t> counts;
  };
  auto states = parallel_tasks(
      q, options.threads,
      [&] {
        return Acc{std::vector<std::int64_t>(p, 0), std::vector<std::int64_t>(p, 0), std::vector<std::uint8_t>(q),
                   std::vector<std::int64_t>(p, 0)};
      },
      [&](Acc& acc, std::size_t gi) {
        const Element gamma{static_cast<std::uint32_t>(gi)};
        for (std::uint32_t di = 0; di < q; ++di) {
          evaluator.evaluate(gamma, Element{di}, acc.values);
          std::fill(acc.counts.begin(), acc.counts.end(), 0);
          for (auto v : acc.values) ++acc.counts[v];
          for (std::uint32_t r = 0; r < p; ++r) {
            acc.first[r] += acc.counts[r];
            if (acc.counts[r] == 0) continue;
            for (std::uint32_t s = 0; s < p; ++s) {
              const std::uint32_t t = r + s >= p ? r + s - p : r + s;
              acc.second[t] += acc.counts[r] * acc.counts[s];
            }
          }
        }
      });
  Cyclotomic first(p), second(p);
  for (const auto& st : states) {
    first += Cyclotomic(st.first);
    second += Cyclotomic(st.second);
  }
  MomentReport report;
  auto f = first.rational_value();
  auto s = second.rational_value();
  if (!f || !s) throw Error(ErrorCode::MomentMismatch, "moment is not a rational integer");
  report.first = *f;
  report.second = *s;
  report.expected_first = ipow(p, 2 * params.n);
  const bool one_mod_four = upow(p, params.d) % 4 == 1;
  report.expected_second =
      one_mod_four ? ipow(p, 2 * params.n) * (2 * ipow(p, params.n) - 1) : ipow(p, 2 * params.n);
  return report;
}

namespace {

// Dense index for SumClass accumulation: [zero, full, then (kind, sign, e2, rho)].
struct ClassIndexer {
  std::uint32_t p, e2_max;
  std::size_t size() const { return 2 + std::size_t{2} * 2 * (e2_max + 1) * p; }
  std::size_t index(const SumClass& c) const {
    if (c.kind == SumKind::Zero) return 0;
    if (c.kind == SumKind::Full) return 1;
    const std::size_t k = c.kind == SumKind::Gauss ? 1 : 0;
    const std::size_t s = c.sign > 0 ? 1 : 0;
    return 2 + ((k * 2 + s) * (e2_max + 1) + c.exponent2) * p + c.rho0;
  }
  SumClass decode(std::size_t i) const {
    if (i == 0) return SumClass::zero();
    if (i == 1) return SumClass::full();
    i -= 2;
    const auto rho = static_cast<std::uint32_t>(i % p);
    i /= p;
    const auto e2 = static_cast<std::uint32_t>(i % (e2_max + 1));
    i /= (e2_max + 1);
    const int sign = (i % 2) ? 1 : -1;
    const bool gauss = i / 2 == 1;
    return gauss ? SumClass::gauss(sign, e2, rho) : SumClass::rational(sign, e2, rho);
  }
};

DistributionTable<SumClass> to_table(const ClassIndexer& ix, const std::vector<std::uint64_t>& dense) {
  DistributionTable<SumClass> t;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i]) t.add(ix.decode(i), BigInt(dense[i]));
  }
  return t;
}

}  // namespace

TripleSweepResult full_triple_sweep(const CodeParams& params, const FieldCtx& ctx, const SweepOptions& options,
                                    bool classify) {
  const std::uint32_t p = params.p, q = ctx.size();
  const ClassIndexer ix{p, 2 * params.n};
  FormEvaluator evaluator(params, ctx);
  struct Acc {
    EpsilonTransform transform;
    std::vector<std::uint64_t> weights;
    std::vector<std::uint64_t> classes;
    CyclotomicCounts scratch;
  };
  auto states = parallel_tasks(
      q, options.threads,
      [&] {
        return Acc{EpsilonTransform(evaluator, options.transform), std::vector<std::uint64_t>(q + 1, 0),
                   std::vector<std::uint64_t>(classify ? ix.size() : 0, 0),
                   CyclotomicCounts{std::vector<std::int64_t>(p, 0)}};
      },
      [&](Acc& acc, std::size_t gi) {
        const Element gamma{static_cast<std::uint32_t>(gi)};
        for (std::uint32_t di = 0; di < q; ++di) {
          auto table = acc.transform.run(gamma, Element{di});
          for (std::uint32_t e = 0; e < q; ++e) {
            const std::uint32_t* n = &table[std::size_t{e} * p];
            ++acc.weights[q - n[0]];
            if (!classify) continue;
            for (std::uint32_t r = 0; r < p; ++r) acc.scratch.counts[r] = n[r];
            ++acc.classes[ix.index(classify_sum(params, acc.scratch))];
          }
        }
      });
  TripleSweepResult result;
  result.weight_counts.assign(q + 1, 0);
  std::vector<std::uint64_t> classes(classify ? ix.size() : 0, 0);
  for (const auto& st : states) {
    for (std::size_t i = 0; i <= q; ++i) result.weight_counts[i] += st.weights[i];
    for (std::size_t i = 0; i < classes.size(); ++i) classes[i] += st.classes[i];
  }
  if (classify) result.classes = to_table(ix, classes);
  return result;
}

DistributionTable<SumClass> gamma_delta_class_histogram(const CodeParams& params, const FieldCtx& ctx,
                                                        const SweepOptions& options) {
  const std::uint32_t p = params.p, q = ctx.size();
  const ClassIndexer ix{p, 2 * params.n};
  FormEvaluator evaluator(params, ctx);
  struct Acc {
    std::vector<std::uint64_t> classes;
    std::vector<std::uint8_t> values;
    CyclotomicCounts counts;
  };
  auto states = parallel_tasks(
      q, options.threads,
      [&] {
        return Acc{std::vector<std::uint64_t>(ix.size(), 0), std::vector<std::uint8_t>(q),
                   CyclotomicCounts{std::vector<std::int64_t>(p, 0)}};
      },
      [&](Acc& acc, std::size_t gi) {
        for (std::uint32_t di = 0; di < q; ++di) {
          if (gi == 0 && di == 0) continue;
          evaluator.evaluate(Element{static_cast<std::uint32_t>(gi)}, Element{di}, acc.values);
          std::fill(acc.counts.counts.begin(), acc.counts.counts.end(), 0);
          for (auto v : acc.values) ++acc.counts.counts[v];
          ++acc.classes[ix.index(classify_sum(params, acc.counts))];
        }
      });
  std::vector<std::uint64_t> dense(ix.size(), 0);
  for (const auto& st : states) {
    for (std::size_t i = 0; i < dense.size(); ++i) dense[i] += st.classes[i];
  }
  return to_table(ix, dense);
}

void SumDistributionReport::require() const {
  if (divergences.empty()) return;
  const auto& d = divergences.front();
  throw Error(ErrorCode::DistributionMismatch, "class " + d.key.label() + ": expected " + d.expected.str() +
                                                   ", observed " + d.observed.str());
}

SumDistributionReport s_distribution(const CodeParams& params, const FieldCtx& ctx, SumSweep sweep,
                                     const SweepOptions& options) {
  SumDistributionReport report;
  report.sweep = sweep;
  if (sweep == SumSweep::GammaDeltaOnly) {
    report.observed = gamma_delta_class_histogram(params, ctx, options);
    report.expected = closed_form_gamma_delta_distribution(params);
  } else {
    report.observed = full_triple_sweep(params, ctx, options, true).classes;
    report.expected = closed_form_triple_distribution(params);
  }
  report.divergences = compare_tables(report.expected, report.observed);
  return report;
}

// ---------------------------------------------------------------------------
// Closed forms

BigInt pow_half(std::uint32_t p, std::int64_t exponent2) {
  if (exponent2 < 0 || exponent2 % 2 != 0) {
    throw Error(ErrorCode::NonIntegralFrequency, "p^(" + std::to_string(exponent2) + "/2) is not an integer");
  }
  return ipow(p, static_cast<unsigned>(exponent2 / 2));
}

BigInt exact_div(const BigInt& num, const BigInt& den) {
  if (den == 0 || num % den != 0) {
    throw Error(ErrorCode::NonIntegralFrequency, num.str() + " / " + den.str() + " is not exact");
  }
  return num / den;
}

namespace {

// p^e for integer e >= 0.
BigInt P(std::uint32_t p, std::int64_t e) { return pow_half(p, 2 * e); }

void add_checked(DistributionTable<SumClass>& t, const SumClass& c, const BigInt& f) {
  if (f < 0) throw Error(ErrorCode::NegativeFrequency, c.label() + " has frequency " + f.str());
  t.add(c, f);
}

struct RankClassSizes {
  BigInt r0_each, r1_plus, r1_minus, r2_each;
};

RankClassSizes rank_class_sizes(const CodeParams& prm) {
  const std::uint32_t p = prm.p;
  const std::int64_t n = prm.n, d = prm.d;
  const BigInt qm1 = P(p, n) - 1;
  const BigInt denom = 2 * (P(p, 2 * d) - 1);
  RankClassSizes r;
  r.r0_each = exact_div((P(p, n + 2 * d) - P(p, n + d) - P(p, n) + P(p, 2 * d)) * qm1, denom);
  r.r1_plus = exact_div((P(p, n - d) + pow_half(p, n - d)) * qm1, 2);
  r.r1_minus = exact_div((P(p, n - d) - pow_half(p, n - d)) * qm1, 2);
  r.r2_each = exact_div((P(p, n - d) - 1) * qm1, denom);
  return r;
}

}  // namespace

DistributionTable<SumClass> closed_form_gamma_delta_distribution(const CodeParams& prm) {
  const RankClassSizes r = rank_class_sizes(prm);
  const std::uint32_t n = prm.n, d = prm.d;
  const bool odd_d = d % 2 == 1;
  auto even_rank_class = [&](int sign, std::uint32_t e2) {
    return odd_d ? SumClass::gauss(sign, e2, 0) : SumClass::rational(sign, e2, 0);
  };
  DistributionTable<SumClass> t;
  add_checked(t, even_rank_class(1, n), r.r0_each);
  add_checked(t, even_rank_class(-1, n), r.r0_each);
  add_checked(t, SumClass::rational(1, n + d, 0), r.r1_plus);
  add_checked(t, SumClass::rational(-1, n + d, 0), r.r1_minus);
  add_checked(t, even_rank_class(1, n + 2 * d), r.r2_each);
  add_checked(t, even_rank_class(-1, n + 2 * d), r.r2_each);
  return t;
}

DistributionTable<SumClass> closed_form_triple_distribution(const CodeParams& prm) {
  const std::uint32_t p = prm.p;
  const std::int64_t n = prm.n, d = prm.d;
  const BigInt qm1 = P(p, n) - 1;
  const BigInt f0 = (P(p, n + 2 * d) - P(p, n + d) - P(p, n) + P(p, 2 * d)) * qm1;
  const BigInt f2 = (P(p, n - d) - 1) * qm1;
  const BigInt den2 = 2 * (P(p, 2 * d) - 1);

  DistributionTable<SumClass> t;
  add_checked(t, SumClass::full(), 1);
  add_checked(t, SumClass::zero(),
              qm1 * (P(p, 2 * n - d) - P(p, 2 * n - 2 * d) + P(p, 2 * n - 3 * d) - P(p, n - 2 * d) + 1));

  for (std::uint32_t rho = 0; rho < p; ++rho) {
    const int eta = quadratic_character(p, -static_cast<std::int64_t>(rho));
    const std::int64_t v = rho == 0 ? static_cast<std::int64_t>(p) - 1 : -1;
    // rank n - d (always even)
    const BigInt a1 = P(p, n - d - 1), b1 = v * pow_half(p, n - d - 2);
    add_checked(t, SumClass::rational(1, n + d, rho),
                exact_div((a1 + b1) * (P(p, n - d) + pow_half(p, n - d)) * qm1, 2));
    add_checked(t, SumClass::rational(-1, n + d, rho),
                exact_div((a1 - b1) * (P(p, n - d) - pow_half(p, n - d)) * qm1, 2));
    if (d % 2 == 1) {
      const BigInt a0 = P(p, n - 1), b0 = eta * pow_half(p, n - 1);
      add_checked(t, SumClass::gauss(1, n, rho), exact_div((a0 + b0) * f0, den2));
      add_checked(t, SumClass::gauss(-1, n, rho), exact_div((a0 - b0) * f0, den2));
      const BigInt a2 = P(p, n - 2 * d - 1), b2 = eta * pow_half(p, n - 2 * d - 1);
      add_checked(t, SumClass::gauss(1, n + 2 * d, rho), exact_div((a2 + b2) * f2, den2));
      add_checked(t, SumClass::gauss(-1, n + 2 * d, rho), exact_div((a2 - b2) * f2, den2));
    } else {
      const BigInt a0 = P(p, n - 1), b0 = v * pow_half(p, n - 2);
      add_checked(t, SumClass::rational(1, n, rho), exact_div((a0 + b0) * f0, den2));
      add_checked(t, SumClass::rational(-1, n, rho), exact_div((a0 - b0) * f0, den2));
      const BigInt a2 = P(p, n - 2 * d - 1), b2 = v * pow_half(p, n - 2 * d - 2);
      add_checked(t, SumClass::rational(1, n + 2 * d, rho), exact_div((a2 + b2) * f2, den2));
      add_checked(t, SumClass::rational(-1, n + 2 * d, rho), exact_div((a2 - b2) * f2, den2));
    }
  }
  return t;
}

}  // namespace wdist
