#include "wdist/quadratic_forms.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "wdist/parallel.hpp"

namespace wdist {

Element linearized_eval(const CodeParams& params, const FieldCtx& ctx, const FormId& form, Element z) {
  const std::int64_t k = params.k;
  Element acc = ctx.zero();
  if (!form.gamma.is_zero()) {
    acc = ctx.add(acc, ctx.mul(form.gamma, ctx.frobenius(z, k)));
    acc = ctx.add(acc, ctx.mul(ctx.frobenius(form.gamma, -k), ctx.frobenius(z, -k)));
  }
  if (!form.delta.is_zero()) {
    acc = ctx.add(acc, ctx.mul(form.delta, ctx.frobenius(z, 3 * k)));
    acc = ctx.add(acc, ctx.mul(ctx.frobenius(form.delta, -3 * k), ctx.frobenius(z, -3 * k)));
  }
  return acc;
}

FpMatrix linearized_matrix(const CodeParams& params, const FieldCtx& ctx, const FormId& form) {
  const std::uint32_t n = params.n;
  FpMatrix m(params.p, n, n);
  const auto& pw = ctx.tables().powers_of_p;
  for (std::uint32_t j = 0; j < n; ++j) {
    const auto image = ctx.coeffs(linearized_eval(params, ctx, form, Element{pw[j]}));
    for (std::uint32_t i = 0; i < n; ++i) m.at(i, j) = image[i];
  }
  return m;
}

std::vector<Element> kernel_basis(const CodeParams& params, const FieldCtx& ctx, const FormId& form) {
  std::vector<Element> basis;
  for (const auto& v : linearized_matrix(params, ctx, form).null_space()) basis.push_back(ctx.from_coeffs(v));
  return basis;
}

std::uint32_t kernel_dim_m(const CodeParams& params, const FieldCtx& ctx, const FormId& form) {
  if (form.is_zero()) throw Error(ErrorCode::InvalidForm, "(gamma, delta) = (0, 0)");
  const std::uint32_t dim = params.n - linearized_matrix(params, ctx, form).rank();
  if (dim % params.d != 0) {
    throw Error(ErrorCode::NonDivisibleKernel,
                "kernel dimension " + std::to_string(dim) + " is not a multiple of d = " + std::to_string(params.d));
  }
  return dim / params.d;
}

Element phi_eval(const CodeParams& params, const FieldCtx& ctx, const FormId& form, Element x) {
  const std::int64_t k = params.k;
  auto mono = [&](std::int64_t a, std::int64_t b) { return ctx.mul(ctx.frobenius(x, a), ctx.frobenius(x, b)); };
  const Element& g = form.gamma;
  const Element& d = form.delta;
  Element phi = ctx.mul(g, mono(k, 0));
  phi = ctx.add(phi, ctx.mul(d, mono(3 * k, 0)));
  phi = ctx.sub(phi, ctx.mul(ctx.frobenius(d, -k), mono(2 * k, -k)));
  phi = ctx.add(phi, ctx.mul(ctx.frobenius(d, -2 * k), mono(k, -2 * k)));
#ifndef NDEBUG
  const Element q = ctx.add(ctx.mul(g, mono(k, 0)), ctx.mul(d, mono(3 * k, 0)));
  if (ctx.trace(phi) != ctx.trace(q)) throw Error(ErrorCode::Internal, "Tr(Phi(x)) != Tr(Q(x))");
  const Element lhs = ctx.add(phi, ctx.frobenius(phi, -k));
  if (lhs != ctx.mul(x, linearized_eval(params, ctx, form, x))) {
    throw Error(ErrorCode::Internal, "Phi(x) + Phi(x)^(p^-k) != x L(x)");
  }
#endif
  return phi;
}

SignClass sign_classification(const CodeParams& params, const FieldCtx& ctx, const FormId& form,
                              const CyclotomicCounts& s0_counts) {
  const std::uint32_t m = kernel_dim_m(params, ctx, form);
  const SumClass c = classify_sum(params, s0_counts);
  const bool gauss = m != 1 && params.d % 2 == 1;
  const SumKind want = gauss ? SumKind::Gauss : SumKind::Rational;
  if (c.kind != want || c.exponent2 != params.n + m * params.d || c.rho0 != 0) {
    throw Error(ErrorCode::ClassificationMismatch, "m = " + std::to_string(m) + " but S(0) is " + c.label());
  }
  return {m, c.sign};
}

RankReport rank_report(const CodeParams& params, const FieldCtx& ctx, const FormId& form, bool with_sign) {
  RankReport r;
  r.m = kernel_dim_m(params, ctx, form);
  r.rank_over_subfield = params.s - r.m;
  r.rank_over_prime = params.n - params.d * r.m;
  if (with_sign) {
    r.sign_class = sign_classification(params, ctx, form,
                                       exp_sum_counts(params, ctx, ctx.zero(), form.gamma, form.delta));
  }
  return r;
}

DistributionTable<std::uint32_t> rank_distribution(const CodeParams& params, const FieldCtx& ctx,
                                                   const SweepOptions& options) {
  const std::uint32_t q = ctx.size();
  auto states = parallel_tasks(
      q, options.threads, [] { return std::array<std::uint64_t, 3>{}; },
      [&](std::array<std::uint64_t, 3>& acc, std::size_t gi) {
        for (std::uint32_t di = 0; di < q; ++di) {
          if (gi == 0 && di == 0) continue;
          const std::uint32_t m = kernel_dim_m(params, ctx, {Element{static_cast<std::uint32_t>(gi)}, Element{di}});
          if (m > 2) throw Error(ErrorCode::Internal, "kernel dimension m = " + std::to_string(m) + " > 2");
          ++acc[m];
        }
      });
  DistributionTable<std::uint32_t> t;
  for (const auto& st : states) {
    for (std::uint32_t m = 0; m < 3; ++m) t.add(m, BigInt(st[m]));
  }
  return t;
}

DistributionTable<SignClass> sign_class_distribution(const CodeParams& params, const FieldCtx& ctx,
                                                     const SweepOptions& options) {
  const std::uint32_t p = params.p, q = ctx.size();
  FormEvaluator evaluator(params, ctx);
  struct Acc {
    std::array<std::uint64_t, 6> counts{};
    std::vector<std::uint8_t> values;
    CyclotomicCounts s0;
  };
  auto states = parallel_tasks(
      q, options.threads,
      [&] { return Acc{{}, std::vector<std::uint8_t>(q), CyclotomicCounts{std::vector<std::int64_t>(p, 0)}}; },
      [&](Acc& acc, std::size_t gi) {
        const Element gamma{static_cast<std::uint32_t>(gi)};
        for (std::uint32_t di = 0; di < q; ++di) {
          if (gi == 0 && di == 0) continue;
          evaluator.evaluate(gamma, Element{di}, acc.values);
          std::fill(acc.s0.counts.begin(), acc.s0.counts.end(), 0);
          for (auto v : acc.values) ++acc.s0.counts[v];
          const SignClass c = sign_classification(params, ctx, {gamma, Element{di}}, acc.s0);
          ++acc.counts[c.i * 2 + (c.j > 0 ? 1 : 0)];
        }
      });
  DistributionTable<SignClass> t;
  for (const auto& st : states) {
    for (std::uint32_t i = 0; i < 6; ++i) t.add({i / 2, i % 2 ? 1 : -1}, BigInt(st.counts[i]));
  }
  return t;
}

BigInt closed_form_m2_count(const CodeParams& params) {
  const std::uint32_t p = params.p, n = params.n, d = params.d;
  return exact_div((ipow(p, n - d) - 1) * (ipow(p, n) - 1), ipow(p, 2 * d) - 1);
}

DistributionTable<SignClass> closed_form_sign_classes(const CodeParams& params) {
  const std::uint32_t p = params.p, n = params.n, d = params.d;
  const BigInt qm1 = ipow(p, n) - 1;
  const BigInt den = 2 * (ipow(p, 2 * d) - 1);
  const BigInt r0 = exact_div((ipow(p, n + 2 * d) - ipow(p, n + d) - ipow(p, n) + ipow(p, 2 * d)) * qm1, den);
  const BigInt half = ipow(p, (n - d) / 2);
  const BigInt r1p = exact_div((ipow(p, n - d) + half) * qm1, 2);
  const BigInt r1m = exact_div((ipow(p, n - d) - half) * qm1, 2);
  const BigInt r2 = exact_div((ipow(p, n - d) - 1) * qm1, den);
  DistributionTable<SignClass> t;
  t.add({0, 1}, r0);
  t.add({0, -1}, r0);
  t.add({1, 1}, r1p);
  t.add({1, -1}, r1m);
  t.add({2, 1}, r2);
  t.add({2, -1}, r2);
  return t;
}

DistributionTable<std::uint32_t> closed_form_rank_distribution(const CodeParams& params) {
  const auto signs = closed_form_sign_classes(params);
  DistributionTable<std::uint32_t> t;
  for (std::uint32_t i = 0; i < 3; ++i) t.add(i, signs.frequency({i, 1}) + signs.frequency({i, -1}));
  return t;
}

RankDistributionReport verify_rank_distribution(const CodeParams& params, const FieldCtx& ctx,
                                                const SweepOptions& options) {
  RankDistributionReport r;
  r.observed = rank_distribution(params, ctx, options);
  r.expected = closed_form_rank_distribution(params);
  r.divergences = compare_tables(r.expected, r.observed);
  return r;
}

}  // namespace wdist
