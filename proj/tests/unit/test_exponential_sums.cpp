#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "oracle.hpp"
#include "wdist/exponential_sums.hpp"

using namespace wdist;

namespace {

struct Setup {
  CodeParams params;
  FieldCtx ctx;
};

Setup setup(std::uint32_t p, std::uint32_t n, std::uint32_t k) {
  const auto params = validate_params(p, n, k);
  return {params, FieldCtx::make(p, n)};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::Internal;
}

std::complex<double> zeta(std::uint32_t p, std::int64_t r) {
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(r) / p);
}

std::complex<double> numeric_value(const CyclotomicCounts& c) {
  std::complex<double> s = 0;
  for (std::uint32_t r = 0; r < c.p(); ++r) s += double(c.counts[r]) * zeta(c.p(), r);
  return s;
}

// The complex number a SumClass claims S equals.
std::complex<double> class_value(std::uint32_t p, std::uint32_t n, const SumClass& c) {
  switch (c.kind) {
    case SumKind::Zero: return 0;
    case SumKind::Full: return std::pow(double(p), n);
    case SumKind::Rational: return double(c.sign) * std::pow(double(p), c.exponent2 / 2.0) * zeta(p, c.rho0);
    case SumKind::Gauss: {
      std::complex<double> g = 0;
      for (std::uint32_t r = 1; r < p; ++r) g += double(quadratic_character(p, r)) * zeta(p, r);
      return double(c.sign) * g * std::pow(double(p), (c.exponent2 - 1) / 2.0) * zeta(p, c.rho0);
    }
  }
  return 0;
}

void check_class_value(std::uint32_t p, std::uint32_t n, const CyclotomicCounts& counts, const SumClass& c) {
  const auto s = numeric_value(counts);
  const auto v = class_value(p, n, c);
  CHECK(std::abs(s - v) < 1e-6 * (1 + std::abs(s)));
}

}  // namespace

TEST_CASE("exp_sum_counts basic values") {
  auto [params, ctx] = setup(3, 3, 1);
  CHECK(exp_sum_counts(params, ctx, ctx.zero(), ctx.zero(), ctx.zero()).counts == std::vector<std::int64_t>{27, 0, 0});
  for (std::uint32_t e = 1; e < 27; ++e) {
    CHECK(exp_sum_counts(params, ctx, Element{e}, ctx.zero(), ctx.zero()).counts ==
          std::vector<std::int64_t>{9, 9, 9});
  }
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> pick(0, 26);
  for (int t = 0; t < 100; ++t) {
    CHECK(exp_sum_counts(params, ctx, Element{pick(rng)}, Element{pick(rng)}, Element{pick(rng)}).total() == 27);
  }
}

TEST_CASE("exp_sum_counts agrees with polynomial-arithmetic oracle") {
  std::mt19937_64 rng(11);
  for (auto [p, n, k] : {std::tuple{3u, 3u, 1u}, {5u, 3u, 1u}, {3u, 5u, 2u}, {3u, 6u, 2u}}) {
    auto [params, ctx] = setup(p, n, k);
    oracle::Field of(p, n, ctx.modulus());
    std::uniform_int_distribution<std::uint32_t> pick(0, ctx.size() - 1);
    for (int t = 0; t < 20; ++t) {
      const std::uint32_t e = pick(rng), g = pick(rng), d = pick(rng);
      CHECK(exp_sum_counts(params, ctx, Element{e}, Element{g}, Element{d}).counts ==
            oracle::counts(of, k, of.from_index(e), of.from_index(g), of.from_index(d)));
    }
  }
}

TEST_CASE("FormEvaluator matches exp_sum_counts at eps = 0") {
  auto [params, ctx] = setup(5, 3, 1);
  FormEvaluator ev(params, ctx);
  std::vector<std::uint8_t> values(ctx.size());
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::uint32_t> pick(0, ctx.size() - 1);
  for (int t = 0; t < 50; ++t) {
    const Element g{pick(rng)}, d{pick(rng)};
    ev.evaluate(g, d, values);
    std::vector<std::int64_t> c(5, 0);
    for (auto v : values) ++c[v];
    CHECK(c == exp_sum_counts(params, ctx, ctx.zero(), g, d).counts);
  }
}

TEST_CASE("epsilon transform agrees with direct counts") {
  {
    auto [params, ctx] = setup(3, 3, 1);
    for (std::uint32_t g = 0; g < 27; ++g) {
      for (std::uint32_t d = 0; d < 27; ++d) {
        const auto batch = batch_counts_over_epsilon(params, ctx, Element{g}, Element{d});
        REQUIRE(batch.size() == 27);
        for (std::uint32_t e = 0; e < 27; ++e) {
          REQUIRE(batch[e] == exp_sum_counts(params, ctx, Element{e}, Element{g}, Element{d}));
          REQUIRE(batch[e].total() == 27);
        }
      }
    }
  }
  std::mt19937_64 rng(8);
  // p = 5, 7 use the unrolled passes; p = 11 and 13 the generic one.
  for (auto [p, n, k] : {std::tuple{5u, 3u, 1u}, {7u, 3u, 1u}, {11u, 3u, 1u}, {13u, 3u, 1u}, {3u, 5u, 1u},
                         {3u, 6u, 2u}}) {
    CAPTURE(p);
    auto [params, ctx] = setup(p, n, k);
    std::uniform_int_distribution<std::uint32_t> pick(0, ctx.size() - 1);
    for (int t = 0; t < 3; ++t) {
      const Element g{pick(rng)}, d{pick(rng)};
      const auto batch = batch_counts_over_epsilon(params, ctx, g, d);
      for (std::uint32_t e = 0; e < ctx.size(); ++e) {
        REQUIRE(batch[e] == exp_sum_counts(params, ctx, Element{e}, g, d));
      }
    }
  }
}

TEST_CASE("epsilon transform at (gamma, delta) = (0, 0)") {
  auto [params, ctx] = setup(5, 3, 1);
  const auto batch = batch_counts_over_epsilon(params, ctx, ctx.zero(), ctx.zero());
  CHECK(batch[0].counts == std::vector<std::int64_t>{125, 0, 0, 0, 0});
  for (std::uint32_t e = 1; e < ctx.size(); ++e) CHECK(batch[e].counts == std::vector<std::int64_t>(5, 25));
}

TEST_CASE("epsilon transform memory cap") {
  auto [params, ctx] = setup(3, 5, 1);
  TransformOptions tiny;
  tiny.memory_cap_bytes = 1000;
  CHECK(code_of([&] { batch_counts_over_epsilon(params, ctx, ctx.one(), ctx.zero(), tiny); }) ==
        ErrorCode::MemoryCapExceeded);
}

TEST_CASE("magnitude_squared") {
  CHECK(magnitude_squared({{27, 0, 0}}) == 729);
  CHECK(magnitude_squared({{9, 9, 9}}) == 0);
  CHECK(code_of([] { magnitude_squared({{1, 1, 0, 0, 0}}); }) == ErrorCode::NonRationalNorm);
  auto [params, ctx] = setup(3, 3, 1);
  for (std::uint32_t g = 1; g < 27; ++g) {
    CHECK(magnitude_squared(exp_sum_counts(params, ctx, ctx.zero(), Element{g}, ctx.zero())) == 27);
  }
}

TEST_CASE("classify_sum templates") {
  auto [params, ctx] = setup(3, 3, 1);
  CHECK(classify_sum(params, {{27, 0, 0}}) == SumClass::full());
  CHECK(classify_sum(params, {{9, 9, 9}}) == SumClass::zero());
  CHECK(code_of([&] { classify_sum(params, {{11, 9, 7}}); }) == ErrorCode::UnclassifiableCounts);
  CHECK(code_of([&] { classify_sum(params, {{10, 9, 9}}); }) == ErrorCode::UnclassifiableCounts);
  for (std::uint32_t g = 1; g < 27; ++g) {
    const auto counts = exp_sum_counts(params, ctx, ctx.zero(), Element{g}, ctx.zero());
    const auto c = classify_sum(params, counts);
    CHECK(c.kind == SumKind::Gauss);
    CHECK(c.exponent2 == 3);
    check_class_value(3, 3, counts, c);
  }
}

TEST_CASE("every sum at (3,3,1) classifies to its numeric value with an allowed magnitude") {
  auto [params, ctx] = setup(3, 3, 1);
  const std::set<std::int64_t> allowed{0, 27, 81, 243};
  for (std::uint32_t g = 0; g < 27; ++g) {
    for (std::uint32_t d = 0; d < 27; ++d) {
      for (std::uint32_t e = 0; e < 27; ++e) {
        const auto counts = exp_sum_counts(params, ctx, Element{e}, Element{g}, Element{d});
        const auto m2 = magnitude_squared(counts);
        if (e == 0 && g == 0 && d == 0) {
          REQUIRE(m2 == 729);
        } else {
          REQUIRE(allowed.count(m2) == 1);
        }
        const auto c = classify_sum(params, counts);
        check_class_value(3, 3, counts, c);
      }
    }
  }
}

TEST_CASE("magnitudes at other parameters") {
  std::mt19937_64 rng(21);
  for (auto [p, n, k] : {std::tuple{5u, 3u, 1u}, {3u, 5u, 1u}, {3u, 6u, 2u}, {7u, 3u, 1u}}) {
    auto [params, ctx] = setup(p, n, k);
    const std::int64_t d = params.d;
    const std::set<std::int64_t> allowed{0, (std::int64_t)upow(p, n), (std::int64_t)upow(p, n + d),
                                         (std::int64_t)upow(p, n + 2 * d)};
    std::uniform_int_distribution<std::uint32_t> pick(1, ctx.size() - 1);
    for (int t = 0; t < 200; ++t) {
      const auto counts = exp_sum_counts(params, ctx, Element{pick(rng)}, Element{pick(rng)}, Element{pick(rng)});
      REQUIRE(allowed.count(magnitude_squared(counts)) == 1);
      check_class_value(p, n, counts, classify_sum(params, counts));
    }
  }
}

TEST_CASE("Galois conjugate triples share kind and magnitude") {
  std::mt19937_64 rng(31);
  for (auto [p, n, k] : {std::tuple{5u, 3u, 1u}, {7u, 3u, 1u}, {3u, 6u, 2u}}) {
    auto [params, ctx] = setup(p, n, k);
    std::uniform_int_distribution<std::uint32_t> pick(0, ctx.size() - 1);
    for (int s = 0; s < 50; ++s) {
      const Element e{pick(rng)}, g{pick(rng)}, d{pick(rng)};
      const auto base = classify_sum(params, exp_sum_counts(params, ctx, e, g, d));
      for (std::uint32_t t = 2; t < p; ++t) {
        const Element tt = ctx.from_int(t);
        const auto c = classify_sum(params, exp_sum_counts(params, ctx, ctx.mul(tt, e), ctx.mul(tt, g), ctx.mul(tt, d)));
        CHECK(c.kind == base.kind);
        CHECK(c.exponent2 == base.exponent2);
      }
    }
  }
}

TEST_CASE("bentness for delta = 0") {
  auto [params, ctx] = setup(3, 3, 1);
  for (std::uint32_t g = 1; g < 27; ++g) {
    for (std::uint32_t e = 0; e < 27; ++e) {
      REQUIRE(magnitude_squared(exp_sum_counts(params, ctx, Element{e}, Element{g}, ctx.zero())) == 27);
    }
  }
}

TEST_CASE("moments") {
  {
    auto [params, ctx] = setup(3, 3, 1);
    const auto r = moment_checks(params, ctx);
    CHECK(r.first == 729);
    CHECK(r.second == 729);
    CHECK(r.pass());
  }
  {
    auto [params, ctx] = setup(5, 3, 1);
    const auto r = moment_checks(params, ctx, {2, {}});
    CHECK(r.first == 15625);
    CHECK(r.second == BigInt(15625) * (2 * 125 - 1));
    CHECK(r.pass());
  }
}

TEST_CASE("closed-form sum distributions") {
  {
    const auto params = validate_params(3, 3, 1);
    const auto t = closed_form_gamma_delta_distribution(params);
    CHECK(t.frequency(SumClass::gauss(1, 3, 0)) == 234);
    CHECK(t.frequency(SumClass::gauss(-1, 3, 0)) == 234);
    CHECK(t.frequency(SumClass::rational(1, 4, 0)) == 156);
    CHECK(t.frequency(SumClass::rational(-1, 4, 0)) == 78);
    CHECK(t.frequency(SumClass::gauss(1, 5, 0)) == 13);
    CHECK(t.frequency(SumClass::gauss(-1, 5, 0)) == 13);
    CHECK(t.size() == 6);
  }
  for (auto [p, n, k] : {std::tuple{3u, 3u, 1u}, {5u, 3u, 1u}, {3u, 5u, 1u}, {7u, 3u, 1u}, {3u, 9u, 3u},
                         {3u, 6u, 2u}, {5u, 6u, 2u}}) {
    const auto params = validate_params(p, n, k);
    CHECK(closed_form_gamma_delta_distribution(params).total() == ipow(p, 2 * n) - 1);
    const auto triple = closed_form_triple_distribution(params);
    CHECK(triple.total() == ipow(p, 3 * n));
    const std::int64_t nn = n, d = params.d;
    CHECK(triple.frequency(SumClass::zero()) ==
          (ipow(p, n) - 1) * (ipow(p, 2 * nn - d) - ipow(p, 2 * nn - 2 * d) + ipow(p, 2 * nn - 3 * d) -
                              ipow(p, nn - 2 * d) + 1));
  }
}

TEST_CASE("closed-form triple distribution sums S to p^(3n) exactly") {
  // Summing over eps kills every x != 0, leaving p^n for each (gamma, delta).
  for (auto [p, n, k] : {std::tuple{3u, 3u, 1u}, {5u, 3u, 1u}, {3u, 5u, 1u}, {7u, 3u, 1u}}) {
    const auto params = validate_params(p, n, k);
    Cyclotomic total(p);
    for (const auto& [c, f] : closed_form_triple_distribution(params)) {
      const auto freq = f.convert_to<std::int64_t>();
      switch (c.kind) {
        case SumKind::Zero: break;
        case SumKind::Full: total += Cyclotomic::rational(p, freq * (std::int64_t)upow(p, n)); break;
        case SumKind::Rational:
          total += Cyclotomic::zeta_power(p, c.rho0) * (c.sign * freq * (std::int64_t)upow(p, c.exponent2 / 2));
          break;
        case SumKind::Gauss:
          total += Cyclotomic::gauss_sum(p).rotated(c.rho0) *
                   (c.sign * freq * (std::int64_t)upow(p, (c.exponent2 - 1) / 2));
          break;
      }
    }
    CHECK(total.rational_value() == (std::int64_t)upow(p, 3 * n));
  }
}

TEST_CASE("S(0, gamma, delta) distribution by enumeration") {
  {
    auto [params, ctx] = setup(3, 3, 1);
    const auto r = s_distribution(params, ctx, SumSweep::GammaDeltaOnly);
    CHECK(r.pass());
    CHECK(r.observed.total() == 728);
  }
  {
    auto [params, ctx] = setup(5, 3, 1);
    CHECK(s_distribution(params, ctx, SumSweep::GammaDeltaOnly, {2, {}}).pass());
  }
}

TEST_CASE("full triple distribution by transform") {
  auto [params, ctx] = setup(3, 3, 1);
  const auto r = s_distribution(params, ctx, SumSweep::Full);
  CHECK(r.pass());
  CHECK(r.observed.total() == 19683);
  CHECK_NOTHROW(r.require());
}

TEST_CASE("distribution mismatch is reported") {
  SumDistributionReport r;
  r.expected.add(SumClass::zero(), 3);
  r.observed.add(SumClass::zero(), 2);
  r.divergences = compare_tables(r.expected, r.observed);
  CHECK_FALSE(r.pass());
  CHECK(code_of([&] { r.require(); }) == ErrorCode::DistributionMismatch);
}
