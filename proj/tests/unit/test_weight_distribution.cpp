#include <doctest.h>

#include <map>
#include <random>
#include <string>

#include "oracle.hpp"
#include "wdist/serialize.hpp"
#include "wdist/weight_distribution.hpp"

using namespace wdist;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::Internal;
}

WeightTable table_of(std::initializer_list<std::pair<std::uint64_t, const char*>> rows) {
  WeightTable t;
  for (auto [w, f] : rows) t.add(w, BigInt(f));
  return t;
}

// Merged tables computed independently with exact rational arithmetic in Python.
const std::map<std::tuple<int, int, int>, WeightTable>& reference_tables() {
  static const std::map<std::tuple<int, int, int>, WeightTable> tables{
      {{3, 3, 1}, table_of({{0, "1"}, {9, "52"}, {12, "780"}, {15, "6240"}, {18, "9100"}, {21, "3432"}, {24, "78"}})},
      {{5, 3, 1},
       table_of({{0, "1"}, {75, "496"}, {80, "16740"}, {95, "773760"}, {100, "635128"}, {105, "525760"},
                 {120, "1240"}})},
      {{3, 5, 1},
       table_of({{0, "1"}, {135, "29040"}, {144, "359370"}, {153, "3855060"}, {162, "6719372"}, {171, "3188592"},
                 {180, "182952"}, {189, "14520"}})},
      {{7, 3, 1},
       table_of({{0, "1"}, {245, "2052"}, {252, "124488"}, {287, "17236800"}, {294, "9969300"}, {301, "13013784"},
                 {336, "7182"}})},
      {{3, 9, 3},
       table_of({{0, "1"}, {10935, "236184"}, {12636, "1941786756"}, {12879, "3481824528"},
                 {13041, "2477815555176"}, {13122, "2719940724332"}, {13203, "2417381029440"},
                 {13365, "3481824528"}, {13608, "1554385950"}, {15309, "118092"}})},
      {{3, 6, 2},
       table_of({{0, "1"}, {324, "1820"}, {405, "2912"}, {432, "1081080"}, {459, "1572480"}, {468, "61562592"},
                 {477, "118879488"}, {486, "38736152"}, {495, "110388096"}, {504, "53071200"},
                 {513, "1572480"}, {540, "550368"}, {567, "1456"}, {648, "364"}})},
      {{5, 6, 2},
       table_of({{0, "1"}, {10000, "70308"}, {11875, "187488"}, {12000, "736281000"}, {12375, "2437344000"},
                 {12400, "377905500000"}, {12475, "1476468000000"}, {12500, "146718750024"},
                 {12525, "1453032000000"}, {12600, "354469500000"}, {12625, "2437344000"}, {13000, "492156000"},
                 {13125, "124992"}, {15000, "7812"}})},
  };
  return tables;
}

}  // namespace

TEST_CASE("codeword weights") {
  const auto params = validate_params(3, 3, 1);
  const auto ctx = FieldCtx::make(3, 3);
  CHECK(codeword_weight(params, ctx, {ctx.zero(), ctx.zero(), ctx.zero()}) == 0);
  for (std::uint32_t e = 1; e < 27; ++e) {
    CHECK(codeword_weight(params, ctx, {Element{e}, ctx.zero(), ctx.zero()}) == 18);
  }
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint32_t> pick(0, 26);
  for (int t = 0; t < 200; ++t) {
    const CodewordId id{Element{pick(rng)}, Element{pick(rng)}, Element{pick(rng)}};
    const auto word = codeword(params, ctx, id);
    REQUIRE(word.size() == 26);
    std::uint64_t nonzero = 0;
    for (auto s : word) nonzero += s != 0;
    REQUIRE(nonzero == codeword_weight(params, ctx, id));
  }
}

TEST_CASE("codeword symbols follow log order") {
  const auto params = validate_params(3, 3, 1);
  const auto ctx = FieldCtx::make(3, 3);
  oracle::Field of(3, 3, ctx.modulus());
  const CodewordId id{Element{5}, Element{11}, Element{20}};
  const auto word = codeword(params, ctx, id);
  oracle::Poly x = of.one(), alpha{0, 1, 0};
  for (std::uint32_t i = 0; i < 26; ++i, x = of.mul(x, alpha)) {
    oracle::Poly v = of.mul(of.from_index(5), x);
    v = of.add(v, of.mul(of.from_index(11), of.mul(of.frob(x, 1), x)));
    v = of.add(v, of.mul(of.from_index(20), of.mul(of.frob(x, 3), x)));
    CHECK(word[i] == of.trace(v));
  }
}

TEST_CASE("closed form matches reference tables and invariants") {
  for (const auto& [key, expected] : reference_tables()) {
    const auto [p, n, k] = key;
    CAPTURE(p);
    CAPTURE(n);
    const auto params = validate_params(p, n, k);
    const auto t = closed_form_weight_distribution(params);
    CHECK(t == expected);
    const auto inv = check_weight_table_invariants(params, t);
    CHECK(inv.pass());
    CHECK(inv.total == ipow(p, 3 * n));
    CHECK(inv.zero_weight == 1);
  }
  const auto params = validate_params(3, 3, 1);
  const auto t = closed_form_weight_distribution(params);
  CHECK(t.frequency(18) == 26 * 350);
  CHECK(t.rows().begin()->first == 0);
  CHECK(std::next(t.rows().begin())->first == 9);
}

TEST_CASE("empirical methods agree with each other and with the closed form at (3,3,1)") {
  const auto params = validate_params(3, 3, 1);
  const auto ctx = FieldCtx::make(3, 3);
  const auto en = empirical_weight_distribution(params, ctx, WeightMethod::Enumerate);
  const auto tr = empirical_weight_distribution(params, ctx, WeightMethod::Transform);
  CHECK(en == tr);
  CHECK(en == reference_tables().at({3, 3, 1}));
  CHECK(en.total() == 19683);
  const auto inv = check_weight_table_invariants(params, en);
  CHECK(inv.first_moment == BigInt(26) * 2 * 6561);
  CHECK(inv.pass());
  CHECK(verify_weight_distribution(params, ctx, WeightMethod::Enumerate).pass());
  CHECK(empirical_weight_distribution(params, ctx, WeightMethod::Transform, {3, {}}) == tr);
}

TEST_CASE("transform method at (5,3,1)") {
  const auto params = validate_params(5, 3, 1);
  const auto ctx = FieldCtx::make(5, 3);
  const auto v = verify_weight_distribution(params, ctx, WeightMethod::Transform, {2, {}});
  CHECK(v.pass());
  CHECK(check_weight_table_invariants(params, v.empirical).pass());
}

TEST_CASE("budgets and method errors") {
  const auto params = validate_params(3, 6, 2);
  const auto ctx = FieldCtx::make(3, 6);
  CHECK_FALSE(within_budget(params, WeightMethod::Enumerate));
  CHECK(within_budget(params, WeightMethod::Transform));
  CHECK(code_of([&] { empirical_weight_distribution(params, ctx, WeightMethod::Enumerate); }) ==
        ErrorCode::BudgetExceeded);
  CHECK(code_of([&] { empirical_weight_distribution(params, ctx, WeightMethod::Closed); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { validate_params(3, 4, 1); }) == ErrorCode::EvenS);
}

TEST_CASE("divergences are listed") {
  WeightTable a = table_of({{0, "1"}, {9, "5"}});
  WeightTable b = table_of({{0, "1"}, {9, "4"}, {12, "1"}});
  const auto d = compare_tables(a, b);
  REQUIRE(d.size() == 2);
  CHECK(d[0].key == 9);
  CHECK(d[0].expected == 5);
  CHECK(d[0].observed == 4);
  CHECK(d[1].key == 12);
  CHECK(d[1].expected == 0);
}

TEST_CASE("weight table serialization") {
  const auto params = validate_params(3, 3, 1);
  const auto ctx = FieldCtx::make(3, 3);
  const auto t = closed_form_weight_distribution(params);
  const auto j = weight_table_json(params, ctx, t);
  CHECK(j.dump() ==
        R"({"p":3,"n":3,"k":1,"modulus":"1,0,2,1","rows":[{"weight":0,"freq":"1"},{"weight":9,"freq":"52"},)"
        R"({"weight":12,"freq":"780"},{"weight":15,"freq":"6240"},{"weight":18,"freq":"9100"},)"
        R"({"weight":21,"freq":"3432"},{"weight":24,"freq":"78"}]})");
  CHECK(weight_table_from_json(j) == t);
  CHECK(weight_table_csv(t).rfind("weight,frequency\n0,1\n9,52\n", 0) == 0);
}
