#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "wdist/exponential_sums.hpp"
#include "wdist/finite_field.hpp"
#include "wdist/quadratic_forms.hpp"
#include "wdist/weight_distribution.hpp"

namespace wdist {

using Json = nlohmann::ordered_json;

/// {"p", "n", "k", "modulus"} header shared by every table.
Json params_json(const CodeParams& params, const FieldCtx& ctx);

Json weight_table_json(const CodeParams& params, const FieldCtx& ctx, const WeightTable& table);
Json rank_table_json(const CodeParams& params, const FieldCtx& ctx, const DistributionTable<std::uint32_t>& table);
Json sign_table_json(const CodeParams& params, const FieldCtx& ctx, const DistributionTable<SignClass>& table);
Json sum_table_json(const CodeParams& params, const FieldCtx& ctx, const DistributionTable<SumClass>& table);
Json rank_report_json(const RankReport& report);
Json sum_class_json(const SumClass& c);

std::string weight_table_csv(const WeightTable& table);
std::string rank_table_csv(const CodeParams& params, const DistributionTable<std::uint32_t>& table);
std::string sign_table_csv(const DistributionTable<SignClass>& table);
std::string sum_table_csv(const DistributionTable<SumClass>& table);

WeightTable weight_table_from_json(const Json& j);

}  // namespace wdist
