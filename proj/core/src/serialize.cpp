#include "wdist/serialize.hpp"

#include <sstream>

namespace wdist {

Json params_json(const CodeParams& params, const FieldCtx& ctx) {
  Json j;
  j["p"] = params.p;
  j["n"] = params.n;
  j["k"] = params.k;
  j["modulus"] = format_modulus(ctx.modulus());
  return j;
}

Json weight_table_json(const CodeParams& params, const FieldCtx& ctx, const WeightTable& table) {
  Json j = params_json(params, ctx);
  Json rows = Json::array();
  for (const auto& [w, f] : table) rows.push_back({{"weight", w}, {"freq", f.str()}});
  j["rows"] = std::move(rows);
  return j;
}

Json rank_table_json(const CodeParams& params, const FieldCtx& ctx, const DistributionTable<std::uint32_t>& table) {
  Json j = params_json(params, ctx);
  Json rows = Json::array();
  for (const auto& [m, f] : table) {
    rows.push_back({{"m", m}, {"rank", params.s - m}, {"rank_over_prime", params.n - params.d * m}, {"freq", f.str()}});
  }
  j["rows"] = std::move(rows);
  return j;
}

Json sign_table_json(const CodeParams& params, const FieldCtx& ctx, const DistributionTable<SignClass>& table) {
  Json j = params_json(params, ctx);
  Json rows = Json::array();
  for (const auto& [c, f] : table) rows.push_back({{"i", c.i}, {"j", c.j}, {"freq", f.str()}});
  j["rows"] = std::move(rows);
  return j;
}

Json sum_class_json(const SumClass& c) {
  Json j;
  j["class"] = c.label();
  j["kind"] = std::string(to_string(c.kind));
  j["sign"] = c.sign;
  j["exponent2"] = c.exponent2;
  j["rho0"] = c.rho0;
  return j;
}

Json sum_table_json(const CodeParams& params, const FieldCtx& ctx, const DistributionTable<SumClass>& table) {
  Json j = params_json(params, ctx);
  Json rows = Json::array();
  for (const auto& [c, f] : table) {
    Json row = sum_class_json(c);
    row["freq"] = f.str();
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json rank_report_json(const RankReport& r) {
  Json j;
  j["m"] = r.m;
  j["rank_over_subfield"] = r.rank_over_subfield;
  j["rank_over_prime"] = r.rank_over_prime;
  if (r.sign_class) {
    j["sign_class"] = {{"i", r.sign_class->i}, {"j", r.sign_class->j}};
  } else {
    j["sign_class"] = nullptr;
  }
  return j;
}

std::string weight_table_csv(const WeightTable& table) {
  std::ostringstream out;
  out << "weight,frequency\n";
  for (const auto& [w, f] : table) out << w << ',' << f << '\n';
  return out.str();
}

std::string rank_table_csv(const CodeParams& params, const DistributionTable<std::uint32_t>& table) {
  std::ostringstream out;
  out << "m,rank,frequency\n";
  for (const auto& [m, f] : table) out << m << ',' << params.s - m << ',' << f << '\n';
  return out.str();
}

std::string sign_table_csv(const DistributionTable<SignClass>& table) {
  std::ostringstream out;
  out << "i,j,frequency\n";
  for (const auto& [c, f] : table) out << c.i << ',' << c.j << ',' << f << '\n';
  return out.str();
}

std::string sum_table_csv(const DistributionTable<SumClass>& table) {
  std::ostringstream out;
  out << "class,kind,sign,exponent2,rho0,frequency\n";
  for (const auto& [c, f] : table) {
    out << c.label() << ',' << to_string(c.kind) << ',' << c.sign << ',' << c.exponent2 << ',' << c.rho0 << ','
        << f << '\n';
  }
  return out.str();
}

WeightTable weight_table_from_json(const Json& j) {
  WeightTable t;
  for (const auto& row : j.at("rows")) {
    t.add(row.at("weight").get<std::uint64_t>(), BigInt(row.at("freq").get<std::string>()));
  }
  return t;
}

}  // namespace wdist
