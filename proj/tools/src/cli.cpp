#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "result_cache.hpp"
#include "wdist/exponential_sums.hpp"
#include "wdist/quadratic_forms.hpp"
#include "wdist/weight_distribution.hpp"

namespace wdist::cli {

namespace {

constexpr std::uint64_t kGeneralTripleLimit = 387420489;  // 3^18

std::string_view tier_name(Tier t) {
  switch (t) {
    case Tier::Quick: return "quick";
    case Tier::Standard: return "standard";
    case Tier::Extended: return "extended";
  }
  return "?";
}

struct Context {
  CodeParams params;
  FieldCtx field;
  SweepOptions sweep;
};

FieldCtx build_field(const RunConfig& cfg, std::int64_t p, std::int64_t n) {
  FieldCtx ctx = [&] {
    if (cfg.modulus) return FieldCtx::make(p, n, parse_modulus(*cfg.modulus));
    if (cfg.no_cache || cfg.cache_dir.empty()) return FieldCtx::make(p, n);
    const ModulusCache moduli(cfg.cache_dir / "moduli");
    return make_field_cached(p, n, &moduli);
  }();
  if (ctx.table_bytes() > cfg.max_table_bytes) {
    throw Error(ErrorCode::TableLimitExceeded, "field tables need " + std::to_string(ctx.table_bytes()) +
                                                   " bytes, limit is " + std::to_string(cfg.max_table_bytes));
  }
  return ctx;
}

Context make_context(const RunConfig& cfg) {
  const CodeParams params = validate_params(cfg.p, cfg.n, cfg.k);
  Context c{params, build_field(cfg, cfg.p, cfg.n), {}};
  c.sweep.threads = std::max(1u, cfg.threads);
  c.sweep.transform.memory_cap_bytes = cfg.max_table_bytes;
  return c;
}

double triple_count(const CodeParams& params) { return std::pow(double(params.p), 3.0 * params.n); }

void require_triples_within(const CodeParams& params, std::uint64_t limit, std::string_view what) {
  if (triple_count(params) > static_cast<double>(limit)) {
    throw Error(ErrorCode::BudgetExceeded, std::string(what) + " needs p^(3n) = " +
                                               ipow(params.p, 3 * params.n).str() + " evaluations, limit is " +
                                               std::to_string(limit));
  }
}

std::string method_or(const RunConfig& cfg, std::string fallback) {
  return cfg.method.empty() ? fallback : cfg.method;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f) continue;
    out.push_back(f);
    while (v % f == 0) v /= f;
  }
  if (v > 1) out.push_back(v);
  return out;
}

Json rows_of(const Json& table) { return table.at("rows"); }

Json divergence_json(const auto& divergences, auto&& key_json) {
  Json arr = Json::array();
  for (const auto& d : divergences) {
    Json row = key_json(d.key);
    row["expected"] = d.expected.str();
    row["observed"] = d.observed.str();
    arr.push_back(std::move(row));
  }
  return arr;
}

}  // namespace

std::uint64_t tier_limit(Tier tier) {
  switch (tier) {
    case Tier::Quick: return 19683;          // 3^9
    case Tier::Standard: return 14348907;    // 3^15
    case Tier::Extended: return 387420489;   // 3^18
  }
  return 0;
}

CommandResult cmd_field_info(const RunConfig& cfg) {
  const FieldCtx ctx = build_field(cfg, cfg.p, cfg.n);
  const std::uint64_t order = ctx.group_order();
  bool confirmed = ctx.pow(ctx.alpha(), order) == ctx.one();
  for (auto r : prime_factors(order)) {
    if (ctx.pow(ctx.alpha(), order / r) == ctx.one()) confirmed = false;
  }
  if (!confirmed) throw Error(ErrorCode::NotPrimitive, "alpha does not have order " + std::to_string(order));
  Json j;
  j["p"] = ctx.p();
  j["n"] = ctx.n();
  j["modulus"] = format_modulus(ctx.modulus());
  j["field_size"] = ctx.size();
  j["alpha_order"] = order;
  j["order_confirmed"] = confirmed;
  j["table_bytes"] = ctx.table_bytes();
  return {j, kOk};
}

CommandResult cmd_rank_dist(const RunConfig& cfg) {
  const Context c = make_context(cfg);
  const std::string method = method_or(cfg, "enumerate");
  DistributionTable<std::uint32_t> ranks;
  DistributionTable<SignClass> signs;
  if (method == "closed") {
    ranks = closed_form_rank_distribution(c.params);
    signs = closed_form_sign_classes(c.params);
  } else if (method == "enumerate") {
    require_triples_within(c.params, kGeneralTripleLimit, "rank sweep");
    ranks = rank_distribution(c.params, c.field, c.sweep);
    signs = sign_class_distribution(c.params, c.field, c.sweep);
  } else {
    throw Error(ErrorCode::InvalidArgument, "rank-dist supports --method enumerate or closed");
  }
  Json j = params_json(c.params, c.field);
  j["method"] = method;
  j["ranks"] = rows_of(rank_table_json(c.params, c.field, ranks));
  j["sign_classes"] = rows_of(sign_table_json(c.params, c.field, signs));
  return {j, kOk};
}

CommandResult cmd_expsum_dist(const RunConfig& cfg) {
  const Context c = make_context(cfg);
  DistributionTable<SumClass> table;
  std::string method;
  if (cfg.sweep == "gamma-delta") {
    method = method_or(cfg, "enumerate");
    if (method == "closed") {
      table = closed_form_gamma_delta_distribution(c.params);
    } else if (method == "enumerate") {
      require_triples_within(c.params, kGeneralTripleLimit, "(gamma, delta) sweep");
      table = gamma_delta_class_histogram(c.params, c.field, c.sweep);
    } else {
      throw Error(ErrorCode::InvalidArgument, "--sweep gamma-delta supports --method enumerate or closed");
    }
  } else if (cfg.sweep == "full") {
    method = method_or(cfg, "transform");
    if (method == "closed") {
      table = closed_form_triple_distribution(c.params);
    } else if (method == "transform") {
      if (!within_budget(c.params, WeightMethod::Transform)) {
        throw Error(ErrorCode::BudgetExceeded, "full sweep exceeds the transform budget");
      }
      table = full_triple_sweep(c.params, c.field, c.sweep, true).classes;
    } else {
      throw Error(ErrorCode::InvalidArgument, "--sweep full supports --method transform or closed");
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown sweep " + cfg.sweep);
  }
  Json j = params_json(c.params, c.field);
  j["sweep"] = cfg.sweep;
  j["method"] = method;
  j["rows"] = rows_of(sum_table_json(c.params, c.field, table));
  return {j, kOk};
}

CommandResult cmd_weights(const RunConfig& cfg) {
  const Context c = make_context(cfg);
  const std::string method = method_or(cfg, "closed");
  WeightTable table;
  if (method == "closed") {
    table = closed_form_weight_distribution(c.params);
  } else if (method == "enumerate") {
    table = empirical_weight_distribution(c.params, c.field, WeightMethod::Enumerate, c.sweep);
  } else if (method == "transform") {
    table = empirical_weight_distribution(c.params, c.field, WeightMethod::Transform, c.sweep);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown method " + method);
  }
  const auto inv = check_weight_table_invariants(c.params, table);
  if (!inv.pass()) {
    throw Error(ErrorCode::DistributionMismatch, "weight table violates its invariants (total " + inv.total.str() +
                                                     ", first moment " + inv.first_moment.str() + ")");
  }
  Json j = weight_table_json(c.params, c.field, table);
  return {j, kOk};
}

CommandResult cmd_verify(const RunConfig& cfg) {
  const Context c = make_context(cfg);
  require_triples_within(c.params, tier_limit(cfg.tier), std::string("tier ") + std::string(tier_name(cfg.tier)));
  const std::string method = method_or(cfg, "transform");
  if (method != "transform" && method != "enumerate") {
    throw Error(ErrorCode::InvalidArgument, "verify supports --method transform or enumerate");
  }
  const bool full_sweep = triple_count(c.params) <= static_cast<double>(tier_limit(Tier::Quick));

  Json steps = Json::array();
  bool all_pass = true;
  auto run_step = [&](const std::string& name, auto&& body) {
    Json step;
    step["name"] = name;
    try {
      Json detail = body();
      const bool pass = detail.at("pass").get<bool>();
      detail.erase("pass");
      step["status"] = pass ? "PASS" : "FAIL";
      step["detail"] = std::move(detail);
    } catch (const Error& e) {
      if (classify(e.code()) != ErrorClass::Verification) throw;
      step["status"] = "FAIL";
      step["detail"] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
    if (step["status"] != "PASS") all_pass = false;
    steps.push_back(std::move(step));
  };

  run_step("moments", [&] {
    const auto r = moment_checks(c.params, c.field, c.sweep);
    return Json{{"pass", r.pass()},
                {"first", r.first.str()},
                {"second", r.second.str()},
                {"expected_first", r.expected_first.str()},
                {"expected_second", r.expected_second.str()}};
  });
  run_step("rank-distribution", [&] {
    const auto r = verify_rank_distribution(c.params, c.field, c.sweep);
    Json d{{"pass", r.pass()}};
    d["rows"] = rows_of(rank_table_json(c.params, c.field, r.observed));
    d["divergences"] = divergence_json(r.divergences, [](std::uint32_t m) { return Json{{"m", m}}; });
    return d;
  });
  run_step("expsum-distribution", [&] {
    const auto r = s_distribution(c.params, c.field, SumSweep::GammaDeltaOnly, c.sweep);
    Json d{{"pass", r.pass()}, {"classes", r.observed.size()}};
    Json div = divergence_json(r.divergences, [](const SumClass& k) { return sum_class_json(k); });
    bool pass = r.pass();
    d["full_sweep"] = full_sweep;
    if (full_sweep) {
      const auto f = s_distribution(c.params, c.field, SumSweep::Full, c.sweep);
      d["full_sweep_classes"] = f.observed.size();
      for (auto& row : divergence_json(f.divergences, [](const SumClass& k) { return sum_class_json(k); })) {
        div.push_back(std::move(row));
      }
      pass = pass && f.pass();
    }
    d["pass"] = pass;
    d["divergences"] = std::move(div);
    return d;
  });
  run_step("weights", [&] {
    const auto v = verify_weight_distribution(
        c.params, c.field, method == "enumerate" ? WeightMethod::Enumerate : WeightMethod::Transform, c.sweep);
    const bool invariants = check_weight_table_invariants(c.params, v.empirical).pass() &&
                            check_weight_table_invariants(c.params, v.closed).pass();
    Json d{{"pass", v.pass() && invariants}, {"method", method}, {"rows", v.closed.size()}, {"invariants", invariants}};
    d["divergences"] = divergence_json(v.divergences, [](std::uint64_t w) { return Json{{"weight", w}}; });
    return d;
  });

  Json j = params_json(c.params, c.field);
  j["tier"] = std::string(tier_name(cfg.tier));
  j["status"] = all_pass ? "PASS" : "FAIL";
  j["steps"] = std::move(steps);
  return {j, all_pass ? kOk : kVerificationFailed};
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

using Columns = std::vector<std::pair<std::string, std::string>>;  // json key, header

std::string cell(const Json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string signed_cell(const Json& v) {
  const auto i = v.get<std::int64_t>();
  return i > 0 ? "+" + std::to_string(i) : std::to_string(i);
}

void render_rows(std::ostream& out, const Json& rows, const Columns& cols, Format format,
                 const std::string& signed_key = {}) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (const auto& [key, header] : cols) {
      line.push_back(key == signed_key ? signed_cell(row.at(key)) : cell(row.at(key)));
    }
    cells.push_back(std::move(line));
  }
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].second;
    out << '\n';
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << line[i];
      out << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].second.size();
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i + 1 == line.size()) {
        out << line[i];
      } else {
        out << std::left << std::setw(static_cast<int>(width[i] + 2)) << line[i];
      }
    }
    out << '\n';
  };
  std::vector<std::string> header;
  for (const auto& col : cols) header.push_back(col.second);
  emit(header);
  for (const auto& line : cells) emit(line);
}

}  // namespace

std::string render(const std::string& command, const Json& doc, Format format) {
  if (format == Format::Json) return doc.dump(2) + "\n";
  std::ostringstream out;
  if (command == "field-info") {
    if (format == Format::Csv) {
      out << "p,n,modulus,field_size,alpha_order,order_confirmed,table_bytes\n";
      out << doc["p"] << ',' << doc["n"] << ",\"" << doc["modulus"].get<std::string>() << "\"," << doc["field_size"]
          << ',' << doc["alpha_order"] << ',' << doc["order_confirmed"] << ',' << doc["table_bytes"] << '\n';
    } else {
      out << "modulus: " << doc["modulus"].get<std::string>() << '\n';
      out << "field size: " << doc["field_size"] << '\n';
      out << "order " << doc["alpha_order"] << (doc["order_confirmed"].get<bool>() ? " confirmed" : " NOT confirmed")
          << '\n';
      out << "table bytes: " << doc["table_bytes"] << '\n';
    }
  } else if (command == "rank-dist") {
    render_rows(out, doc["ranks"], {{"m", "m"}, {"rank", "rank"}, {"rank_over_prime", "rank_over_prime"},
                                    {"freq", "frequency"}},
                format);
    out << '\n';
    render_rows(out, doc["sign_classes"], {{"i", "i"}, {"j", "j"}, {"freq", "frequency"}}, format, "j");
  } else if (command == "expsum-dist") {
    render_rows(out, doc["rows"],
                {{"class", "class"}, {"kind", "kind"}, {"sign", "sign"}, {"exponent2", "exponent2"},
                 {"rho0", "rho0"}, {"freq", "frequency"}},
                format, "sign");
  } else if (command == "weights") {
    render_rows(out, doc["rows"], {{"weight", "weight"}, {"freq", "frequency"}}, format);
  } else if (command == "verify") {
    if (format == Format::Csv) out << "step,status\n";
    for (const auto& step : doc["steps"]) {
      const auto name = step["name"].get<std::string>();
      const auto status = step["status"].get<std::string>();
      if (format == Format::Csv) {
        out << name << ',' << status << '\n';
        continue;
      }
      out << name << ": " << status;
      const auto& d = step["detail"];
      if (d.contains("error")) out << " (" << d["message"].get<std::string>() << ")";
      if (d.contains("divergences") && !d["divergences"].empty()) out << " (" << d["divergences"].size() << " divergent rows)";
      out << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Entry point

namespace {

std::filesystem::path default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "wdist";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "wdist";
  return {};
}

std::string cache_key(const RunConfig& cfg, const std::string& modulus) {
  std::ostringstream key;
  key << ResultCache::kArtifactVersion << '|' << cfg.command << '|' << cfg.p << '|' << cfg.n << '|' << cfg.k << '|'
      << modulus << '|' << cfg.method << '|';
  if (cfg.command == "expsum-dist") key << cfg.sweep;
  if (cfg.command == "verify") key << tier_name(cfg.tier);
  return key.str();
}

void report_error(std::ostream& out, std::ostream& err, Format format, std::string_view code, std::string_view cls,
                  const std::string& message) {
  if (format == Format::Json) {
    Json j;
    j["error"] = {{"code", std::string(code)}, {"class", std::string(cls)}, {"message", message}};
    out << j.dump(2) << '\n';
  }
  err << "error: " << message << '\n';
}

int exit_code_for(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::Validation: return kUsage;
    case ErrorClass::Budget: return kBudget;
    case ErrorClass::Verification: return kVerificationFailed;
  }
  return kVerificationFailed;
}

std::string_view class_name(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::Validation: return "validation";
    case ErrorClass::Budget: return "budget";
    case ErrorClass::Verification: return "verification";
  }
  return "?";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "table", tier = "quick", cache_dir;

  CLI::App app{"Weight distributions of a class of p-ary cyclic codes", "wdist"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--p", cfg.p, "Characteristic (odd prime)")->envname("WDIST_P");
  app.add_option("--n", cfg.n, "Extension degree")->envname("WDIST_N");
  app.add_option("--k", cfg.k, "Exponent parameter k")->envname("WDIST_K");
  app.add_option("--modulus", cfg.modulus, "Primitive modulus, ascending coefficients, e.g. 1,0,2,1")
      ->envname("WDIST_MODULUS");
  app.add_option("--method", cfg.method, "enumerate, transform or closed")
      ->check(CLI::IsMember({"enumerate", "transform", "closed"}))
      ->envname("WDIST_METHOD");
  app.add_option("--format", format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->envname("WDIST_FORMAT");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber)->envname("WDIST_THREADS");
  app.add_option("--max-table-bytes", cfg.max_table_bytes, "Memory cap for field and transform tables")
      ->envname("WDIST_MAX_TABLE_BYTES");
  app.add_option("--tier", tier, "Verification tier: quick, standard or extended")
      ->check(CLI::IsMember({"quick", "standard", "extended"}))
      ->envname("WDIST_TIER");
  app.add_flag("--no-cache", cfg.no_cache, "Neither read nor write cached results")->envname("WDIST_NO_CACHE");
  app.add_option("--cache-dir", cache_dir, "Result cache directory")->envname("WDIST_CACHE_DIR");

  app.add_subcommand("field-info", "Modulus, primitive element and table sizes of GF(p^n)");
  app.add_subcommand("rank-dist", "Rank and sign class distribution of the quadratic forms");
  auto* expsum = app.add_subcommand("expsum-dist", "Distribution of the exponential sums");
  expsum->add_option("--sweep", cfg.sweep, "gamma-delta (eps = 0) or full")
      ->check(CLI::IsMember({"gamma-delta", "full"}))
      ->envname("WDIST_SWEEP");
  app.add_subcommand("weights", "Weight distribution of the code");
  app.add_subcommand("verify", "Check every closed form against enumeration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Table;
  cfg.tier = tier == "extended" ? Tier::Extended : tier == "standard" ? Tier::Standard : Tier::Quick;
  cfg.cache_dir = cache_dir.empty() ? default_cache_dir() : std::filesystem::path(cache_dir);

  if (cfg.p == 0 || cfg.n == 0 || (cfg.command != "field-info" && cfg.k == 0)) {
    report_error(out, err, cfg.format, "InvalidArgument", "validation",
                 cfg.command == "field-info" ? "--p and --n are required" : "--p, --n and --k are required");
    return kUsage;
  }

  try {
    CommandResult result;
    if (cfg.command == "field-info") {
      result = cmd_field_info(cfg);
    } else {
      // The modulus is part of the cache key, so resolve it first.
      const CodeParams params = validate_params(cfg.p, cfg.n, cfg.k);
      const std::string modulus = format_modulus(build_field(cfg, params.p, params.n).modulus());
      const bool use_cache = !cfg.no_cache && !cfg.cache_dir.empty();
      const ResultCache cache(cfg.cache_dir / "results");
      const std::string key = cache_key(cfg, modulus);
      bool have = false;
      if (use_cache) {
        const auto hit = cache.load(key);
        if (hit.status == ResultCache::Status::Hit) {
          try {
            result.document = Json::parse(hit.body);
            have = true;
            err << "cache: hit " << cache.path_for(key).string() << '\n';
          } catch (const Json::parse_error&) {
            std::filesystem::remove(cache.path_for(key));
            err << "cache: unreadable entry removed, recomputing\n";
          }
        } else if (hit.status == ResultCache::Status::Invalidated) {
          err << "cache: checksum mismatch, entry invalidated, recomputing\n";
        }
      }
      if (have) {
        if (cfg.command == "verify") {
          result.exit_code = result.document.value("status", "FAIL") == "PASS" ? kOk : kVerificationFailed;
        }
      } else {
        if (cfg.command == "rank-dist") result = cmd_rank_dist(cfg);
        else if (cfg.command == "expsum-dist") result = cmd_expsum_dist(cfg);
        else if (cfg.command == "weights") result = cmd_weights(cfg);
        else result = cmd_verify(cfg);
        if (use_cache && result.exit_code == kOk) cache.store(key, result.document.dump());
      }
    }
    out << render(cfg.command, result.document, cfg.format);
    if (result.exit_code == kVerificationFailed) {
      Json summary;
      summary["status"] = "FAIL";
      Json failed = Json::array();
      for (const auto& step : result.document["steps"]) {
        if (step["status"] != "PASS") failed.push_back(step["name"]);
      }
      summary["failed_steps"] = std::move(failed);
      err << summary.dump() << '\n';
    }
    return result.exit_code;
  } catch (const Error& e) {
    report_error(out, err, cfg.format, to_string(e.code()), class_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    report_error(out, err, cfg.format, "Internal", "verification", e.what());
    return kVerificationFailed;
  }
}

}  // namespace wdist::cli
