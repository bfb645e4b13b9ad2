#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "result_cache.hpp"

namespace fs = std::filesystem;
using namespace wdist::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wdist");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

int count_lines_with(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) n += line.find(needle) != std::string::npos;
  return n;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

std::vector<fs::path> result_files(const fs::path& cache) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(cache / "results")) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  return files;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("field-info") {
  const auto r = run_cli({"field-info", "--p", "3", "--n", "3", "--no-cache"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("modulus: 1,0,2,1") != std::string::npos);
  CHECK(r.out.find("order 26 confirmed") != std::string::npos);
}

TEST_CASE("validation errors exit 2") {
  CHECK(run_cli({"field-info", "--p", "4", "--n", "2", "--no-cache"}).code == kUsage);
  const auto even = run_cli({"rank-dist", "--p", "3", "--n", "4", "--k", "1", "--no-cache"});
  CHECK(even.code == kUsage);
  CHECK(even.err.find("EvenS") != std::string::npos);
  CHECK(run_cli({"weights", "--p", "3", "--n", "3", "--no-cache"}).code == kUsage);
  CHECK(run_cli({"weights", "--p", "3", "--n", "3", "--k", "1", "--format", "xml"}).code == kUsage);
  CHECK(run_cli({"bogus"}).code == kUsage);
  CHECK(run_cli({"weights", "--p", "3", "--n", "3", "--k", "1", "--modulus", "1,0,0,1", "--no-cache"}).code ==
        kUsage);
  CHECK(run_cli({"--help"}).code == kOk);
}

TEST_CASE("budget errors exit 3") {
  CHECK(run_cli({"weights", "--p", "3", "--n", "6", "--k", "2", "--method", "enumerate", "--no-cache"}).code ==
        kBudget);
  CHECK(run_cli({"verify", "--p", "5", "--n", "3", "--k", "1", "--no-cache"}).code == kBudget);
  CHECK(run_cli({"weights", "--p", "3", "--n", "3", "--k", "1", "--max-table-bytes", "10", "--no-cache"}).code ==
        kBudget);
}

TEST_CASE("errors are reported as JSON when requested") {
  const auto r = run_cli({"rank-dist", "--p", "3", "--n", "4", "--k", "1", "--format", "json", "--no-cache"});
  CHECK(r.code == kUsage);
  const auto j = wdist::Json::parse(r.out);
  CHECK(j["error"]["code"] == "EvenS");
  CHECK(j["error"]["class"] == "validation");
}

TEST_CASE("verify passes at (3,3,1)") {
  const auto r = run_cli({"verify", "--p", "3", "--n", "3", "--k", "1", "--no-cache"});
  CHECK(r.code == kOk);
  CHECK(count_lines_with(r.out, ": PASS") == 4);
  CHECK(count_lines_with(r.out, "FAIL") == 0);
}

TEST_CASE("verify at standard tier with enumeration") {
  const auto r = run_cli({"verify", "--p", "5", "--n", "3", "--k", "1", "--tier", "standard", "--method",
                          "enumerate", "--threads", "2", "--no-cache"});
  CHECK(r.code == kOk);
  CHECK(count_lines_with(r.out, ": PASS") == 4);
}

TEST_CASE("weights output formats") {
  const auto csv = run_cli({"weights", "--p", "3", "--n", "5", "--k", "1", "--format", "csv", "--no-cache"});
  CHECK(csv.code == kOk);
  CHECK(csv.out.rfind("weight,frequency\n0,1\n135,29040\n", 0) == 0);
  CHECK(count_lines_with(csv.out, ",") == 9);  // header + 8 rows

  const auto json = run_cli({"weights", "--p", "3", "--n", "3", "--k", "1", "--method", "transform", "--format",
                             "json", "--no-cache"});
  const auto j = wdist::Json::parse(json.out);
  CHECK(j["modulus"] == "1,0,2,1");
  CHECK(j["rows"].size() == 7);
  CHECK(j["rows"][1]["weight"] == 9);
  CHECK(j["rows"][1]["freq"] == "52");
}

TEST_CASE("identical configurations give byte-identical JSON") {
  for (const char* cmd : {"weights", "rank-dist", "expsum-dist", "verify"}) {
    const std::vector<std::string> args{cmd, "--p", "3", "--n", "3", "--k", "1", "--format", "json", "--no-cache",
                                        "--method", std::string(cmd) == "weights" ? "enumerate" :
                                                    std::string(cmd) == "verify" ? "transform" : "enumerate"};
    const auto a = run_cli(args);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    const auto b = run_cli(threaded);
    CHECK(a.code == kOk);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cache replay and corrupted entries") {
  const auto dir = fresh_dir("wdist_cli_cache_test");
  const std::vector<std::string> args{"verify", "--p", "3", "--n", "3", "--k", "1", "--format", "json",
                                      "--cache-dir", dir.string()};
  const auto first = run_cli(args);
  REQUIRE(first.code == kOk);
  auto files = result_files(dir);
  REQUIRE(files.size() == 1);

  const auto second = run_cli(args);
  CHECK(second.code == kOk);
  CHECK(second.err.find("cache: hit") != std::string::npos);
  CHECK(second.out == first.out);

  {
    std::string text = slurp(files[0]);
    text.back() = text.back() == '}' ? ']' : '}';
    std::ofstream(files[0], std::ios::binary | std::ios::trunc) << text;
  }
  const auto third = run_cli(args);
  CHECK(third.code == kOk);
  CHECK(third.err.find("invalidated") != std::string::npos);
  CHECK(third.out == first.out);
  const auto fourth = run_cli(args);
  CHECK(fourth.err.find("cache: hit") != std::string::npos);

  // A stored failing report replays with exit code 1 and a failure summary.
  {
    auto doc = wdist::Json::parse(first.out);
    doc["status"] = "FAIL";
    doc["steps"][3]["status"] = "FAIL";
    const std::string body = doc.dump();
    std::ofstream(files[0], std::ios::binary | std::ios::trunc) << "sha256:" << sha256_hex(body) << '\n' << body;
  }
  const auto failed = run_cli(args);
  CHECK(failed.code == kVerificationFailed);
  CHECK(failed.err.find(R"("failed_steps":["weights"])") != std::string::npos);
  CHECK(run_cli({"verify", "--p", "3", "--n", "3", "--k", "1", "--cache-dir", dir.string(), "--no-cache"}).code ==
        kOk);
  fs::remove_all(dir);
}

TEST_CASE("environment overrides") {
  ::setenv("WDIST_P", "3", 1);
  ::setenv("WDIST_N", "3", 1);
  ::setenv("WDIST_K", "1", 1);
  ::setenv("WDIST_FORMAT", "csv", 1);
  const auto r = run_cli({"weights", "--no-cache"});
  ::unsetenv("WDIST_P");
  ::unsetenv("WDIST_N");
  ::unsetenv("WDIST_K");
  ::unsetenv("WDIST_FORMAT");
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("weight,frequency\n0,1\n9,52\n", 0) == 0);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
