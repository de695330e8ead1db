// Copyright 2026 The mmest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "mmest/harness.hpp"
#include "mmest/stats.hpp"

using namespace mmest;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parallel_map keeps index order") {
  auto sq = [](std::uint64_t i) { return i * i; };
  const auto one = parallel_map(1000, 1, sq);
  for (int th : {2, 3, 8}) CHECK(parallel_map(1000, th, sq) == one);
  for (std::uint64_t i = 0; i < 1000; ++i) CHECK(one[i] == i * i);
  CHECK(parallel_map(0, 4, sq).empty());
  CHECK(parallel_map(3, 0, sq).size() == 3);
}

TEST_CASE("parallel_map rethrows the lowest failing index") {
  for (int th : {1, 4}) {
    try {
      parallel_map(200, th, [](std::uint64_t i) -> int {
        if (i == 17 || i == 150) throw std::runtime_error("at " + std::to_string(i));
        return 0;
      });
      FAIL("no throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "at 17");
    }
  }
}

TEST_CASE("fmt_num round trips") {
  CHECK(fmt_num(0.5) == "0.5");
  CHECK(fmt_num(3) == "3");
  CHECK(fmt_num(0.1) == "0.1");
  CHECK(fmt_num(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(fmt_num(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(fmt_num(std::nan("")) == "nan");
  for (double x : {1.0 / 3, 2.0 / 7, 1e-300, 123456789.123, -0.007}) CHECK(std::strtod(fmt_num(x).c_str(), nullptr) == x);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CsvTable t({"k", "v"});
  t.add({"x", "1,2"});
  CHECK(t.size() == 1);
  CHECK(t.str() == "k,v\nx,\"1,2\"\n");
  CHECK_THROWS_AS(t.add({"only"}), std::logic_error);
}

TEST_CASE("summary statistics") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(mean(x) == 2.5);
  CHECK(variance(x) == Catch::Approx(5.0 / 3));
  CHECK(std_error(x) == Catch::Approx(std::sqrt(5.0 / 12)));
  CHECK(quantile(x, 0) == 1);
  CHECK(quantile(x, 1) == 4);
  CHECK(quantile(x, 0.25) == Catch::Approx(1.75));
  CHECK(median({5, 1, 3}) == 3);
  CHECK(median(x) == 2.5);
  CHECK(variance(std::vector<double>{7}) == 0);
  CHECK_THROWS_AS(mean(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(quantile(x, 1.5), std::invalid_argument);
  const Interval w = wilson(0, 10);
  CHECK(w.lo == 0);
  CHECK(w.hi == Catch::Approx(1.96 * 1.96 / (10 + 1.96 * 1.96)));
  const Interval h = wilson(50, 100);
  CHECK(h.lo + h.hi == Catch::Approx(1.0));
  CHECK(proportion_se(50, 100) == Catch::Approx(0.05));
  CHECK(ls_slope(std::vector<double>{0, 1, 2}, std::vector<double>{1, 3, 5}) == Catch::Approx(2));
  CHECK_THROWS_AS(ls_slope(std::vector<double>{1, 1}, std::vector<double>{0, 1}), std::invalid_argument);
  const std::vector<double> c(50, 4.0);
  const Interval b = bootstrap_mean(c, 1);
  CHECK(b.lo == 4.0);
  CHECK(b.hi == 4.0);
}

TEST_CASE("run report files") {
  const auto dir = std::filesystem::temp_directory_path() / "mmest_harness_test";
  std::filesystem::remove_all(dir);
  RunReport r;
  r.command = "demo";
  r.config["seed"] = 3;
  r.rows = CsvTable({"trial", "x"});
  r.rows.add({"0", "1.5"});
  r.summary["mean"] = 1.5;
  r.wall_seconds = 0.25;
  CHECK(r.ok());
  write_report(r, dir / "sub", "demo");
  CHECK(slurp(dir / "sub" / "demo.csv") == "trial,x\n0,1.5\n");
  const json j = json::parse(slurp(dir / "sub" / "demo.json"));
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["command"] == "demo");
  CHECK(j["config"]["seed"] == 3);
  CHECK(j["ok"] == true);
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(json::parse(slurp(dir / "sub" / "demo.timing.json"))["wall_seconds"] == 0.25);
  r.failures.push_back("boom");
  CHECK_FALSE(r.ok());
  CHECK(r.to_json()["failures"][0] == "boom");
  std::filesystem::remove_all(dir);
}
