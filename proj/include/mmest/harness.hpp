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

#pragma once

// Trial fan-out and report files. Results are stored by trial index, so
// outputs never depend on the thread count or on completion order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmest {

using json = nlohmann::ordered_json;

// Calls f(i) for i in [0, count) on `threads` workers; returns results in
// index order. The exception of the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::uint64_t count, int threads, F&& f)
    -> std::vector<std::invoke_result_t<F&, std::uint64_t>> {
  using R = std::invoke_result_t<F&, std::uint64_t>;
  std::vector<R> out(count);
  const int workers = static_cast<int>(
      std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), 1,
                                std::max<std::uint64_t>(count, 1)));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::mutex mu;
  std::uint64_t fail_at = count;
  std::exception_ptr fail;
  auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < fail_at) {
          fail_at = i;
          fail = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (fail) std::rethrow_exception(fail);
  return out;
}

// Shortest round-trip text for a double; "inf"/"nan" spelled out.
inline std::string fmt_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw std::logic_error("csv row width mismatch");
    rows_.push_back(std::move(row));
  }

  std::size_t size() const { return rows_.size(); }

  std::string str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += ',';
        out += csv_field(r[i]);
      }
      out += '\n';
    };
    line(header_);
    for (auto& r : rows_) line(r);
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline constexpr int kReportSchemaVersion = 1;

// One run: config echo, per-trial rows, summary, failure list. Wall time is
// kept out of the CSV/JSON pair and written to a separate timing file.
struct RunReport {
  std::string command;
  json config = json::object();
  CsvTable rows{{"trial"}};
  json summary = json::object();
  std::vector<std::string> failures;
  double wall_seconds = 0.0;

  bool ok() const { return failures.empty(); }

  json to_json() const {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = command;
    j["config"] = config;
    j["summary"] = summary;
    j["failures"] = failures;
    j["ok"] = ok();
    return j;
  }
};

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << s;
}

// Writes <stem>.csv, <stem>.json and <stem>.timing.json under dir.
inline void write_report(const RunReport& r, const std::filesystem::path& dir,
                         const std::string& stem) {
  write_text(dir / (stem + ".csv"), r.rows.str());
  write_text(dir / (stem + ".json"), r.to_json().dump(2) + "\n");
  json t;
  t["wall_seconds"] = r.wall_seconds;
  write_text(dir / (stem + ".timing.json"), t.dump(2) + "\n");
}

}  // namespace mmest
