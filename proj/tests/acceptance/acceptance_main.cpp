/*
 * SPDX-License-Identifier: Apache-2.0
 */

// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hyqa/classical_metrics.hpp"
#include "hyqa/cli.hpp"
#include "hyqa/qasm.hpp"
#include "hyqa/quantum_metrics.hpp"
#include "hyqa/report.hpp"
#include "hyqa/scoring.hpp"
#include "oracles.hpp"

namespace {

using namespace hyqa;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const std::vector<std::string> kCorpus = {"bell.qasm", "ghz3.qasm", "qft4.qasm", "grover3.qasm",
                                          "teleport.qasm"};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool passed() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

QuantumCircuit corpus(const std::string& name) {
  return parse_qasm(testing::read_text(testing::fixture_path("corpus/" + name)), "corpus/" + name);
}

int exit_code(const std::vector<std::string>& args) {
  std::vector<std::string> all = {"hyqa"};
  all.insert(all.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : all) argv.push_back(a.data());
  std::ostringstream out, err;
  return main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
}

void severity_boundaries(Check& c) {
  const SeverityThresholds width{"circuit_width", 8, 15};
  for (double v : {1.0, 8.0}) c.expect(classify(v, width) == Severity::Level3, "level 3 range");
  for (double v : {9.0, 15.0}) c.expect(classify(v, width) == Severity::Level2, "level 2 range");
  for (double v : {16.0, 100.0}) c.expect(classify(v, width) == Severity::Level1, "level 1 range");
}

void densities(Check& c) {
  auto d = compute_densities(1, 2, 17);
  c.expect(d && d->dc1 == 5.0 && d->dc2 == 10.0 && d->dc3 == 85.0, "(1,2,17) -> (5,10,85)");
  std::mt19937 rng(1);
  std::uniform_int_distribution<std::size_t> count(0, 1000);
  for (int i = 0; i < 1000; ++i) {
    auto a = count(rng), b = count(rng), n = count(rng) + 1;
    auto r = compute_densities(a, b, n);
    c.expect(r && std::abs(r->dc1 + r->dc2 + r->dc3 - 100.0) <= 1e-9, "densities sum to 100");
  }
}

void profile_corners(Check& c) {
  const auto bands = ProfileBands::circuit_width();
  struct Corner {
    double dc1, dc2;
    int band;
    double quality;
  };
  const Corner corners[] = {
      {7, 15, 4, 100}, {20, 40, 1, 0}, {20.01, 40, 0, 0}, {10, 20, 3, 66}, {15, 30, 2, 33},
  };
  for (const auto& k : corners) {
    auto r = profile_quality(k.dc1, k.dc2, bands);
    c.expect(r.band == k.band, "band at corner");
    c.expect(std::abs(r.quality - k.quality) <= 1e-6, "quality at corner");
  }
}

void interpolation(Check& c) {
  auto r = profile_quality(8, 16, ProfileBands::circuit_width());
  c.expect(r.band == 3, "band 3");
  c.expect(std::abs(r.quality - 88.666667) <= 1e-4, "quality 88.666667");
}

void depth_oracle(Check& c) {
  const auto start = Clock::now();
  for (const auto& name : kCorpus) {
    auto circuit = corpus(name);
    c.expect(circuit_depth(circuit) == testing::dag_longest_path_depth(circuit), name);
  }
  c.expect(seconds_since(start) < 5.0, "runtime under 5 s");
}

void hand_verified(Check& c) {
  auto bell = compute_quantum_metrics(corpus("bell.qasm"));
  c.expect(bell.width == 2 && bell.depth == 3, "bell width and depth");
  c.expect(bell.gate_count_total == 2 && bell.gate_complexity_score == 3, "bell gates");
  c.expect(bell.measure_count == 2 && bell.nonterminal_measure_count == 0, "bell measures");
  auto teleport = compute_quantum_metrics(corpus("teleport.qasm"));
  c.expect(teleport.conditional_count == 2 && teleport.quantum_cyclomatic == 3, "teleport conditionals");
}

void monotonicity(Check& c) {
  const auto start = Clock::now();
  const auto bands = ProfileBands::circuit_width();
  std::mt19937 rng(10000);
  std::uniform_real_distribution<double> density(0, 100);
  std::uniform_real_distribution<double> fraction(0, 1);
  for (int i = 0; i < 10000; ++i) {
    const double d1 = density(rng), d2 = density(rng);
    const auto base = profile_quality(d1, d2, bands);
    for (const auto& lower : {profile_quality(d1 * fraction(rng), d2, bands),
                              profile_quality(d1, d2 * fraction(rng), bands)}) {
      c.expect(lower.band >= base.band, "band never decreases");
      c.expect(lower.quality >= base.quality, "quality never decreases");
    }
  }
  std::uniform_real_distribution<double> value(-50, 150);
  std::uniform_real_distribution<double> limit(0, 50);
  for (int i = 0; i < 10000; ++i) {
    const double t3 = limit(rng);
    const SeverityThresholds t{"p", t3, t3 + 1 + limit(rng)};
    const double v = value(rng);
    const auto s = classify(v, t);
    const int matches = (v <= t.level3_max) + (v > t.level3_max && v <= t.level2_max) +
                        (v > t.level2_max);
    const Severity expected = v <= t.level3_max   ? Severity::Level3
                              : v <= t.level2_max ? Severity::Level2
                                                  : Severity::Level1;
    c.expect(matches == 1 && s == expected, "classify total and exclusive");
  }
  c.expect(seconds_since(start) < 10.0, "runtime under 10 s");
}

std::string function_text(const std::string& name, int statements, int salt) {
  std::string text = "def " + name + "(a, b):\n";
  for (int i = 0; i < statements; ++i) {
    text += (i + salt) % 3 == 0 ? "    a = a + b\n" : (i + salt) % 3 == 1 ? "    if a:\n        b = f(a)\n"
                                                                          : "    return [a, b]\n";
  }
  return text;
}

void duplicate_oracle(Check& c) {
  std::mt19937 rng(500);
  std::uniform_int_distribution<int> statements(1, 20);
  std::uniform_int_distribution<int> salt(0, 2);
  std::uniform_int_distribution<int> file_count(1, 4);
  int compared = 0;
  for (int project = 0; project < 50; ++project) {
    std::vector<ClassicalFileFacts> files;
    std::size_t tokens = 0;
    const int n = file_count(rng);
    for (int f = 0; f < n; ++f) {
      files.push_back(analyze_source(function_text("f", statements(rng), salt(rng)) +
                                     function_text("g", statements(rng), salt(rng))));
      tokens += files.back().token_stream.size();
    }
    if (tokens > 500) continue;
    ++compared;
    std::vector<std::vector<std::string>> streams;
    for (const auto& f : files) streams.push_back(f.token_stream);
    for (std::size_t k : {std::size_t{10}, kDefaultShingleSize}) {
      c.expect(duplicate_ratios(files, k) == testing::brute_force_duplicate_ratios(streams, k),
               "shingle ratios equal oracle");
    }
  }
  c.expect(compared >= 10, "enough projects compared");
  const std::string text = function_text("clone", 12, 0);
  std::vector<ClassicalFileFacts> clones = {analyze_source(text, "a.py"), analyze_source(text, "b.py")};
  c.expect(duplicate_ratios(clones) == std::vector<double>{1.0, 1.0}, "verbatim clone ratio 1.0");
}

void end_to_end(Check& c) {
  testing::TempDir dir("acceptance");
  const auto root = dir.path() / "project";
  std::mt19937 rng(100);
  for (int i = 0; i < 100; ++i) {
    testing::write_text(root / "circuits" / ("c" + std::to_string(i) + ".qasm"),
                        testing::random_qasm(rng, 10, 80));
  }
  std::uniform_int_distribution<int> statements(3, 25);
  std::uniform_int_distribution<int> salt(0, 2);
  for (int i = 0; i < 50; ++i) {
    std::string text = "# module " + std::to_string(i) + "\n";
    for (int f = 0; f < 4; ++f) text += function_text("fn" + std::to_string(f), statements(rng), salt(rng));
    testing::write_text(root / "src" / ("m" + std::to_string(i) + ".py"), text);
  }
  const auto start = Clock::now();
  const auto first = dir.path() / "first.json";
  const auto second = dir.path() / "second.json";
  c.expect(exit_code({root.string(), "--format", "json", "--output", first.string()}) == kExitOk,
           "first run exit 0");
  c.expect(exit_code({root.string(), "--format", "json", "--output", second.string()}) == kExitOk,
           "second run exit 0");
  const double elapsed = seconds_since(start);
  const auto a = testing::read_text(first);
  c.expect(!a.empty() && a == testing::read_text(second), "byte-identical reports");
  c.expect(nlohmann::json::parse(a)["circuits"].size() == 100, "all circuits analyzed");
  c.expect(elapsed < 5.0, "runtime under 5 s");
}

void degenerate(Check& c) {
  testing::TempDir dir("degenerate");
  const auto classical = dir.path() / "classical";
  testing::write_text(classical / "a.py",
                      testing::read_text(testing::fixture_path("classical/branches.py")));
  const auto report_path = dir.path() / "r.json";
  c.expect(exit_code({classical.string(), "--format", "json", "--output", report_path.string()}) ==
               kExitOk,
           "classical-only exit 0");
  auto doc = nlohmann::json::parse(testing::read_text(report_path));
  for (const auto& p : doc["properties"]) {
    const auto scope = metric_scope(p["metric"].get<std::string>());
    const bool applicable = p["applicable"].get<bool>();
    c.expect(scope == ArtifactScope::Circuit ? !applicable : applicable,
             "circuit properties inapplicable, classical ones evaluated");
  }
  const auto empty = dir.path() / "empty";
  fs::create_directories(empty);
  c.expect(exit_code({empty.string(), "--format", "text"}) == kExitNoApplicable, "empty project exit 3");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"severity boundaries for circuit width", severity_boundaries},
      {"density percentages and sum invariant", densities},
      {"profile band corners", profile_corners},
      {"interpolated quality at (8, 16)", interpolation},
      {"depth equals dependency DAG longest path on corpus", depth_oracle},
      {"hand-verified Bell and teleportation metrics", hand_verified},
      {"profile monotonicity and total classification", monotonicity},
      {"duplicate ratios equal brute-force oracle", duplicate_oracle},
      {"end-to-end determinism and performance", end_to_end},
      {"degenerate projects", degenerate},
  };
  int failures = 0;
  for (const auto& [name, body] : criteria) {
    Check check;
    try {
      body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    if (check.passed()) {
      std::cout << "[PASS] " << name << "\n";
    } else {
      ++failures;
      std::cout << "[FAIL] " << name << ": " << check.failure() << "\n";
    }
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
