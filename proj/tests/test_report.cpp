#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <set>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "weylwig/report.hpp"
#include "weylwig/threads.hpp"

using namespace weylwig;

TEST_CASE("report: default suites all pass on the reference grid") {
  const GridSpec g = make_grid(64, 8.0, 1.0);
  const CheckReport r = run_check_suites(g, {}, 0.0, 12345, 0);
  CHECK(r.all_pass());
  // six suites, none of them the slow quadrature one
  CHECK(r.entries.size() == 32);
  for (const CheckEntry& e : r.entries) {
    CHECK(e.name.rfind("xi-sqrt.", 0) != 0);
    CHECK(e.tolerance > 0.0);
  }
  CHECK(std::is_sorted(r.entries.begin(), r.entries.end(),
                       [](const CheckEntry& a, const CheckEntry& b) { return a.name < b.name; }));

  // names are unique
  std::set<std::string> names;
  for (const CheckEntry& e : r.entries) names.insert(e.name);
  CHECK(names.size() == r.entries.size());
}

TEST_CASE("report: xi-sqrt suite runs only when named") {
  const GridSpec g = make_grid(64, 8.0, 1.0);
  const CheckReport r = run_check_suites(g, {"xi-sqrt"}, 0.0, 12345, 0);
  CHECK(r.all_pass());
  CHECK(r.entries.size() == 6);
  bool has_pair_tol = false;
  for (const CheckEntry& e : r.entries) {
    CHECK(e.name.rfind("xi-sqrt.", 0) == 0);
    if (e.tolerance == 5e-2) has_pair_tol = true;
  }
  CHECK(has_pair_tol);
}

TEST_CASE("report: suite selection, dedupe, unknown names") {
  const GridSpec g = make_grid(64, 8.0, 1.0);
  const CheckReport once = run_check_suites(g, {"kernels"}, 0.0, 1, 0);
  const CheckReport twice = run_check_suites(g, {"kernels", "kernels"}, 0.0, 1, 0);
  CHECK(once.entries.size() == 5);
  CHECK(twice.entries.size() == once.entries.size());

  CHECK_THROWS_AS(run_check_suites(g, {"kernelz"}, 0.0, 1, 0), std::invalid_argument);
  try {
    run_check_suites(g, {"kernelz"}, 0.0, 1, 0);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("kernelz") != std::string::npos);
    CHECK(msg.find("phase-point") != std::string::npos);
  }

  const std::vector<std::string> known = known_suites();
  CHECK(known.size() == 7);
  CHECK(std::find(known.begin(), known.end(), "xi-sqrt") != known.end());
}

TEST_CASE("report: tolerance override rewrites every entry") {
  const GridSpec g = make_grid(64, 8.0, 1.0);
  const CheckReport loose = run_check_suites(g, {"kernels"}, 1e300, 2, 0);
  CHECK(loose.all_pass());
  for (const CheckEntry& e : loose.entries) CHECK(e.tolerance == 1e300);

  // nothing measures below 1e-30 across a whole suite
  const CheckReport strict = run_check_suites(g, {"symbol"}, 1e-30, 2, 0);
  CHECK_FALSE(strict.all_pass());
  for (const CheckEntry& e : strict.entries) CHECK(e.tolerance == 1e-30);
}

TEST_CASE("report: json is deterministic and well formed") {
  const GridSpec g = make_grid(64, 8.0, 1.0);
  const CheckReport r1 = run_check_suites(g, {"reps"}, 0.0, 777, 1);
  const CheckReport r2 = run_check_suites(g, {"reps"}, 0.0, 777, 1);
  const std::string j1 = check_report_json(r1);
  const std::string j2 = check_report_json(r2);
  CHECK(j1 == j2);

  const auto parsed = nlohmann::json::parse(j1);
  CHECK(parsed["grid"]["N"] == 64);
  CHECK(parsed["all_pass"] == true);
  REQUIRE(parsed["entries"].is_array());
  CHECK(parsed["entries"].size() == r1.entries.size());
  CHECK(parsed["entries"][0].contains("name"));
  CHECK(parsed["entries"][0].contains("measured"));
  CHECK(parsed["entries"][0].contains("tolerance"));
  CHECK(parsed["entries"][0].contains("pass"));
}

TEST_CASE("threads: resolution order is argument, env, default") {
  unsetenv("WEYLWIG_THREADS");
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(1) == 1);
  CHECK(resolve_threads(0) == 1);
  CHECK(resolve_threads(-4) == 1);

  setenv("WEYLWIG_THREADS", "5", 1);
  CHECK(resolve_threads(0) == 5);
  CHECK(resolve_threads(2) == 2);  // explicit argument wins

  setenv("WEYLWIG_THREADS", "garbage", 1);
  CHECK(resolve_threads(0) == 1);
  setenv("WEYLWIG_THREADS", "-2", 1);
  CHECK(resolve_threads(0) == 1);
  unsetenv("WEYLWIG_THREADS");
}

TEST_CASE("threads: parallel_for covers [0, n) exactly once") {
  for (const int threads : {1, 3, 8}) {
    for (const std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{7},
                                std::size_t{64}, std::size_t{65}}) {
      std::vector<int> hits(n, 0);
      std::mutex m;
      parallel_for(n, threads, [&](std::size_t b, std::size_t e) {
        std::lock_guard<std::mutex> lock(m);
        for (std::size_t i = b; i < e; ++i) ++hits[i];
      });
      for (std::size_t i = 0; i < n; ++i) CHECK(hits[i] == 1);
    }
  }
}
