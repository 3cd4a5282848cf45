// Runs criteria 1-10 with the default verify configuration and prints one
// line per criterion. Exits nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "mtf/verify.hpp"

using namespace mtf;

namespace {

struct Limit {
  int criterion;
  double seconds;
};

constexpr Limit kLimits[] = {{1, 30}, {2, 60}, {3, 30}, {4, 300}, {5, 10},
                             {6, 60}, {7, 300}, {8, 120}, {9, 120}};

}  // namespace

int main() {
  const VerifyConfig cfg;
  const DeskLaws laws = load_desk_laws((std::filesystem::path(MTF_DATA_DIR) / "laws").string());
  const std::vector<CheckEntry> checks = all_checks();
  int failures = 0;

  for (const Limit& limit : kLimits) {
    CheckResult result;
    const auto start = std::chrono::steady_clock::now();
    try {
      for (const CheckEntry& entry : checks)
        if (entry.criterion == limit.criterion) result = entry.run(cfg, laws);
    } catch (const std::exception& e) {
      result.criterion = limit.criterion;
      result.passed = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= limit.seconds;
    const bool ok = result.passed && in_time;
    if (!ok) ++failures;
    std::printf("criterion %d: %s  %s (%.2f s, limit %.0f s)%s\n", limit.criterion, ok ? "PASS" : "FAIL",
                result.name.c_str(), secs, limit.seconds, in_time ? "" : " over time");
    std::printf("  %s\n", result.detail.c_str());
    std::fflush(stdout);
  }

  const std::string first = render_report(cfg, run_verify(cfg, laws));
  const std::string second = render_report(cfg, run_verify(cfg, laws));
  const bool same = first == second;
  if (!same) ++failures;
  std::printf("criterion 10: %s  determinism (%zu-byte reports %s)\n", same ? "PASS" : "FAIL", first.size(),
              same ? "identical" : "differ");

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
