// Runs every acceptance criterion and prints one pass/fail line for each.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "sinv/selftest.hpp"

int main(int argc, char** argv) {
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  if (argc > 1) jobs = static_cast<unsigned>(std::stoul(argv[1]));
  const auto report = sinv::run_selftest(sinv::Exec{jobs}, [](const sinv::CriterionResult& c) {
    std::printf("[%s] criterion %d: %s (%llu checks, %.2fs", c.pass() ? "PASS" : "FAIL", c.id, c.name.c_str(),
                static_cast<unsigned long long>(c.checks), c.seconds);
    if (c.limit_seconds > 0) std::printf(", limit %.0fs", c.limit_seconds);
    std::printf(")\n");
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  });
  std::printf("%s\n", report.all_pass() ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return report.all_pass() ? EXIT_SUCCESS : EXIT_FAILURE;
}
