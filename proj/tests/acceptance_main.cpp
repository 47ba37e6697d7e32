// Runs every acceptance criterion with its pinned tolerance and prints one
// line per criterion. Exit status is nonzero when any criterion fails.

#include "syt/acceptance.hpp"

#include <exception>
#include <iostream>

int main() {
  try {
    const auto results = syt::run_acceptance();
    int failed = 0;
    for (const auto& r : results) {
      std::cout << syt::format_result(r) << '\n';
      if (!r.passed) ++failed;
    }
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance: " << e.what() << '\n';
    return 2;
  }
}
