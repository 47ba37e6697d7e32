#include "syt/parallel.hpp"

#include <cstdlib>
#include <string>

namespace syt {

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  const char* env = std::getenv("SYT_THREADS");
  if (!env || !*env) return hw;
  try {
    const int requested = std::stoi(env);
    return requested > 0 ? requested : hw;
  } catch (const std::exception&) {
    return hw;
  }
}

} // namespace syt
