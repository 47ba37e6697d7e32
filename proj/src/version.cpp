#include "syt/version.hpp"

namespace syt {

const char* version() { return SYT_VERSION; }

} // namespace syt
