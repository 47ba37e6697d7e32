#pragma once

namespace syt {

/// Library version string, e.g. "1.0.0".
const char* version();

} // namespace syt
