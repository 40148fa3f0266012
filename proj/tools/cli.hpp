#pragma once

#include <iosfwd>
#include <string>

namespace gsetpn::cli {

inline constexpr const char* kToolName = "gsetpn";
inline constexpr const char* kToolVersion = "1.0.0";

/// Exit status: 0 affirmative verdict or success, 1 negative verdict,
/// 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gsetpn::cli
