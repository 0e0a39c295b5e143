#pragma once

#include <ostream>

#include "klab/config.hpp"

namespace klab::cli {

/// Runs one `klab` invocation. Returns 0 on success, 1 on domain errors and
/// 2 on usage errors.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const EnvLookup& env);

}  // namespace klab::cli
