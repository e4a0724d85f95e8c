#pragma once

#include <ostream>

namespace treebraid::cli {

// Runs one `treebraid` invocation. JSON goes to `out`, diagnostics to `err`.
// Exit codes: 0 ok, 1 domain or usage error, 2 budget exceeded, 3 verification failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace treebraid::cli
