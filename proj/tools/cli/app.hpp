#pragma once

#include <iosfwd>

namespace cmm::cli {

/// Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmm::cli
