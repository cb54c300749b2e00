#pragma once

#include <iosfwd>

namespace hx {

// Exit status: 0 success, 1 validation failure, 2 input error.
int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hx
