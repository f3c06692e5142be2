#pragma once

#include <ostream>

namespace netdesign {

// Exit codes: 0 ok, 1 malformed input or usage, 2 singular system,
// 3 no design solution, 4 some player irrational, 5 other solver failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace netdesign
