#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msp {

/// Entry point of the zhmsp tool, with streams injected for testing.
/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace msp
