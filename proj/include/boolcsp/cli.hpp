#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boolcsp {

/// Runs the command line (without the program name). Exit codes: 0 ok,
/// 1 domain failure (not in class, no witness, failed verification,
/// non-affine input to the affine counter ...), 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace boolcsp
