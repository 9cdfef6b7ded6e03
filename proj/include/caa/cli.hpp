#pragma once

#include <iosfwd>

namespace caa {

/// Entry point of the `caa` tool. Returns 0 on success, 1 on validation or
/// evidence errors, 2 on usage errors. Results go to `out` when no --out file
/// is given; diagnostics go to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace caa
