#pragma once

#include <iosfwd>

namespace stgray {

/// Entry point of the `stgray` tool. Returns 0 on success, 1 when a
/// verification fails or an experiment reports a discrepancy, 2 on usage or
/// input errors.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace stgray
