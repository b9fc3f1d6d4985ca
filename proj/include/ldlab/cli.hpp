// cli.hpp -- command-line entry point (encode / corrupt / decode /
// experiment run / experiment replay / bench).
//
// Exit codes: 0 success, 1 experiment gate failure or replay mismatch,
// 2 usage or configuration error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ldlab {

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace ldlab
