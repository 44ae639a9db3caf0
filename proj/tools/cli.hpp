#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convexa::cli {

// Exit codes: 0 holds / found nothing, 1 fails / counterexample,
// 2 usage, input, size or budget error.
enum Exit { ok = 0, fails = 1, error = 2 };

// args[0] is the program name.  The report goes to `out` in one piece,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace convexa::cli
