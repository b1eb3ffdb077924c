#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcg {

/// Runs the command-line tool on the given arguments (program name
/// excluded). Exit status contract: 0 success, 1 domain failure (predicate
/// false, lemma violation, solver failure), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcg
