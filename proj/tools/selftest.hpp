#pragma once

#include <ostream>

namespace kljn::tools {

// Quick invariant checks on small runs; prints one line per check.
bool run_selftest(std::ostream& out);

}  // namespace kljn::tools
