#pragma once

#include <ostream>

// Whole CLI behind one call so tests can drive it in-process.
// Returns 0 on success, 2 on usage/domain/precondition errors, 1 on anything else.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
