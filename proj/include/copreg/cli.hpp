#pragma once

namespace copreg {

// Entry point for the copreg command-line tool. Returns the process
// exit code: 0 on success, 2 on usage/config/data errors, 1 on
// unexpected failures.
int cli_main(int argc, const char* const* argv);

}  // namespace copreg
