#ifndef CONTRA_TESTS_PROCESS_HPP_
#define CONTRA_TESTS_PROCESS_HPP_

#include <string>

namespace process {

struct Result {
  int exit_code = -1;
  std::string out;  // stdout only
};

// Runs `command` through the shell and captures stdout.
Result run(const std::string& command);

std::string read_file(const std::string& path);

}  // namespace process

#endif  // CONTRA_TESTS_PROCESS_HPP_
