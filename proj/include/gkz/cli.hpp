#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gkz/json_io.hpp"

namespace gkz {

struct JobSpec {
  std::string command;
  std::string input;
  int truncation = 2;
  std::optional<std::size_t> samples;  // command default when unset
  std::uint64_t seed = 1;
  bool oracle = false;
};

enum ExitCode { ExitOk = 0, ExitFailure = 1, ExitNoRegularSimplex = 2, ExitSchema = 3 };

struct JobResult {
  int exit_code = ExitOk;
  Json report;        // set on success
  std::string error;  // set on failure
};

// Reads job.input and runs the command. Never throws for input errors.
JobResult run_job(const JobSpec& job);
// Same, with the parsed input document.
JobResult run_job(const JobSpec& job, const Json& input);

const std::vector<std::string>& cli_commands();

}  // namespace gkz
