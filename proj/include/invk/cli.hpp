#pragma once

#include <json.hpp>
#include <optional>
#include <string>

namespace invk::cli {

using Json = nlohmann::json;

struct RunOptions {
  unsigned seed = 1;
  std::optional<int> cap_rounds;
  std::optional<int> cap_degree;
  std::optional<std::string> order;  // order of the y variables
  bool timing = false;               // adds elapsed_ms to the result
};

// Commands accepted by run.
const std::vector<std::string>& commands();

// Runs one job. The result embeds the job so that verify can rebuild it.
// Throws InputError, UnsupportedBranch, BudgetExhausted or MathError.
Json run(const std::string& command, const Json& job, const RunOptions& opts = {});

// Re-checks a result document; level is "fast" or "full". Failures are
// report entries, never exceptions.
Json verify(const Json& result, const std::string& level = "fast", unsigned seed = 1);

// FNV-1a over the canonical serialization of the job, command and options.
std::string inputs_digest(const std::string& command, const Json& job, const RunOptions& opts);

// Exit code for an exception thrown by run: 2 unsupported branch, 3 budget
// exhausted, 4 input error, 1 otherwise.
int exit_code(const std::exception& e);
std::string error_kind(const std::exception& e);

// Full command line: invk <command> <file> [flags].
int main(int argc, char** argv);

}  // namespace invk::cli
