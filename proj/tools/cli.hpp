// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. `invoke` is the whole program minus process I/O;
// main() only forwards argv and prints.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wmod/numerics.hpp"

namespace wmod::cli {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help and --version; `what()` is the text to print.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Json, Csv, Human };

namespace exit_code {
constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;
}  // namespace exit_code

struct RunConfig {
    std::string command;
    /// Command parameters under canonical names; echoed as "inputs".
    Json params = Json::object();
    OutputFormat format = OutputFormat::Json;
    TolerancePolicy tol;
    std::uint64_t seed = 0;
};

/// Rows for CSV output and for the "rows" array of sweep commands.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct RunResult {
    Json envelope;
    Table table;
    int exit_code = exit_code::kOk;
};

/// "1.5", "-2i", "0.3-1.2i", "1e-3+4i", "(re,im)". Throws UsageError.
Complex parse_complex(std::string_view text);

/// `args` excludes the program name. Throws UsageError naming the offending
/// flag, or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

/// Library errors propagate; see `invoke` for the exit-code mapping.
RunResult run(const RunConfig& config);

std::string render(const RunResult& result, OutputFormat format);

struct Invocation {
    int exit_code = exit_code::kOk;
    std::string out;
    std::string err;
};

Invocation invoke(const std::vector<std::string>& args);

}  // namespace wmod::cli
