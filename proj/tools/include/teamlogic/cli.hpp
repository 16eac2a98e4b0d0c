#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace teamlogic::cli {

enum ExitCode : int { Success = 0, Negative = 1, Usage = 2, Budget = 3 };

// Runs one command line. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SuiteInfo {
    std::string name;
    std::string theorem;
    std::string oracle;
};

std::vector<SuiteInfo> verify_suites();

struct VerifyOptions {
    int max_universe = 3;
    std::uint32_t seed = 1;
};

struct SuiteOutcome {
    SuiteInfo info;
    int cases = 0;
    int skipped = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

// Throws InvalidInput for an unknown suite name.
SuiteOutcome run_suite(const std::string& name, const VerifyOptions& options);

} // namespace teamlogic::cli
