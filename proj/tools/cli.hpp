#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace engelcf::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kBudget = 3, kInvariant = 4 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Invariant suites behind `verify`.
struct VerifyOptions {
    std::string suite = "all";
    std::size_t trials = 100;
    std::size_t maxn = 7;
    unsigned long long seed = 20170101;
};
std::vector<CheckLine> verify_random_suite(const VerifyOptions& options);

/// Golden reproductions behind `paper-examples`; only = "" runs all groups.
std::vector<CheckLine> paper_examples(const std::string& only);
const std::vector<std::string>& paper_example_groups();

}  // namespace engelcf::cli
