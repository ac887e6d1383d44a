#pragma once

#include "thetalab/report.hpp"
#include "thetalab/theta.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace thetalab {

enum class OutputFormat { Text, Json };

struct RunConfig {
    std::string command;
    int N = 4;
    std::optional<int> order;  // default max(50, 8 * level)
    double tau_re = 0, tau_im = 1;
    double tol = 1e-9;
    int samples = 25;
    uint64_t seed = 0;
    OutputFormat format = OutputFormat::Text;
    std::string object = "theta-null";
    std::optional<int> k;
    std::string suite = "all";
    std::string family = "gammaN2N";

    cplx tau() const { return {tau_re, tau_im}; }
};

// Bad flags or a configuration outside the supported range; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checks RunConfig invariants for a series object of the given level and returns the order to use.
int series_order(const RunConfig& cfg, int level);

// Records of one verify suite, in a fixed order. Throws UsageError if the suite does not apply to N.
std::vector<IdentityRecord> run_suite(const std::string& suite, const RunConfig& cfg);
// Suite names that apply to N, in report order.
std::vector<std::string> suites_for(int N);

// Worker cap from THETA_LAB_THREADS (unset or invalid: hardware concurrency).
unsigned worker_count();

// args exclude the program name. Exit codes: 0 pass, 1 a check failed, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thetalab
