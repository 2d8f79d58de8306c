#ifndef ADFAM_VERIFY_HPP
#define ADFAM_VERIFY_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adfam/config.hpp"
#include "adfam/primes.hpp"

namespace adfam {

enum class Scale { small, full };

struct SuiteFailure {
    std::string case_desc;
    std::string inputs;
    std::string expected;
    std::string got;
};

struct SuiteResult {
    std::string suite_name;
    std::uint64_t cases_run = 0;
    std::vector<SuiteFailure> failures;  // empty <=> suite passed
    std::chrono::milliseconds elapsed{0};

    bool passed() const { return failures.empty(); }
};

// Suite names accepted by run_suite, in canonical order.
const std::vector<std::string>& suite_names();

// Runs one named invariant suite against independent brute-force oracles.
// Deterministic per (name, seed, scale). Unknown name -> domain_error.
SuiteResult run_suite(PrimeOracle& po, std::string_view name, std::uint64_t seed,
                      Scale scale, const Config& cfg = default_config());

} // namespace adfam

#endif
