#ifndef ADFAM_ERRORS_HPP
#define ADFAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adfam {

// Exit-code taxonomy: domain_error -> 1, resource_error -> 2.
// Verification failures are reported through SuiteResult, not exceptions.

// Input outside an operation's domain (t not in (0,1), n < 2, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured cap was exceeded (depth cap, bigint bit ceiling, sieve range).
// The message names the cap so callers can tell truncation from misuse.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace adfam

#endif
