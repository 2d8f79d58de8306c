#ifndef ADFAM_CONFIG_HPP
#define ADFAM_CONFIG_HPP

#include <cstdint>

namespace adfam {

// Process-wide resource limits. Defaults match the CLI defaults; every
// operation that can blow up (deep prefixes, huge integers, sieve range)
// checks against these and raises resource_error instead of running away.
struct Config {
    unsigned depth_cap = 64;                       // max family depth per call
    std::uint64_t bigint_bit_ceiling = 1u << 20;   // max bits of any f_j or t^-j
    std::uint64_t sieve_ceiling = 1ull << 32;      // above this, prev/succ scan with a primality test
};

inline const Config& default_config() {
    static const Config cfg{};
    return cfg;
}

} // namespace adfam

#endif
