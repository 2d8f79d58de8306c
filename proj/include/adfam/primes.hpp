#ifndef ADFAM_PRIMES_HPP
#define ADFAM_PRIMES_HPP

#include <cstdint>
#include <shared_mutex>
#include <vector>

#include <gmpxx.h>

#include "adfam/config.hpp"

namespace adfam {

// Exact maximum of (succ(p) - p) / p over primes p in [range_lo, range_hi].
// succ(p) may lie beyond range_hi. Ties resolve to the smallest p.
struct GapStats {
    std::uint64_t range_lo = 0;
    std::uint64_t range_hi = 0;
    mpz_class max_ratio_num;  // reduced
    mpz_class max_ratio_den;
    mpz_class argmax_p;
};

// Prime predecessor/successor oracle.
//
// A base table of small primes grows monotonically by doubling; answers are
// derived from it either directly, by sieving a window around the query
// (complete sieving while the window's root stays inside the base table),
// or, above the configured sieve ceiling, by scanning with a deterministic
// Miller-Rabin test (fixed base sets, no randomness). Concurrent queries are
// safe; growth of the base table is exclusive and never changes an answer
// already returned.
class PrimeOracle {
public:
    explicit PrimeOracle(std::uint64_t sieve_ceiling = default_config().sieve_ceiling);

    PrimeOracle(const PrimeOracle&) = delete;
    PrimeOracle& operator=(const PrimeOracle&) = delete;

    // Largest prime <= n. Requires n >= 2 (domain_error otherwise).
    mpz_class prev_prime(const mpz_class& n);
    std::uint64_t prev_prime(std::uint64_t n);

    // Smallest prime > p. Requires p >= 2.
    mpz_class succ_prime(const mpz_class& p);
    std::uint64_t succ_prime(std::uint64_t p);

    // Exact max prime-gap ratio over [lo, hi]; requires 2 <= lo < hi and
    // hi within the sieve ceiling. domain_error if the range holds no prime.
    GapStats gap_stats(std::uint64_t lo, std::uint64_t hi);

    // Deterministic primality: trial division then Miller-Rabin with fixed
    // bases (provably exact below 3.3e24, conjecturally exact beyond).
    static bool is_prime(const mpz_class& n);
    static bool is_prime_u64(std::uint64_t n);

    std::uint64_t sieve_limit() const;  // current base-table extent
    std::uint64_t sieve_ceiling() const { return ceiling_; }

private:
    void ensure_base(std::uint64_t n);  // grow base table to cover n (doubling)

    // Window scans; both return 0-sized mpz sentinel handling via bool.
    bool window_prev(const mpz_class& hi_incl, std::uint64_t span, bool complete,
                     mpz_class& out);
    bool window_next(const mpz_class& lo_incl, std::uint64_t span, bool complete,
                     mpz_class& out);

    mutable std::shared_mutex mtx_;
    std::vector<std::uint32_t> base_;   // primes <= base_limit_, ascending
    std::uint64_t base_limit_ = 0;
    std::uint64_t ceiling_;
};

} // namespace adfam

#endif
