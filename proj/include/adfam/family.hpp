#ifndef ADFAM_FAMILY_HPP
#define ADFAM_FAMILY_HPP

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "adfam/config.hpp"
#include "adfam/primes.hpp"
#include "adfam/rat.hpp"

namespace adfam {

// Symbolic point t* = p^{-1/i} of the exceptional set S; manipulated only
// through integer power comparisons.
struct AlgebraicPoint {
    mpz_class p;          // prime
    unsigned long i = 1;  // root index, >= 1
};

// First k steps of the family at t: primes e_1..e_k and the running
// products f_j = e_1 * ... * e_j.
//
// Invariants: e nondecreasing, every e_j prime; f strictly increasing with
// f_{j+1} >= 2 f_j; e_j is the largest prime p with p * num^j <= den^j,
// or 2 when t^{-j} < 2.
struct FamilyPrefix {
    Rat t;
    std::vector<mpz_class> e;
    std::vector<mpz_class> f;
};

// Proof that N_t and N_{t'} share exactly `common`: e_v agrees below v_star
// and e_{v_star}(t) > e_{v_star}(t'), which (with monotonicity and the
// equal-factor-count lemma) pins the whole intersection.
struct IntersectionCertificate {
    Rat t;        // smaller point
    Rat t_prime;  // larger point
    unsigned v_star = 0;
    std::vector<mpz_class> common;  // { f_v(t) : v < v_star }
};

// e_j(t): largest prime <= t^{-j}, or 2 when t^{-j} < 2. Exact.
mpz_class e_of(PrimeOracle& po, const Rat& t, unsigned long j,
               const Config& cfg = default_config());

// First `depth` steps of the family at t (depth_cap enforced).
FamilyPrefix family_prefix(PrimeOracle& po, const Rat& t, unsigned depth,
                           const Config& cfg = default_config());

// Rational membership in S = { p^{-1/i} }: exactly the t = 1/p, p prime.
std::optional<AlgebraicPoint> in_S(const Rat& t);

// e_j at the symbolic point p^{-1/i}: largest prime q with q^i <= p^j,
// or 2 when p^j < 2^i.
mpz_class e_at_algebraic(PrimeOracle& po, const AlgebraicPoint& pt, unsigned long j,
                         const Config& cfg = default_config());

// Right-limit value of e_j as t decreases to p^{-1/i}: largest prime q with
// q^i < p^j (strict), or 2 when no such prime >= 2 exists. Differs from
// e_at_algebraic exactly when p^{j/i} is itself prime (j = i).
mpz_class e_right_limit(PrimeOracle& po, const AlgebraicPoint& pt, unsigned long j,
                        const Config& cfg = default_config());

// First-mismatch certificate for t < t_prime; resource_error if no mismatch
// shows up within depth_cap steps (the matched depth is named in the message).
IntersectionCertificate intersection_certificate(PrimeOracle& po, const Rat& t,
                                                 const Rat& t_prime, unsigned depth_cap,
                                                 const Config& cfg = default_config());

// Decides exactly whether (t'/t)^v - 1 > t'^v * (succ(e_v(t')) - e_v(t')).
// When true, the gap inequality chain forces e_v(t) > e_v(t').
bool gap_inequality_check(PrimeOracle& po, const Rat& t, const Rat& t_prime,
                          unsigned long v, const Config& cfg = default_config());

// Whether m is one of the f_j(t). Terminates because f_j >= 2^j.
bool family_contains(PrimeOracle& po, const Rat& t, const mpz_class& m,
                     const Config& cfg = default_config());

namespace detail {
// Prefix construction without the public depth_cap check (internal callers
// that need one extra step, e.g. tail bounds, go through here).
FamilyPrefix prefix_unchecked(PrimeOracle& po, const Rat& t, unsigned depth,
                              const Config& cfg);

// Incremental prefix: extends e/f lazily, reusing the power ladder.
class PrefixCursor {
public:
    PrefixCursor(PrimeOracle& po, Rat t, const Config& cfg);
    // 1-based; extends as needed.
    const mpz_class& e(unsigned long j);
    const mpz_class& f(unsigned long j);
    unsigned long computed() const { return e_.size(); }
    const Rat& t() const { return t_; }

private:
    void extend_to(unsigned long j);
    PrimeOracle* po_;
    Rat t_;
    const Config* cfg_;
    mpz_class num_pow_{1}, den_pow_{1};
    std::vector<mpz_class> e_, f_;
};
} // namespace detail

} // namespace adfam

#endif
