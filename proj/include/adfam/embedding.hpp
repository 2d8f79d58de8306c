#ifndef ADFAM_EMBEDDING_HPP
#define ADFAM_EMBEDDING_HPP

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "adfam/config.hpp"
#include "adfam/family.hpp"
#include "adfam/primes.hpp"
#include "adfam/rat.hpp"

namespace adfam {

// Exact nonnegative dyadic value: a normalized finite sum of powers 2^{-e}.
// Exponents are kept strictly increasing with carries resolved, so two
// values compare like binary expansions. Exponents can exceed any machine
// word (indices f_j do), which is why no numerator is ever materialized.
class DyadicSum {
public:
    DyadicSum() = default;
    static DyadicSum pow2(mpz_class neg_exponent);  // value 2^{-neg_exponent}

    void add_pow(mpz_class neg_exponent);  // += 2^{-e}, carries resolved
    void add(const DyadicSum& other);

    bool is_zero() const { return exps_.empty(); }
    // -1, 0, +1 for <, ==, >.
    int cmp(const DyadicSum& other) const;

    const std::vector<mpz_class>& exponents() const { return exps_; }

    friend bool operator==(const DyadicSum& a, const DyadicSum& b) {
        return a.exps_ == b.exps_;
    }
    friend bool operator<(const DyadicSum& a, const DyadicSum& b) {
        return a.cmp(b) < 0;
    }
    friend bool operator<=(const DyadicSum& a, const DyadicSum& b) {
        return a.cmp(b) <= 0;
    }

private:
    std::vector<mpz_class> exps_;  // strictly increasing
};

// Sparse exact truncation of an embedded vector: each entry e stands for
// coefficient 2^{-e} at coordinate index e. tail_bound_exp T certifies that
// the l1 mass of all omitted coordinates is <= 2^{-T}; absent means the
// vector is exact.
struct DyadicVector {
    std::vector<mpz_class> entries;  // strictly increasing
    std::optional<mpz_class> tail_bound_exp;
};

// n points with one coordinate index each such that the pairing matrix
// x_{w_j}^*(x_{t_i}-truncation) is diagonal with entries 2^{-w_i}: an exact
// linear-independence certificate.
struct IndependenceWitness {
    std::vector<Rat> points;
    std::vector<mpz_class> witness_indices;
    unsigned depth_used = 0;
};

// Boundary/limit selector for limit_point().
struct AtZero {};
struct AtOne {};
struct LeftAt {
    Rat t;  // must be a rational member of S, i.e. 1/p
};
struct RightAt {
    AlgebraicPoint pt;
};
using LimitKind = std::variant<AtZero, AtOne, LeftAt, RightAt>;

// Truncated embedding x_t: entries {f_1(t)..f_depth(t)},
// tail_bound_exp = f_{depth+1}(t) - 1 (valid since f_{u+1} >= 2 f_u).
DyadicVector embed(PrimeOracle& po, const Rat& t, unsigned depth,
                   const Config& cfg = default_config());

// Binary-digit construction: entry n for each 1-digit of t among the first
// `depth` digits (terminating expansion for dyadic t); tail bound 2^{-depth}.
DyadicVector baseline_embed(const Rat& t, unsigned depth);

// Exact l1 norm bracket: lower = sum of materialized coefficients,
// upper = lower + 2^{-tail_bound_exp}.
std::pair<DyadicSum, DyadicSum> l1_norm_bounds(const DyadicVector& v);

// Action of the j-th coordinate functional: 2^{-j} if j is an entry, else 0.
DyadicSum coordinate_pairing(const DyadicVector& v, const mpz_class& j);

// Diagonal witness for >= 2 distinct points: V = max pairwise v_star,
// witness_indices[i] = f_V(points[i]). The diagonality invariant is verified
// before returning.
IndependenceWitness independence_witness(PrimeOracle& po, const std::vector<Rat>& points,
                                         unsigned depth_cap,
                                         const Config& cfg = default_config());

// The four boundary values of the embedding:
//   AtZero  -> 0 (empty vector)
//   AtOne   -> entries {2^u : u <= depth}
//   LeftAt  -> embed(t*, depth)          (left continuity)
//   RightAt -> prefix products of the right-limit primes e_j^-
DyadicVector limit_point(PrimeOracle& po, const LimitKind& kind, unsigned depth,
                         const Config& cfg = default_config());

} // namespace adfam

#endif
