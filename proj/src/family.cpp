#include "adfam/family.hpp"

#include <cassert>
#include <string>
#include <utility>

#include "adfam/errors.hpp"

namespace adfam {

namespace {

void check_bits(const mpz_class& z, const Config& cfg, const char* what) {
    if (mpz_sizeinbase(z.get_mpz_t(), 2) > cfg.bigint_bit_ceiling) {
        throw resource_error(std::string(what) + " exceeds the bigint bit ceiling (" +
                             std::to_string(cfg.bigint_bit_ceiling) + " bits)");
    }
}

// Largest prime e with e * num^j <= den^j, or 2 when t^{-j} < 2. Powers are
// supplied by the caller so cursors can reuse the ladder.
mpz_class e_from_powers(PrimeOracle& po, const mpz_class& num_pow, const mpz_class& den_pow) {
    if (den_pow < 2 * num_pow) return mpz_class(2);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), den_pow.get_mpz_t(), num_pow.get_mpz_t());
    // p <= t^{-j}  <=>  p <= floor(t^{-j}) for integer p; equality at the
    // boundary keeps the half-open preimage convention.
    return po.prev_prime(q);
}

}  // namespace

namespace detail {

PrefixCursor::PrefixCursor(PrimeOracle& po, Rat t, const Config& cfg)
    : po_(&po), t_(std::move(t)), cfg_(&cfg) {}

void PrefixCursor::extend_to(unsigned long j) {
    while (e_.size() < j) {
        num_pow_ *= t_.num();
        den_pow_ *= t_.den();
        check_bits(den_pow_, *cfg_, "t^-j");
        mpz_class e = e_from_powers(*po_, num_pow_, den_pow_);
        mpz_class f = f_.empty() ? e : mpz_class(f_.back() * e);
        check_bits(f, *cfg_, "f_j");
        e_.push_back(std::move(e));
        f_.push_back(std::move(f));
    }
}

const mpz_class& PrefixCursor::e(unsigned long j) {
    assert(j >= 1);
    extend_to(j);
    return e_[j - 1];
}

const mpz_class& PrefixCursor::f(unsigned long j) {
    assert(j >= 1);
    extend_to(j);
    return f_[j - 1];
}

FamilyPrefix prefix_unchecked(PrimeOracle& po, const Rat& t, unsigned depth,
                              const Config& cfg) {
    PrefixCursor cur(po, t, cfg);
    cur.e(depth);
    FamilyPrefix fp{t, {}, {}};
    fp.e.reserve(depth);
    fp.f.reserve(depth);
    for (unsigned long j = 1; j <= depth; ++j) {
        fp.e.push_back(cur.e(j));
        fp.f.push_back(cur.f(j));
    }
    return fp;
}

}  // namespace detail

mpz_class e_of(PrimeOracle& po, const Rat& t, unsigned long j, const Config& cfg) {
    if (j == 0) throw domain_error("e_of requires j >= 1");
    if (j * mpz_sizeinbase(t.den().get_mpz_t(), 2) > cfg.bigint_bit_ceiling) {
        throw resource_error("t^-j exceeds the bigint bit ceiling (" +
                             std::to_string(cfg.bigint_bit_ceiling) + " bits)");
    }
    mpz_class num_pow, den_pow;
    mpz_pow_ui(num_pow.get_mpz_t(), t.num().get_mpz_t(), j);
    mpz_pow_ui(den_pow.get_mpz_t(), t.den().get_mpz_t(), j);
    return e_from_powers(po, num_pow, den_pow);
}

FamilyPrefix family_prefix(PrimeOracle& po, const Rat& t, unsigned depth,
                           const Config& cfg) {
    if (depth == 0) throw domain_error("family_prefix requires depth >= 1");
    if (depth > cfg.depth_cap) {
        throw resource_error("family depth " + std::to_string(depth) +
                             " exceeds the depth cap (" + std::to_string(cfg.depth_cap) + ")");
    }
    return detail::prefix_unchecked(po, t, depth, cfg);
}

std::optional<AlgebraicPoint> in_S(const Rat& t) {
    // A reduced a/b has (a/b)^{-i} = b^i/a^i prime only if a = 1 and b^i is
    // prime, which forces i = 1 and b prime.
    if (t.num() != 1) return std::nullopt;
    if (!PrimeOracle::is_prime(t.den())) return std::nullopt;
    return AlgebraicPoint{t.den(), 1};
}

namespace {

// Shared core of the two-sided and right-limit values at p^{-1/i}:
// largest prime q with q^i <= X (strict = false) or q^i < X (strict = true),
// with the <2 clause when no admissible prime exists.
mpz_class e_algebraic_impl(PrimeOracle& po, const AlgebraicPoint& pt, unsigned long j,
                           bool strict, const Config& cfg) {
    if (j == 0) throw domain_error("e index must be >= 1");
    if (pt.i == 0) throw domain_error("algebraic point requires i >= 1");
    if (!PrimeOracle::is_prime(pt.p)) {
        throw domain_error("algebraic point base " + pt.p.get_str() + " is not prime");
    }
    if (j * mpz_sizeinbase(pt.p.get_mpz_t(), 2) > cfg.bigint_bit_ceiling) {
        throw resource_error("p^j exceeds the bigint bit ceiling");
    }
    mpz_class x;
    mpz_pow_ui(x.get_mpz_t(), pt.p.get_mpz_t(), j);
    mpz_class root;
    const int exact = mpz_root(root.get_mpz_t(), x.get_mpz_t(), pt.i);
    // q^i <= X  <=>  q <= floor(X^{1/i}); the strict variant excludes an
    // exact power.
    mpz_class bound = root;
    if (strict && exact != 0) bound -= 1;
    if (bound < 2) return mpz_class(2);
    return po.prev_prime(bound);
}

}  // namespace

mpz_class e_at_algebraic(PrimeOracle& po, const AlgebraicPoint& pt, unsigned long j,
                         const Config& cfg) {
    return e_algebraic_impl(po, pt, j, /*strict=*/false, cfg);
}

mpz_class e_right_limit(PrimeOracle& po, const AlgebraicPoint& pt, unsigned long j,
                        const Config& cfg) {
    return e_algebraic_impl(po, pt, j, /*strict=*/true, cfg);
}

IntersectionCertificate intersection_certificate(PrimeOracle& po, const Rat& t,
                                                 const Rat& t_prime, unsigned depth_cap,
                                                 const Config& cfg) {
    if (!(t < t_prime)) {
        throw domain_error("intersection_certificate requires t < t_prime, got " + t.str() +
                           " vs " + t_prime.str());
    }
    detail::PrefixCursor a(po, t, cfg);
    detail::PrefixCursor b(po, t_prime, cfg);
    IntersectionCertificate cert{t, t_prime, 0, {}};
    for (unsigned long v = 1; v <= depth_cap; ++v) {
        const mpz_class& ea = a.e(v);
        const mpz_class& eb = b.e(v);
        if (ea == eb) {
            cert.common.push_back(a.f(v));
            continue;
        }
        // e is nonincreasing in t, so the first mismatch must favor t.
        if (ea < eb) {
            throw std::logic_error("monotonicity violated at v=" + std::to_string(v) +
                                   " for " + t.str() + " vs " + t_prime.str());
        }
        cert.v_star = static_cast<unsigned>(v);
        return cert;
    }
    throw resource_error("no e-mismatch within depth cap " + std::to_string(depth_cap) +
                         " for " + t.str() + " vs " + t_prime.str() + " (prefixes agree to depth " +
                         std::to_string(depth_cap) + ")");
}

bool gap_inequality_check(PrimeOracle& po, const Rat& t, const Rat& t_prime,
                          unsigned long v, const Config& cfg) {
    if (!(t < t_prime)) {
        throw domain_error("gap_inequality_check requires t < t_prime");
    }
    if (v == 0) throw domain_error("gap_inequality_check requires v >= 1");
    const mpz_class ev = e_of(po, t_prime, v, cfg);
    const mpz_class gap = po.succ_prime(ev) - ev;
    // (t'/t)^v - 1 > t'^v * gap, decided in exact rational arithmetic.
    mpq_class ratio(t_prime.num() * t.den(), t_prime.den() * t.num());
    ratio.canonicalize();
    mpq_class lhs = 1;
    for (unsigned long k = 0; k < v; ++k) lhs *= ratio;
    lhs -= 1;
    mpq_class tp(t_prime.num(), t_prime.den());
    tp.canonicalize();
    mpq_class rhs = 1;
    for (unsigned long k = 0; k < v; ++k) rhs *= tp;
    rhs *= mpq_class(gap);
    return lhs > rhs;
}

bool family_contains(PrimeOracle& po, const Rat& t, const mpz_class& m, const Config& cfg) {
    if (m < 2) return false;
    detail::PrefixCursor cur(po, t, cfg);
    // f_j >= 2^j bounds the search depth by the bit length of m.
    const unsigned long max_depth = mpz_sizeinbase(m.get_mpz_t(), 2) + 1;
    for (unsigned long j = 1; j <= max_depth; ++j) {
        const mpz_class& fj = cur.f(j);
        if (fj == m) return true;
        if (fj > m) return false;
    }
    return false;
}

} // namespace adfam
