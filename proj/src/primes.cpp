#include "adfam/primes.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <mutex>

#include "adfam/errors.hpp"

namespace adfam {

namespace {

constexpr std::uint64_t kBaseStart = 1u << 16;
constexpr std::uint64_t kBaseCap = 1u << 20;  // direct table answers below this

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    const auto sq = [](std::uint64_t x) { return static_cast<unsigned __int128>(x) * x; };
    while (r > 0 && sq(r) > n) --r;
    while (sq(r + 1) <= n) ++r;
    return r;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// One Miller-Rabin round; n odd, n > 2, n - 1 = d * 2^s.
bool mr_round_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// First 12 primes: exact for every 64-bit integer.
constexpr std::uint64_t kU64Bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool is_prime_u64_impl(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kU64Bases) {
        if (!mr_round_u64(n, a, d, s)) return false;
    }
    return true;
}

// First 13 primes certify every n below this bound (Sorenson-Webster).
const mpz_class& mr13_bound() {
    static const mpz_class b("3317044064679887385961981");
    return b;
}

constexpr unsigned long kMpzBases13[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
// Beyond the proven bound: first 25 primes. Deterministic; no composite is
// known to pass, so answers never change between runs.
constexpr unsigned long kMpzBases25[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                         43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool mr_round_mpz(const mpz_class& n, unsigned long a, const mpz_class& d,
                  unsigned long s, const mpz_class& n_minus_1) {
    mpz_class x;
    mpz_class base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

// Product of all primes <= 997; a single gcd knocks out small factors.
const mpz_class& small_primorial() {
    static const mpz_class prim = [] {
        mpz_class acc = 1;
        for (std::uint64_t p = 2; p <= 997; ++p) {
            if (is_prime_u64_impl(p)) acc *= static_cast<unsigned long>(p);
        }
        return acc;
    }();
    return prim;
}

bool is_prime_mpz_impl(const mpz_class& n) {
    if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64_impl(n.get_ui());
    if (mpz_even_p(n.get_mpz_t())) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), small_primorial().get_mpz_t());
    if (g != 1) return false;  // n > 997^2 here, so a small factor is decisive
    mpz_class n_minus_1 = n - 1;
    mpz_class d = n_minus_1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    if (n < mr13_bound()) {
        for (unsigned long a : kMpzBases13) {
            if (!mr_round_mpz(n, a, d, s, n_minus_1)) return false;
        }
    } else {
        for (unsigned long a : kMpzBases25) {
            if (!mr_round_mpz(n, a, d, s, n_minus_1)) return false;
        }
    }
    return true;
}

}  // namespace

bool PrimeOracle::is_prime(const mpz_class& n) { return is_prime_mpz_impl(n); }
bool PrimeOracle::is_prime_u64(std::uint64_t n) { return is_prime_u64_impl(n); }

PrimeOracle::PrimeOracle(std::uint64_t sieve_ceiling) : ceiling_(sieve_ceiling) {
    ensure_base(kBaseStart);
}

std::uint64_t PrimeOracle::sieve_limit() const {
    std::shared_lock lock(mtx_);
    return base_limit_;
}

void PrimeOracle::ensure_base(std::uint64_t n) {
    std::unique_lock lock(mtx_);
    if (n <= base_limit_) return;
    if (n > (1u << 28)) {
        throw resource_error("base prime table would exceed 2^28; lower the sieve ceiling");
    }
    std::uint64_t limit = std::max<std::uint64_t>(kBaseStart, base_limit_);
    while (limit < n) limit *= 2;  // doubling growth, answers below stay fixed
    std::vector<std::uint8_t> mark(limit + 1, 1);
    mark[0] = 0;
    if (limit >= 1) mark[1] = 0;
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (!mark[i]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i) mark[j] = 0;
    }
    std::vector<std::uint32_t> fresh;
    fresh.reserve(static_cast<std::size_t>(1.2 * static_cast<double>(limit) /
                                           std::log(std::max<std::uint64_t>(limit, 3))));
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (mark[i]) fresh.push_back(static_cast<std::uint32_t>(i));
    }
    base_ = std::move(fresh);
    base_limit_ = limit;
}

// Marks composites in [lo, lo+span) using base primes <= filter_bound.
// When the window contains a filter prime itself, that prime is not marked.
namespace {
void mark_window(const std::vector<std::uint32_t>& base, std::uint64_t filter_bound,
                 const mpz_class& lo, std::size_t span, std::vector<std::uint8_t>& comp) {
    comp.assign(span, 0);
    const bool lo_small = mpz_fits_ulong_p(lo.get_mpz_t());
    const std::uint64_t lo_u = lo_small ? lo.get_ui() : 0;
    for (std::uint32_t p : base) {
        if (p > filter_bound) break;
        std::uint64_t r = mpz_fdiv_ui(lo.get_mpz_t(), p);
        std::uint64_t idx = (r == 0) ? 0 : p - r;
        if (lo_small && lo_u + idx == p) idx += p;  // never mark p itself
        for (; idx < span; idx += p) comp[idx] = 1;
    }
}
}  // namespace

bool PrimeOracle::window_prev(const mpz_class& hi_incl, std::uint64_t span, bool complete,
                              mpz_class& out) {
    mpz_class lo = hi_incl - static_cast<unsigned long>(span - 1);
    if (lo < 2) lo = 2;
    const std::size_t len = static_cast<std::size_t>(mpz_class(hi_incl - lo + 1).get_ui());
    std::shared_lock lock(mtx_);
    const std::uint64_t filter =
        complete ? isqrt_u64(hi_incl.get_ui()) + 1
                 : std::min<std::uint64_t>(base_limit_, std::max<std::uint64_t>(1024, span));
    std::vector<std::uint8_t> comp;
    mark_window(base_, filter, lo, len, comp);
    for (std::size_t k = len; k-- > 0;) {
        if (comp[k]) continue;
        mpz_class cand = lo + static_cast<unsigned long>(k);
        if (cand < 2) break;
        if (complete || is_prime_mpz_impl(cand)) {
            out = std::move(cand);
            return true;
        }
    }
    return false;
}

bool PrimeOracle::window_next(const mpz_class& lo_incl, std::uint64_t span, bool complete,
                              mpz_class& out) {
    mpz_class lo = lo_incl;
    if (lo < 2) lo = 2;
    std::shared_lock lock(mtx_);
    const std::uint64_t filter =
        complete
            ? isqrt_u64(mpz_class(lo + static_cast<unsigned long>(span)).get_ui()) + 1
            : std::min<std::uint64_t>(base_limit_, std::max<std::uint64_t>(1024, span));
    std::vector<std::uint8_t> comp;
    mark_window(base_, filter, lo, static_cast<std::size_t>(span), comp);
    for (std::size_t k = 0; k < span; ++k) {
        if (comp[k]) continue;
        mpz_class cand = lo + static_cast<unsigned long>(k);
        if (complete || is_prime_mpz_impl(cand)) {
            out = std::move(cand);
            return true;
        }
    }
    return false;
}

mpz_class PrimeOracle::prev_prime(const mpz_class& n) {
    if (n < 2) {
        throw domain_error("prev_prime requires n >= 2, got " + n.get_str());
    }
    // Small queries straight from the table.
    if (mpz_fits_ulong_p(n.get_mpz_t()) && n.get_ui() <= kBaseCap) {
        const std::uint64_t nu = n.get_ui();
        ensure_base(nu);
        std::shared_lock lock(mtx_);
        auto it = std::upper_bound(base_.begin(), base_.end(), nu);
        assert(it != base_.begin());
        return mpz_class(*std::prev(it));
    }
    const bool within_ceiling = mpz_fits_ulong_p(n.get_mpz_t()) &&
                                n.get_ui() <= ceiling_ &&
                                isqrt_u64(n.get_ui()) < (1u << 28);
    if (within_ceiling) {
        ensure_base(isqrt_u64(n.get_ui()) + 1);
    }
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    std::uint64_t span = std::max<std::uint64_t>(512, 16 * bits);
    mpz_class hi = n, out;
    while (true) {
        if (window_prev(hi, span, within_ceiling, out)) return out;
        hi -= static_cast<unsigned long>(span);
        if (hi < 2) hi = 2;
        span *= 2;
    }
}

mpz_class PrimeOracle::succ_prime(const mpz_class& p) {
    if (p < 2) {
        throw domain_error("succ_prime requires p >= 2, got " + p.get_str());
    }
    if (mpz_fits_ulong_p(p.get_mpz_t()) && p.get_ui() < kBaseCap) {
        const std::uint64_t pu = p.get_ui();
        ensure_base(std::min<std::uint64_t>(2 * pu + 2, kBaseCap));
        {
            std::shared_lock lock(mtx_);
            auto it = std::upper_bound(base_.begin(), base_.end(), pu);
            if (it != base_.end()) return mpz_class(*it);
        }
        // pu just under the cap: fall through to the window path.
    }
    const bool small = mpz_fits_ulong_p(p.get_mpz_t());
    const std::size_t bits = mpz_sizeinbase(p.get_mpz_t(), 2);
    std::uint64_t span = std::max<std::uint64_t>(512, 16 * bits);
    mpz_class lo = p + 1, out;
    while (true) {
        const mpz_class window_hi = lo + static_cast<unsigned long>(span);
        const bool complete = small && window_hi <= ceiling_ &&
                              mpz_fits_ulong_p(window_hi.get_mpz_t()) &&
                              isqrt_u64(window_hi.get_ui()) < (1u << 28);
        if (complete) {
            ensure_base(isqrt_u64(window_hi.get_ui()) + 1);
        }
        if (window_next(lo, span, complete, out)) return out;
        lo += static_cast<unsigned long>(span);
        span *= 2;
    }
}

std::uint64_t PrimeOracle::prev_prime(std::uint64_t n) {
    return static_cast<std::uint64_t>(prev_prime(mpz_class(static_cast<unsigned long>(n))).get_ui());
}

std::uint64_t PrimeOracle::succ_prime(std::uint64_t p) {
    const mpz_class s = succ_prime(mpz_class(static_cast<unsigned long>(p)));
    if (!mpz_fits_ulong_p(s.get_mpz_t())) {
        throw resource_error("succ_prime(" + std::to_string(p) + ") does not fit 64 bits");
    }
    return static_cast<std::uint64_t>(s.get_ui());
}

GapStats PrimeOracle::gap_stats(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 2 || lo >= hi) {
        throw domain_error("gap_stats requires 2 <= lo < hi");
    }
    if (hi > ceiling_) {
        throw resource_error("gap_stats range end " + std::to_string(hi) +
                             " exceeds sieve ceiling " + std::to_string(ceiling_));
    }
    ensure_base(isqrt_u64(hi) + 1);

    GapStats st;
    st.range_lo = lo;
    st.range_hi = hi;
    std::uint64_t best_gap = 0, best_p = 0;
    std::uint64_t prev = 0;

    auto consider = [&](std::uint64_t p, std::uint64_t succ) {
        const std::uint64_t gap = succ - p;
        // gap/p > best_gap/best_p, exact
        const bool better =
            best_p == 0 || static_cast<unsigned __int128>(gap) * best_p >
                               static_cast<unsigned __int128>(best_gap) * p;
        if (better) {
            best_gap = gap;
            best_p = p;
        }
    };

    constexpr std::uint64_t kSeg = 1u << 20;
    std::shared_lock lock(mtx_);
    std::vector<std::uint8_t> comp;
    for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += kSeg) {
        const std::uint64_t seg_hi = std::min(hi, seg_lo + kSeg - 1);
        const std::size_t len = static_cast<std::size_t>(seg_hi - seg_lo + 1);
        comp.assign(len, 0);
        for (std::uint32_t p : base_) {
            const std::uint64_t pp = p;
            if (pp * pp > seg_hi) break;
            std::uint64_t first = ((seg_lo + pp - 1) / pp) * pp;
            if (first < pp * pp) first = pp * pp;
            for (std::uint64_t v = first; v <= seg_hi; v += pp) {
                comp[static_cast<std::size_t>(v - seg_lo)] = 1;
            }
        }
        for (std::size_t k = 0; k < len; ++k) {
            const std::uint64_t v = seg_lo + k;
            if (v < 2 || comp[k]) continue;
            if (prev != 0) consider(prev, v);
            prev = v;
        }
    }
    lock.unlock();

    if (prev == 0) {
        throw domain_error("gap_stats: no prime in [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    consider(prev, succ_prime(prev));

    mpz_class num(static_cast<unsigned long>(best_gap));
    mpz_class den(static_cast<unsigned long>(best_p));
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    st.max_ratio_num = num / g;
    st.max_ratio_den = den / g;
    st.argmax_p = mpz_class(static_cast<unsigned long>(best_p));
    return st;
}

} // namespace adfam
