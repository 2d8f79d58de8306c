#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "adfam/errors.hpp"
#include "adfam/primes.hpp"

using namespace adfam;

namespace {

bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t trial_prev(std::uint64_t n) {
    while (!trial_prime(n)) --n;
    return n;
}

}  // namespace

TEST_CASE("prev_prime on the examples") {
    PrimeOracle po;
    CHECK(po.prev_prime(static_cast<std::uint64_t>(2)) == 2);    // 2 is prime
    CHECK(po.prev_prime(static_cast<std::uint64_t>(10)) == 7);   // scan 10,9,8,7
    CHECK(po.prev_prime(static_cast<std::uint64_t>(100)) == 97);
    CHECK_THROWS_AS(po.prev_prime(static_cast<std::uint64_t>(1)), domain_error);
}

TEST_CASE("succ_prime on the examples") {
    PrimeOracle po;
    CHECK(po.succ_prime(static_cast<std::uint64_t>(2)) == 3);
    CHECK(po.succ_prime(static_cast<std::uint64_t>(7)) == 11);
    CHECK(po.succ_prime(static_cast<std::uint64_t>(13)) == 17);  // via 14,15,16,17
    CHECK_THROWS_AS(po.succ_prime(static_cast<std::uint64_t>(1)), domain_error);
}

TEST_CASE("prev/succ agree with trial division over [2, 3000]") {
    PrimeOracle po;
    std::uint64_t last = 2;
    for (std::uint64_t n = 2; n <= 3000; ++n) {
        if (trial_prime(n)) last = n;
        CHECK(po.prev_prime(n) == last);
    }
    for (std::uint64_t p = 2; p <= 3000; ++p) {
        if (!trial_prime(p)) continue;
        CHECK(po.prev_prime(po.succ_prime(p) - 1) == p);
    }
}

TEST_CASE("gap_stats exact maxima") {
    PrimeOracle po;
    const GapStats a = po.gap_stats(2, 10);
    // primes 2,3,5,7 -> ratios 1/2, 2/3, 2/5, 4/7; max 2/3 at 3
    CHECK(a.max_ratio_num == 2);
    CHECK(a.max_ratio_den == 3);
    CHECK(a.argmax_p == 3);

    const GapStats b = po.gap_stats(100, 200);
    CHECK(b.max_ratio_num == 14);
    CHECK(b.max_ratio_den == 113);
    CHECK(b.argmax_p == 113);
}

TEST_CASE("gap_stats domain and resource errors") {
    PrimeOracle po;
    CHECK_THROWS_AS(po.gap_stats(24, 28), domain_error);   // no prime inside
    CHECK_THROWS_AS(po.gap_stats(10, 10), domain_error);
    CHECK_THROWS_AS(po.gap_stats(1, 10), domain_error);
    PrimeOracle small(1000);
    CHECK_THROWS_AS(small.gap_stats(2, 2000), resource_error);
}

TEST_CASE("block maxima nonincreasing for k in 4..12") {
    PrimeOracle po;
    mpz_class pn = 1, pd = 1;
    for (unsigned k = 4; k <= 12; ++k) {
        const GapStats g = po.gap_stats(1ull << k, 1ull << (k + 1));
        CHECK(g.max_ratio_num * pd <= pn * g.max_ratio_den);
        pn = g.max_ratio_num;
        pd = g.max_ratio_den;
    }
}

TEST_CASE("deterministic primality") {
    CHECK(PrimeOracle::is_prime_u64(2));
    CHECK(PrimeOracle::is_prime_u64((1ull << 61) - 1));  // Mersenne
    CHECK_FALSE(PrimeOracle::is_prime_u64(3215031751ull));  // strong pseudoprime to 2,3,5,7
    CHECK_FALSE(PrimeOracle::is_prime_u64(1));
    CHECK(PrimeOracle::is_prime(mpz_class("170141183460469231731687303715884105727")));  // 2^127-1
    CHECK_FALSE(PrimeOracle::is_prime(mpz_class("170141183460469231731687303715884105725")));
}

TEST_CASE("scan path above the sieve ceiling matches trial division") {
    PrimeOracle po(/*sieve_ceiling=*/4096);  // force the scanning fallback early
    for (std::uint64_t n : {5000ull, 65537ull, 1000003ull, 10000019ull}) {
        CHECK(po.prev_prime(n) == trial_prev(n));
    }
    // A 2^64-scale query exercises the mpz window path end to end.
    mpz_class big = (mpz_class(1) << 64) + 13;
    const mpz_class p = po.prev_prime(big);
    CHECK(p <= big);
    CHECK(PrimeOracle::is_prime(p));
    mpz_class q = po.succ_prime(p);
    CHECK(q > big);
    CHECK(PrimeOracle::is_prime(q));
}

TEST_CASE("concurrent queries see one consistent oracle") {
    PrimeOracle po;
    std::vector<std::thread> pool;
    std::vector<std::uint64_t> results(8);
    for (int w = 0; w < 8; ++w) {
        pool.emplace_back([&po, &results, w] {
            std::uint64_t acc = 0;
            for (std::uint64_t n = 2 + w; n < 30000; n += 7) {
                acc ^= po.prev_prime(n) + po.succ_prime(n);
            }
            results[w] = acc;
        });
    }
    for (auto& th : pool) th.join();
    PrimeOracle fresh;
    for (int w = 0; w < 8; ++w) {
        std::uint64_t acc = 0;
        for (std::uint64_t n = 2 + w; n < 30000; n += 7) {
            acc ^= fresh.prev_prime(n) + fresh.succ_prime(n);
        }
        CHECK(acc == results[w]);
    }
}
