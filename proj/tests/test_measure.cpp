#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adfam/errors.hpp"
#include "adfam/family.hpp"
#include "adfam/json_io.hpp"
#include "adfam/measure.hpp"

using namespace adfam;

namespace {
Rat rat(unsigned long n, unsigned long d) { return Rat(mpz_class(n), mpz_class(d)); }
}

TEST_CASE("sample_t shape and determinism") {
    std::mt19937_64 a(99), b(99);
    for (int i = 0; i < 50; ++i) {
        const Rat x = sample_t(a, 3);
        const Rat y = sample_t(b, 3);
        CHECK(x == y);
        // reduced m/8 with 1 <= m <= 7
        CHECK(x.den() <= 8);
        CHECK(x.num() >= 1);
        CHECK(x.num() < x.den());
    }
    std::mt19937_64 c(1);
    const Rat wide = sample_t(c, 128);  // multi-word path
    mpz_class den128 = 1;
    mpz_mul_2exp(den128.get_mpz_t(), den128.get_mpz_t(), 128);
    CHECK(wide.den() <= den128);
    CHECK_THROWS_AS(sample_t(c, 0), domain_error);
}

TEST_CASE("subspace hit tests on the examples") {
    PrimeOracle po;
    const auto a = subspace_hit_test(po, rat(1, 2), {rat(1, 3)}, 64);
    CHECK_FALSE(a.member);
    CHECK(*a.witness == 2);  // v* = 1, f_1(1/2) = 2 not in N_{1/3}

    const auto b = subspace_hit_test(po, rat(1, 3), {rat(1, 3), rat(1, 2)}, 64);
    CHECK(b.member);
    CHECK_FALSE(b.witness.has_value());

    const auto c = subspace_hit_test(po, rat(2, 5), {rat(1, 2)}, 64);
    CHECK_FALSE(c.member);
    CHECK(*c.witness == 10);  // v* = 2, f_2(2/5) = 10 not in N_{1/2}

    CHECK_THROWS_AS(subspace_hit_test(po, rat(1, 2), {rat(1, 3), rat(1, 3)}, 64), domain_error);
}

TEST_CASE("witnesses escape every basis family") {
    PrimeOracle po;
    const std::vector<Rat> basis{rat(1, 3), rat(2, 5), rat(3, 7)};
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const Rat t = sample_t(rng, 16);
        const auto r = subspace_hit_test(po, t, basis, 64);
        if (r.member) continue;
        CHECK(family_contains(po, t, *r.witness));
        for (const auto& b : basis) {
            CHECK_FALSE(family_contains(po, b, *r.witness));
        }
    }
}

TEST_CASE("annihilation experiment bookkeeping") {
    PrimeOracle po;
    SamplerConfig scfg{3, 1234, 4, 700};
    const std::vector<Rat> basis{rat(5, 8)};
    const HitReport r = annihilation_experiment(po, scfg, basis, 64);
    CHECK(r.n_samples == 700);
    CHECK(r.hits + r.witnesses.size() + r.errors.size() == 700);
    CHECK(r.errors.empty());
    // every hit must be the literal basis point 5/8
    CHECK(r.hits > 0);
    for (const auto& w : r.witnesses) CHECK_FALSE(w.t == basis[0]);

    const HitReport none = annihilation_experiment(po, scfg, {}, 64);
    CHECK(none.hits == 0);  // span{} = {0} and x_t is never 0
    CHECK(none.witnesses.size() == 700);
}

TEST_CASE("atomlessness experiment certifies all pairs on a small grid") {
    PrimeOracle po;
    SamplerConfig scfg{2, 77, 4, 10};
    const AtomReport r = atomlessness_experiment(po, scfg, 64);
    CHECK(r.n_samples == 10);
    CHECK(r.distinct <= 3);  // grid {1/4, 1/2, 3/4}
    CHECK(r.pairs == r.distinct * (r.distinct - 1) / 2);
    CHECK(r.certified == r.pairs);
    CHECK(r.errors.empty());
}

TEST_CASE("atoms reports cap exhaustion per pair without aborting") {
    PrimeOracle po;
    SamplerConfig scfg{8, 3, 4, 40};
    const AtomReport r = atomlessness_experiment(po, scfg, /*depth_cap=*/1);
    CHECK(r.certified + r.errors.size() == r.pairs);
    CHECK(!r.errors.empty());  // many pairs share e_1
    for (const auto& e : r.errors) {
        CHECK(e.message.find("depth cap") != std::string::npos);
    }
}

TEST_CASE("experiments are deterministic across thread counts") {
    PrimeOracle po;
    SamplerConfig scfg{64, 42, 8, 120};
    const std::vector<Rat> basis{rat(1, 3), rat(2, 5), rat(3, 7)};
    const HitReport a = annihilation_experiment(po, scfg, basis, 64, 1);
    const HitReport b = annihilation_experiment(po, scfg, basis, 64, 4);
    CHECK(to_json(a).dump() == to_json(b).dump());

    const AtomReport c = atomlessness_experiment(po, scfg, 2048, 1);
    const AtomReport d = atomlessness_experiment(po, scfg, 2048, 3);
    CHECK(to_json(c).dump() == to_json(d).dump());
}
