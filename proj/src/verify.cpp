#include "adfam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "adfam/embedding.hpp"
#include "adfam/errors.hpp"
#include "adfam/family.hpp"
#include "adfam/json_io.hpp"
#include "adfam/measure.hpp"
#include "adfam/rat.hpp"

namespace adfam {

namespace {

// ---------------------------------------------------------------------------
// Deterministic randomness: raw engine words only, so results do not depend
// on the standard library's distribution implementations.

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t below(std::uint64_t n) {  // uniform on [0, n)
        const std::uint64_t lim = n * (UINT64_MAX / n);
        while (true) {
            const std::uint64_t x = eng();
            if (x < lim) return x % n;
        }
    }

    Rat rat(std::uint64_t max_den) {  // reduced rational in (0,1), den <= max_den
        const std::uint64_t den = 2 + below(max_den - 1);
        const std::uint64_t num = 1 + below(den - 1);
        return Rat(mpz_class(static_cast<unsigned long>(num)),
                   mpz_class(static_cast<unsigned long>(den)));
    }

    std::pair<Rat, Rat> ordered_pair(std::uint64_t max_den) {  // t < t'
        while (true) {
            Rat a = rat(max_den), b = rat(max_den);
            if (a == b) continue;
            return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        }
    }
};

// ---------------------------------------------------------------------------
// Brute-force oracles. These deliberately share no code with the fast paths:
// primality is GMP's mpz_probab_prime_p or plain trial division, prime
// predecessors come from a downward scan, e_j from an explicit floor
// division, binary digits from digit-by-digit doubling.

bool oracle_trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool oracle_probab_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

mpz_class oracle_prev_prime(const mpz_class& n) {
    mpz_class c = n;
    while (!oracle_probab_prime(c)) c -= 1;
    return c;
}

mpz_class oracle_succ_prime(const mpz_class& p) {
    mpz_class c = p + 1;
    while (!oracle_probab_prime(c)) c += 1;
    return c;
}

mpz_class oracle_e_of(const Rat& t, unsigned long j) {
    mpz_class num_pow, den_pow;
    mpz_pow_ui(num_pow.get_mpz_t(), t.num().get_mpz_t(), j);
    mpz_pow_ui(den_pow.get_mpz_t(), t.den().get_mpz_t(), j);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), den_pow.get_mpz_t(), num_pow.get_mpz_t());
    if (q < 2) return mpz_class(2);  // t^-j < 2 clause
    return oracle_prev_prime(q);     // inclusive boundary: floor keeps p <= t^-j exact
}

std::vector<mpz_class> oracle_family_f(const Rat& t, unsigned depth) {
    std::vector<mpz_class> f;
    mpz_class acc = 1;
    for (unsigned long j = 1; j <= depth; ++j) {
        acc *= oracle_e_of(t, j);
        f.push_back(acc);
    }
    return f;
}

std::vector<unsigned> oracle_binary_ones(const Rat& t, unsigned depth) {
    std::vector<unsigned> ones;
    mpz_class r = t.num();
    for (unsigned n = 1; n <= depth && r != 0; ++n) {
        r *= 2;
        if (r >= t.den()) {
            r -= t.den();
            ones.push_back(n);
        }
    }
    return ones;
}

// ---------------------------------------------------------------------------
// Failure bookkeeping.

struct Harness {
    SuiteResult res;

    void pass() { ++res.cases_run; }

    void check(bool ok, const std::string& desc, const std::string& inputs,
               const std::string& expected, const std::string& got) {
        ++res.cases_run;
        if (!ok) res.failures.push_back({desc, inputs, expected, got});
    }

    template <typename T, typename U>
    void check_eq(const T& got, const U& expected, const std::string& desc,
                  const std::string& inputs) {
        std::ostringstream e, g;
        e << expected;
        g << got;
        check(got == expected, desc, inputs, e.str(), g.str());
    }
};

std::string vec_str(const std::vector<mpz_class>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// Suites.

void suite_family_oracle(PrimeOracle& po, Rng& rng, Scale scale, const Config& cfg,
                         Harness& h) {
    const unsigned n_rats = scale == Scale::full ? 200 : 40;
    for (unsigned i = 0; i < n_rats; ++i) {
        const Rat t = rng.rat(10000);
        const unsigned depth = 1 + static_cast<unsigned>(rng.below(10));
        for (unsigned long j = 1; j <= depth; ++j) {
            const mpz_class fast = e_of(po, t, j, cfg);
            const mpz_class slow = oracle_e_of(t, j);
            h.check_eq(fast, slow, "e_of vs brute-force oracle", t.str() + ", j=" + std::to_string(j));
        }
    }
    // Rational points of S: both evaluation routes must agree.
    const unsigned p_max = scale == Scale::full ? 50 : 20;
    for (unsigned long p = 2; p <= p_max; ++p) {
        if (!oracle_trial_prime(p)) continue;
        const Rat t(mpz_class(1), mpz_class(static_cast<unsigned long>(p)));
        const AlgebraicPoint pt{mpz_class(static_cast<unsigned long>(p)), 1};
        for (unsigned long j = 1; j <= 20; ++j) {
            h.check_eq(e_of(po, t, j, cfg), e_at_algebraic(po, pt, j, cfg),
                       "e_of(1/p) vs e_at_algebraic", "p=" + std::to_string(p) +
                           ", j=" + std::to_string(j));
        }
    }
}

void suite_intersection(PrimeOracle& po, Rng& rng, Scale scale, const Config& cfg,
                        Harness& h) {
    const unsigned n_pairs = 500;  // both scales; the brute-force match is cheap
    (void)scale;
    for (unsigned i = 0; i < n_pairs; ++i) {
        const auto [t, tp] = rng.ordered_pair(10000);
        IntersectionCertificate cert{t, tp, 0, {}};
        try {
            cert = intersection_certificate(po, t, tp, cfg.depth_cap, cfg);
        } catch (const resource_error& e) {
            h.check(false, "certificate within depth cap", t.str() + " vs " + tp.str(),
                    "v* <= " + std::to_string(cfg.depth_cap), e.what());
            continue;
        }
        const unsigned window = cert.v_star + 5;
        const auto f_t = oracle_family_f(t, window);
        const auto f_tp = oracle_family_f(tp, window);
        // Brute-force intersection of the two enumerated prefixes.
        std::vector<mpz_class> brute;
        for (const auto& a : f_t) {
            if (std::find(f_tp.begin(), f_tp.end(), a) != f_tp.end()) brute.push_back(a);
        }
        h.check(brute == cert.common, "certificate common == brute-force intersection",
                t.str() + " vs " + tp.str() + ", v*=" + std::to_string(cert.v_star),
                vec_str(brute), vec_str(cert.common));
        bool ordered = true;
        for (unsigned v = cert.v_star; v <= window; ++v) {
            if (!(f_t[v - 1] > f_tp[v - 1])) ordered = false;
        }
        h.check(ordered, "f_v(t) > f_v(t') for v in [v*, v*+5]",
                t.str() + " vs " + tp.str(), "strict order past v*", "violation");
        // Equal products force equal factor counts.
        bool count_lemma = true;
        for (unsigned u = 1; u <= window; ++u) {
            for (unsigned v = 1; v <= window; ++v) {
                if (f_t[u - 1] == f_tp[v - 1] && u != v) count_lemma = false;
            }
        }
        h.check(count_lemma, "count lemma on prefix collisions", t.str() + " vs " + tp.str(),
                "u == v at every collision", "violation");
    }
}

void suite_monotonicity(PrimeOracle& po, Rng& rng, Scale scale, const Config& cfg,
                        Harness& h) {
    const unsigned n_pairs = scale == Scale::full ? 200 : 50;
    for (unsigned i = 0; i < n_pairs; ++i) {
        const auto [t, tp] = rng.ordered_pair(1000);
        const auto a = family_prefix(po, t, 20, cfg);
        const auto b = family_prefix(po, tp, 20, cfg);
        bool e_mono_t = true, f_mono_t = true, e_mono_j = true, f_growth = true;
        for (unsigned j = 0; j < 20; ++j) {
            if (a.e[j] < b.e[j]) e_mono_t = false;
            if (a.f[j] < b.f[j]) f_mono_t = false;
        }
        for (unsigned j = 0; j + 1 < 20; ++j) {
            if (a.e[j + 1] < a.e[j]) e_mono_j = false;
            if (!(a.f[j + 1] >= 2 * a.f[j])) f_growth = false;
        }
        const std::string in = t.str() + " vs " + tp.str();
        h.check(e_mono_t, "e_j nonincreasing in t", in, "e_j(t) >= e_j(t')", "violation");
        h.check(f_mono_t, "f_j nonincreasing in t", in, "f_j(t) >= f_j(t')", "violation");
        h.check(e_mono_j, "e_j nondecreasing in j", in, "monotone", "violation");
        h.check(f_growth, "f_{j+1} >= 2 f_j", in, "doubling growth", "violation");
    }
}

void suite_witness(PrimeOracle& po, Rng& rng, Scale scale, const Config& cfg, Harness& h) {
    const unsigned n_sets = scale == Scale::full ? 50 : 10;
    const unsigned set_size = scale == Scale::full ? 10 : 5;
    for (unsigned s = 0; s < n_sets; ++s) {
        std::vector<Rat> pts;
        while (pts.size() < set_size) {
            Rat r = rng.rat(10000);
            if (std::find(pts.begin(), pts.end(), r) == pts.end()) pts.push_back(r);
        }
        IndependenceWitness w;
        try {
            // The plateau near t=1 can push pairwise mismatches deep; the
            // cap just has to sit above it.
            w = independence_witness(po, pts, 4096, cfg);
        } catch (const resource_error& e) {
            h.check(false, "witness construction", "set " + std::to_string(s), "witness", e.what());
            continue;
        }
        Config deep = cfg;
        deep.depth_cap = std::max(deep.depth_cap, w.depth_used);
        bool diagonal = true;
        for (std::size_t i = 0; i < pts.size() && diagonal; ++i) {
            const DyadicVector vi = embed(po, pts[i], w.depth_used, deep);
            for (std::size_t j = 0; j < pts.size(); ++j) {
                const DyadicSum got = coordinate_pairing(vi, w.witness_indices[j]);
                const DyadicSum want =
                    i == j ? DyadicSum::pow2(w.witness_indices[i]) : DyadicSum{};
                if (!(got == want)) diagonal = false;
            }
        }
        h.check(diagonal, "pairing matrix exactly diagonal",
                "set " + std::to_string(s) + ", V=" + std::to_string(w.depth_used),
                "diagonal", "violation");
    }
}

void suite_norms(PrimeOracle& po, Rng& rng, Scale scale, const Config& cfg, Harness& h) {
    const unsigned n_rats = scale == Scale::full ? 100 : 25;
    for (unsigned i = 0; i < n_rats; ++i) {
        const Rat t = rng.rat(10000);
        const auto fp = detail::prefix_unchecked(po, t, 16, cfg);

        const DyadicVector v = embed(po, t, 8, cfg);
        h.check_eq(*v.tail_bound_exp, mpz_class(fp.f[8] - 1), "embed tail = f_{k+1} - 1", t.str());

        const auto [lower, upper] = l1_norm_bounds(v);
        const DyadicSum cap = DyadicSum::pow2(fp.f[0] - 1);
        h.check(upper <= cap, "l1 upper bound <= 2^{-(f_1-1)}", t.str(),
                "<= 2^-" + mpz_class(fp.f[0] - 1).get_str(), "violation");
        h.check(lower <= upper, "lower <= upper", t.str(), "ordered", "violation");

        // Tail validity: the next five omitted terms stay below the bound.
        bool tails_ok = true;
        for (unsigned k = 1; k <= 10; ++k) {
            DyadicSum partial;
            for (unsigned u = k + 1; u <= k + 5; ++u) partial.add_pow(fp.f[u - 1]);
            if (!(partial <= DyadicSum::pow2(fp.f[k] - 1))) tails_ok = false;
        }
        h.check(tails_ok, "partial tail sums within 2^{-tail_bound_exp}", t.str(),
                "bounded", "violation");

        // Baseline construction against the digit-by-digit oracle.
        const DyadicVector bl = baseline_embed(t, 24);
        const auto ones = oracle_binary_ones(t, 24);
        std::vector<mpz_class> want;
        for (unsigned n : ones) want.emplace_back(n);
        h.check(bl.entries == want, "baseline_embed vs binary-digit oracle", t.str(),
                vec_str(want), vec_str(bl.entries));
    }
    // Fixed shapes.
    {
        const auto [lo, up] = l1_norm_bounds(DyadicVector{});
        h.check(lo.is_zero() && up.is_zero(), "empty vector norms", "{}", "(0,0)", "nonzero");

        const DyadicVector b = baseline_embed(Rat(mpz_class(3), mpz_class(4)), 8);
        const auto [bl, bu] = l1_norm_bounds(b);
        DyadicSum want_lo;
        want_lo.add_pow(mpz_class(1));
        want_lo.add_pow(mpz_class(2));
        DyadicSum want_up = want_lo;
        want_up.add_pow(mpz_class(8));
        h.check(bl == want_lo && bu == want_up, "baseline_embed(3/4,8) norms", "3/4",
                "3/4 and 3/4 + 2^-8", "mismatch");
    }
}

void suite_limits(PrimeOracle& po, Rng&, Scale scale, const Config& cfg, Harness& h) {
    {
        const DyadicVector one = limit_point(po, AtOne{}, 5, cfg);
        std::vector<mpz_class> want{2, 4, 8, 16, 32};
        h.check_eq(vec_str(one.entries), vec_str(want), "limit at 1, depth 5", "AtOne");
    }
    {
        const DyadicVector zero = limit_point(po, AtZero{}, 5, cfg);
        h.check(zero.entries.empty() && !zero.tail_bound_exp, "limit at 0 is exactly 0",
                "AtZero", "{}", "nonempty");
    }
    // Family prefixes of t = 1 - 2^-m are pure powers of two up to a depth
    // U(m) that grows with m (values pinned by the sieve-free recurrence).
    {
        const std::vector<unsigned> expected_u{3, 8, 17, 34, 69, 140, 280, 561, 1124};
        unsigned prev_u = 0;
        for (unsigned m = 2; m <= 10; ++m) {
            mpz_class den = 1;
            mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), m);
            const Rat t(mpz_class(den - 1), den);
            unsigned u = 0;
            while (e_of(po, t, u + 1, cfg) == 2) ++u;
            h.check_eq(u, expected_u[m - 2], "plateau depth U(m)", "m=" + std::to_string(m));
            h.check(u >= prev_u, "U(m) nondecreasing", "m=" + std::to_string(m), "monotone",
                    std::to_string(u) + " < " + std::to_string(prev_u));
            prev_u = u;
            Config deep = cfg;
            deep.depth_cap = std::max<unsigned>(deep.depth_cap, u);
            const auto fp = family_prefix(po, t, u, deep);
            bool pow2 = true;
            mpz_class w = 1;
            for (unsigned j = 0; j < u; ++j) {
                w *= 2;
                if (fp.f[j] != w) pow2 = false;
            }
            h.check(pow2, "prefix of 1 - 2^-m is {2^u}", "m=" + std::to_string(m), "powers of 2",
                    "violation");
        }
    }
    // Right limits at 1/p: embeddings just above 1/p stabilize to the
    // right-limit vector within m <= 64.
    {
        const unsigned p_max = scale == Scale::full ? 50 : 20;
        const std::map<unsigned, unsigned> frozen_m0{{2, 9}, {3, 11}, {5, 15}};
        for (unsigned long p = 2; p <= p_max; ++p) {
            if (!PrimeOracle::is_prime_u64(p)) continue;
            const AlgebraicPoint pt{mpz_class(static_cast<unsigned long>(p)), 1};
            const DyadicVector target = limit_point(po, RightAt{pt}, 5, cfg);
            unsigned m0 = 0;  // 0 = not stabilized
            for (unsigned m = 1; m <= 64; ++m) {
                mpz_class two_m = 1;
                mpz_mul_2exp(two_m.get_mpz_t(), two_m.get_mpz_t(), m);
                const mpz_class num = two_m + p;
                const mpz_class den = p * two_m;
                if (num >= den) continue;  // t would leave (0,1)
                const Rat t(num, den);
                if (embed(po, t, 5, cfg).entries == target.entries) {
                    if (m0 == 0) m0 = m;
                } else {
                    m0 = 0;  // must stay equal through m = 64
                }
            }
            h.check(m0 != 0, "right-limit stabilization within m <= 64",
                    "p=" + std::to_string(p), "stabilizes", "no stabilization");
            if (auto it = frozen_m0.find(static_cast<unsigned>(p));
                it != frozen_m0.end() && m0 != 0) {
                h.check_eq(m0, it->second, "stabilization onset m0", "p=" + std::to_string(p));
            }
        }
    }
    {
        const Rat third(mpz_class(1), mpz_class(3));
        const DyadicVector left = limit_point(po, LeftAt{third}, 4, cfg);
        const DyadicVector direct = embed(po, third, 4, cfg);
        h.check(left.entries == direct.entries, "left limit = value (left continuity)",
                "t*=1/3", vec_str(direct.entries), vec_str(left.entries));

        const DyadicVector right = limit_point(po, RightAt{AlgebraicPoint{mpz_class(3), 1}}, 3, cfg);
        std::vector<mpz_class> want{2, 14, 322};
        h.check_eq(vec_str(right.entries), vec_str(want), "right limit products at 1/3",
                   "RightAt(3,1)");

        bool rejected = false;
        try {
            limit_point(po, LeftAt{Rat(mpz_class(2), mpz_class(5))}, 3, cfg);
        } catch (const domain_error&) {
            rejected = true;
        }
        h.check(rejected, "left limit rejects non-S rationals", "t=2/5", "domain_error",
                "accepted");
    }
}

void suite_gap(PrimeOracle& po, Rng&, Scale scale, const Config&, Harness& h) {
    auto ratio_str = [](const GapStats& g) {
        return g.max_ratio_num.get_str() + "/" + g.max_ratio_den.get_str() + "@" +
               g.argmax_p.get_str();
    };
    {
        const GapStats g = po.gap_stats(2, 10);
        h.check_eq(ratio_str(g), std::string("2/3@3"), "gap_stats(2,10)", "");
    }
    {
        const GapStats g = po.gap_stats(100, 200);
        h.check_eq(ratio_str(g), std::string("14/113@113"), "gap_stats(100,200)", "");
    }
    // Dyadic blocks: exact maxima, nonincreasing as the blocks double.
    {
        struct Block {
            unsigned k;
            std::uint64_t num, den;
        };
        const std::vector<Block> frozen{
            {4, 6, 23},      {5, 6, 47},      {6, 14, 113},    {7, 10, 139},
            {8, 14, 293},    {9, 18, 523},    {10, 34, 1327},  {11, 24, 2179},
            {12, 30, 4297},  {13, 34, 8467},  {14, 52, 19609}, {15, 62, 34061},
            {16, 58, 79699}, {17, 86, 155921},{18, 82, 265621},{19, 98, 604073}};
        const unsigned k_max = scale == Scale::full ? 19 : 12;
        mpz_class prev_num = 1, prev_den = 1;
        for (const auto& b : frozen) {
            if (b.k > k_max) break;
            const GapStats g = po.gap_stats(1ull << b.k, 1ull << (b.k + 1));
            h.check_eq(ratio_str(g),
                       std::to_string(b.num) + "/" + std::to_string(b.den) + "@" +
                           std::to_string(b.den),
                       "block max ratio", "k=" + std::to_string(b.k));
            const bool noninc = g.max_ratio_num * prev_den <= prev_num * g.max_ratio_den;
            h.check(noninc, "block maxima nonincreasing", "k=" + std::to_string(b.k),
                    "<= previous block", "increase");
            prev_num = g.max_ratio_num;
            prev_den = g.max_ratio_den;
        }
    }
    if (scale == Scale::full) {
        const GapStats g = po.gap_stats(1000, 1000000);
        h.check_eq(ratio_str(g), std::string("34/1327@1327"), "gap_stats(1e3,1e6)", "");
        h.check(g.max_ratio_num * 20 < g.max_ratio_den, "max ratio below 1/20", "[1e3,1e6]",
                "< 1/20", "too large");
    }
    // Predecessor/successor contracts against trial division.
    {
        bool prev_ok = true, roundtrip_ok = true;
        std::uint64_t expect = 2;
        for (std::uint64_t n = 2; n <= 4000; ++n) {
            if (oracle_trial_prime(n)) expect = n;
            if (po.prev_prime(n) != expect) prev_ok = false;
        }
        for (std::uint64_t p = 2; p <= 4000; ++p) {
            if (!oracle_trial_prime(p)) continue;
            if (po.prev_prime(po.succ_prime(p) - 1) != p) roundtrip_ok = false;
        }
        h.check(prev_ok, "prev_prime matches trial division on [2,4000]", "", "agree", "diverge");
        h.check(roundtrip_ok, "prev(succ(p)-1) = p", "p <= 4000", "roundtrip", "violation");
        h.check_eq(po.prev_prime(static_cast<std::uint64_t>(2)), static_cast<std::uint64_t>(2),
                   "prev_prime(2)", "");
        h.check_eq(po.prev_prime(static_cast<std::uint64_t>(10)), static_cast<std::uint64_t>(7),
                   "prev_prime(10)", "");
        h.check_eq(po.prev_prime(static_cast<std::uint64_t>(100)), static_cast<std::uint64_t>(97),
                   "prev_prime(100)", "");
        h.check_eq(po.succ_prime(static_cast<std::uint64_t>(2)), static_cast<std::uint64_t>(3),
                   "succ_prime(2)", "");
        h.check_eq(po.succ_prime(static_cast<std::uint64_t>(7)), static_cast<std::uint64_t>(11),
                   "succ_prime(7)", "");
        h.check_eq(po.succ_prime(static_cast<std::uint64_t>(13)), static_cast<std::uint64_t>(17),
                   "succ_prime(13)", "");
    }
    // Above the sieve ceiling the scanner must agree with the independent
    // probable-prime scan.
    {
        mpz_class big("1000000000000037");  // ~1e15
        for (int k = 0; k < (scale == Scale::full ? 8 : 3); ++k) {
            big = big * 37 + k;
            h.check_eq(po.prev_prime(big), oracle_prev_prime(big), "prev_prime above ceiling",
                       big.get_str());
            h.check_eq(po.succ_prime(big), oracle_succ_prime(big), "succ_prime above ceiling",
                       big.get_str());
        }
    }
}

void suite_measure(PrimeOracle& po, Rng& rng, Scale scale, const Config& cfg, Harness& h) {
    // Hit frequency on the coarse grid: basis {5/8} among the 7 grid points.
    {
        const std::uint64_t n = scale == Scale::full ? 10000 : 2000;
        SamplerConfig scfg{3, 0x5eedu ^ static_cast<std::uint64_t>(rng.eng()), 8, n};
        const std::vector<Rat> basis{Rat(mpz_class(5), mpz_class(8))};
        const HitReport r = annihilation_experiment(po, scfg, basis, cfg.depth_cap, 1, cfg);
        // 3 standard errors around 1/7: |hits/n - 1/7| <= 3*sqrt((1/7)(6/7)/n).
        const double freq = static_cast<double>(r.hits) / static_cast<double>(n);
        const double p = 1.0 / 7.0;
        const double band = 3.0 * std::sqrt(p * (1 - p) / static_cast<double>(n));
        h.check(std::abs(freq - p) <= band, "bits=3 hit frequency near 1/7",
                "n=" + std::to_string(n), "within 3 SE", std::to_string(freq));
        h.check_eq(r.hits + r.witnesses.size() + r.errors.size(), n,
                   "every sample accounted for", "bits=3");
    }
    // Annihilation of a non-dyadic span: zero hits, witnesses verifiable.
    {
        const std::uint64_t n = scale == Scale::full ? 3000 : 300;
        SamplerConfig scfg{64, 0xadfau ^ static_cast<std::uint64_t>(rng.eng()), 8, n};
        const std::vector<Rat> basis{
            Rat(mpz_class(1), mpz_class(3)), Rat(mpz_class(2), mpz_class(5)),
            Rat(mpz_class(3), mpz_class(7)), Rat(mpz_class(2), mpz_class(7)),
            Rat(mpz_class(5), mpz_class(11))};
        const HitReport r = annihilation_experiment(po, scfg, basis, cfg.depth_cap, 1, cfg);
        h.check_eq(r.hits, static_cast<std::uint64_t>(0), "no dyadic sample hits the span",
                   "bits=64");
        h.check_eq(r.errors.size(), static_cast<std::size_t>(0), "no per-sample errors",
                   "bits=64");
        bool witnesses_ok = r.witnesses.size() == n - r.hits;
        const std::size_t stride = std::max<std::size_t>(1, r.witnesses.size() / 64);
        for (std::size_t i = 0; i < r.witnesses.size() && witnesses_ok; i += stride) {
            const auto& w = r.witnesses[i];
            if (!family_contains(po, w.t, w.escaping_index, cfg)) witnesses_ok = false;
            for (const auto& b : basis) {
                if (family_contains(po, b, w.escaping_index, cfg)) witnesses_ok = false;
            }
        }
        h.check(witnesses_ok, "witness indices escape every basis family", "bits=64",
                "verified", "violation");

        // Determinism: same seed, different thread counts, identical report.
        const HitReport r2 = annihilation_experiment(po, scfg, basis, cfg.depth_cap, 4, cfg);
        h.check(to_json(r).dump() == to_json(r2).dump(), "report independent of thread count",
                "threads 1 vs 4", "identical JSON", "diverged");
    }
    // Atomlessness: pairwise mismatch certificates for deduped samples. The
    // plateau near t=1 makes some pairs deep, so the cap sits well above it.
    {
        const std::uint64_t n = scale == Scale::full ? 300 : 100;
        SamplerConfig scfg{64, 0xa7035u ^ static_cast<std::uint64_t>(rng.eng()), 8, n};
        const AtomReport r = atomlessness_experiment(po, scfg, 4096, 1, cfg);
        h.check_eq(r.certified, r.pairs, "every distinct pair certified", "bits=64");
        h.check_eq(r.errors.size(), static_cast<std::size_t>(0), "no pair errors", "bits=64");
        const AtomReport r2 = atomlessness_experiment(po, scfg, 4096, 3, cfg);
        h.check(to_json(r).dump() == to_json(r2).dump(), "atom report independent of threads",
                "threads 1 vs 3", "identical JSON", "diverged");
    }
    // Edge shapes.
    {
        SamplerConfig scfg{2, 7, 8, 10};
        const AtomReport r = atomlessness_experiment(po, scfg, cfg.depth_cap, 1, cfg);
        h.check(r.distinct <= 3, "bits=2 has at most 3 distinct samples", "bits=2",
                "<= 3", std::to_string(r.distinct));
        h.check_eq(r.certified, r.pairs, "tiny grid pairs certified", "bits=2");

        std::mt19937_64 fixed(42);
        const Rat a = sample_t(fixed, 3);
        std::mt19937_64 fixed2(42);
        const Rat b = sample_t(fixed2, 3);
        h.check(a == b, "sampler deterministic per seed", "bits=3", a.str(), b.str());
        h.check(a.den() <= 8 && a.num() >= 1, "sample lies on the dyadic grid", "bits=3",
                "m/8 reduced", a.str());

        const HitReport empty = annihilation_experiment(po, SamplerConfig{8, 3, 8, 32}, {},
                                                        cfg.depth_cap, 1, cfg);
        h.check_eq(empty.hits, static_cast<std::uint64_t>(0), "empty basis never hit", "{0}");
    }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "family-oracle", "intersection", "monotonicity", "witness",
        "norms",         "limits",       "gap",          "measure"};
    return names;
}

SuiteResult run_suite(PrimeOracle& po, std::string_view name, std::uint64_t seed,
                      Scale scale, const Config& cfg) {
    using SuiteFn = void (*)(PrimeOracle&, Rng&, Scale, const Config&, Harness&);
    static const std::map<std::string, SuiteFn, std::less<>> table{
        {"family-oracle", suite_family_oracle},
        {"intersection", suite_intersection},
        {"monotonicity", suite_monotonicity},
        {"witness", suite_witness},
        {"norms", suite_norms},
        {"limits", suite_limits},
        {"gap", suite_gap},
        {"measure", suite_measure}};
    const auto it = table.find(name);
    if (it == table.end()) {
        throw domain_error("unknown suite '" + std::string(name) + "'; expected one of " +
                           [] {
                               std::string s;
                               for (const auto& n : suite_names()) s += n + " ";
                               return s;
                           }());
    }
    Harness h;
    h.res.suite_name = std::string(name);
    Rng rng(seed);
    const auto start = std::chrono::steady_clock::now();
    it->second(po, rng, scale, cfg, h);
    h.res.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return h.res;
}

} // namespace adfam
