#include "adfam/measure.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>

#include "adfam/errors.hpp"
#include "adfam/family.hpp"

namespace adfam {

Rat sample_t(std::mt19937_64& rng, unsigned bits) {
    if (bits == 0) throw domain_error("sampler requires bits >= 1");
    const unsigned words = (bits + 63) / 64;
    while (true) {
        mpz_class m = 0;
        for (unsigned w = 0; w < words; ++w) {
            mpz_class word(static_cast<unsigned long>(rng()));
            mpz_mul_2exp(word.get_mpz_t(), word.get_mpz_t(), 64 * w);
            m |= word;
        }
        mpz_fdiv_r_2exp(m.get_mpz_t(), m.get_mpz_t(), bits);  // m in [0, 2^bits)
        if (m == 0) continue;                                 // endpoints excluded, redraw
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
        return Rat(std::move(m), std::move(den));
    }
}

HitTestResult subspace_hit_test(PrimeOracle& po, const Rat& t, const std::vector<Rat>& basis,
                                unsigned depth_cap, const Config& cfg) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (basis[i] == basis[j]) {
                throw domain_error("basis points must be pairwise distinct; " +
                                   basis[i].str() + " repeats");
            }
        }
    }
    for (const auto& b : basis) {
        if (b == t) return {true, std::nullopt};  // x_t is itself a basis vector
    }
    // Membership in the span needs supp(x_t) inside the union of basis
    // supports; each pairwise intersection stops before its first mismatch,
    // so f_V(t) with V past every mismatch escapes all of them.
    unsigned v_max = 1;
    for (const auto& b : basis) {
        const bool lt = t < b;
        const auto cert = lt ? intersection_certificate(po, t, b, depth_cap, cfg)
                             : intersection_certificate(po, b, t, depth_cap, cfg);
        v_max = std::max(v_max, cert.v_star);
    }
    Config deep = cfg;
    deep.depth_cap = std::max(deep.depth_cap, v_max);
    detail::PrefixCursor cur(po, t, deep);
    return {false, cur.f(v_max)};
}

namespace {

std::vector<Rat> draw_samples(const SamplerConfig& scfg) {
    std::mt19937_64 rng(scfg.seed);
    std::vector<Rat> out;
    out.reserve(scfg.n_samples);
    for (std::uint64_t i = 0; i < scfg.n_samples; ++i) {
        out.push_back(sample_t(rng, scfg.bits));
    }
    return out;
}

// Runs fn(i) for i in [0, n) across `threads` workers; any exception is
// rethrown after all workers join.
void parallel_for(std::uint64_t n, unsigned threads, const std::function<void(std::uint64_t)>& fn) {
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    std::mutex err_mu;
    std::exception_ptr err;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace

HitReport annihilation_experiment(PrimeOracle& po, const SamplerConfig& scfg,
                                  const std::vector<Rat>& basis, unsigned depth_cap,
                                  unsigned threads, const Config& cfg) {
    const std::vector<Rat> samples = draw_samples(scfg);

    struct Slot {
        bool hit = false;
        std::optional<mpz_class> witness;
        std::optional<std::string> error;
    };
    std::vector<Slot> slots(samples.size());

    parallel_for(samples.size(), threads, [&](std::uint64_t i) {
        try {
            const auto r = subspace_hit_test(po, samples[i], basis, depth_cap, cfg);
            slots[i].hit = r.member;
            slots[i].witness = r.witness;
        } catch (const resource_error& e) {
            slots[i].error = e.what();  // collected, batch continues
        }
    });

    HitReport report;
    report.n_samples = samples.size();
    report.basis = basis;
    for (std::uint64_t i = 0; i < samples.size(); ++i) {
        if (slots[i].error) {
            report.errors.push_back({i, samples[i], *slots[i].error});
        } else if (slots[i].hit) {
            ++report.hits;
        } else {
            report.witnesses.push_back({i, samples[i], *slots[i].witness});
        }
    }
    return report;
}

AtomReport atomlessness_experiment(PrimeOracle& po, const SamplerConfig& scfg,
                                   unsigned depth_cap, unsigned threads, const Config& cfg) {
    const std::vector<Rat> samples = draw_samples(scfg);
    std::vector<Rat> distinct = samples;
    std::sort(distinct.begin(), distinct.end(),
              [](const Rat& a, const Rat& b) { return a < b; });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    const std::size_t n = distinct.size();
    AtomReport report;
    report.n_samples = samples.size();
    report.distinct = n;
    report.pairs = n < 2 ? 0 : n * (n - 1) / 2;

    // Shared lazy prefixes; values are pure, the lock only guards extension.
    struct Cache {
        explicit Cache(PrimeOracle& po, const Rat& t, const Config& cfg) : cur(po, t, cfg) {}
        detail::PrefixCursor cur;
        std::mutex mu;
        mpz_class e_at(unsigned long j) {
            std::lock_guard lk(mu);
            return cur.e(j);
        }
    };
    Config deep = cfg;
    deep.depth_cap = std::max(deep.depth_cap, depth_cap);
    std::vector<std::unique_ptr<Cache>> caches;
    caches.reserve(n);
    for (const auto& t : distinct) caches.push_back(std::make_unique<Cache>(po, t, deep));

    struct RowResult {
        unsigned max_v = 0;
        std::size_t max_j = 0;
        std::uint64_t certified = 0;
        std::vector<std::pair<std::size_t, std::string>> errors;  // (j, message)
    };
    std::vector<RowResult> rows(n);

    parallel_for(n, threads, [&](std::uint64_t i) {
        RowResult& row = rows[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            unsigned v_star = 0;
            for (unsigned long v = 1; v <= depth_cap; ++v) {
                const mpz_class ea = caches[i]->e_at(v);
                const mpz_class eb = caches[j]->e_at(v);
                if (ea != eb) {
                    v_star = static_cast<unsigned>(v);
                    break;
                }
            }
            if (v_star == 0) {
                row.errors.emplace_back(
                    j, "no e-mismatch within depth cap " + std::to_string(depth_cap));
                continue;
            }
            ++row.certified;
            if (v_star > row.max_v) {
                row.max_v = v_star;
                row.max_j = j;
            }
        }
    });

    for (std::size_t i = 0; i < n; ++i) {
        report.certified += rows[i].certified;
        if (rows[i].max_v > report.max_v_star) {
            report.max_v_star = rows[i].max_v;
            report.max_pair = std::make_pair(distinct[i], distinct[rows[i].max_j]);
        }
        for (const auto& [j, msg] : rows[i].errors) {
            report.errors.push_back({distinct[i], distinct[j], msg});
        }
    }
    return report;
}

} // namespace adfam
