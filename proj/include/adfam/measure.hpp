#ifndef ADFAM_MEASURE_HPP
#define ADFAM_MEASURE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "adfam/config.hpp"
#include "adfam/primes.hpp"
#include "adfam/rat.hpp"

namespace adfam {

// Discretized-uniform sampler parameters. bits fixes the dyadic grid
// m / 2^bits; the seed makes every experiment reproducible bit-for-bit.
struct SamplerConfig {
    unsigned bits = 64;
    std::uint64_t seed = 0;
    unsigned depth = 8;           // embedding depth for `sample` output
    std::uint64_t n_samples = 1;
};

// Uniform dyadic rational m/2^bits with 1 <= m <= 2^bits - 1 (0 redrawn).
Rat sample_t(std::mt19937_64& rng, unsigned bits);

struct HitTestResult {
    bool member = false;
    std::optional<mpz_class> witness;  // f_V(t), escaping every basis set
};

// Exact span-membership test: x_t lies in span{x_{t_1},...,x_{t_k}} iff
// t equals a basis point; otherwise returns an index of N_t that escapes
// every N_{t_i} (V at least every pairwise first mismatch).
HitTestResult subspace_hit_test(PrimeOracle& po, const Rat& t,
                                const std::vector<Rat>& basis, unsigned depth_cap,
                                const Config& cfg = default_config());

struct HitReport {
    std::uint64_t n_samples = 0;
    std::uint64_t hits = 0;
    std::vector<Rat> basis;
    // One entry per non-hit sample, in sample order: (index, t, witness).
    struct Witness {
        std::uint64_t index;
        Rat t;
        mpz_class escaping_index;
    };
    std::vector<Witness> witnesses;
    // Per-sample failures (cap exhaustion), collected without aborting.
    struct SampleError {
        std::uint64_t index;
        Rat t;
        std::string message;
    };
    std::vector<SampleError> errors;
};

// Draws n samples and hit-tests each against the basis. Samples are
// generated sequentially from the seed; testing may fan out over `threads`
// but the report is identical for any thread count.
HitReport annihilation_experiment(PrimeOracle& po, const SamplerConfig& scfg,
                                  const std::vector<Rat>& basis, unsigned depth_cap,
                                  unsigned threads = 1,
                                  const Config& cfg = default_config());

struct AtomReport {
    std::uint64_t n_samples = 0;
    std::uint64_t distinct = 0;   // after dedupe
    std::uint64_t pairs = 0;      // distinct choose 2
    std::uint64_t certified = 0;  // pairs with a mismatch certificate
    unsigned max_v_star = 0;
    std::optional<std::pair<Rat, Rat>> max_pair;
    struct PairError {
        Rat a, b;
        std::string message;
    };
    std::vector<PairError> errors;  // pairs exceeding the cap
};

// Dedupes the sample list, then certifies a first-mismatch index for every
// distinct pair: constructive pairwise-distinctness of the embeddings.
AtomReport atomlessness_experiment(PrimeOracle& po, const SamplerConfig& scfg,
                                   unsigned depth_cap, unsigned threads = 1,
                                   const Config& cfg = default_config());

} // namespace adfam

#endif
