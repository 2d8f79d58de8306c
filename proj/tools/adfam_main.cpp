// adfam: prime-indexed almost-disjoint families, exact coordinate-space
// embeddings, and certificate-producing measure experiments, behind one
// JSON-emitting binary.
//
// Exit codes: 0 success, 1 domain error / usage, 2 resource cap exceeded,
// 3 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adfam/embedding.hpp"
#include "adfam/errors.hpp"
#include "adfam/family.hpp"
#include "adfam/json_io.hpp"
#include "adfam/measure.hpp"
#include "adfam/primes.hpp"
#include "adfam/verify.hpp"

namespace {

using adfam::json;

struct GlobalOpts {
    unsigned depth_cap = adfam::default_config().depth_cap;
    std::uint64_t bit_ceiling = adfam::default_config().bigint_bit_ceiling;
    std::uint64_t sieve_ceiling = adfam::default_config().sieve_ceiling;
    std::string output = "json";  // json | json-lines
};

adfam::Config to_config(const GlobalOpts& g) {
    adfam::Config cfg;
    cfg.depth_cap = g.depth_cap;
    cfg.bigint_bit_ceiling = g.bit_ceiling;
    cfg.sieve_ceiling = g.sieve_ceiling;
    return cfg;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::vector<adfam::Rat> parse_rat_list(const std::string& csv) {
    std::vector<adfam::Rat> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) out.push_back(adfam::Rat::parse(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw adfam::domain_error("expected a comma-separated list of rationals");
    return out;
}

adfam::LimitKind parse_limit_kind(const std::string& spec) {
    if (spec == "zero") return adfam::AtZero{};
    if (spec == "one") return adfam::AtOne{};
    if (spec.rfind("left:", 0) == 0) {
        return adfam::LeftAt{adfam::Rat::parse(spec.substr(5))};
    }
    if (spec.rfind("right:", 0) == 0) {
        const std::string body = spec.substr(6);
        const std::size_t comma = body.find(',');
        if (comma == std::string::npos) {
            throw adfam::domain_error("right limit point must be written right:p,i");
        }
        mpz_class p;
        if (mpz_set_str(p.get_mpz_t(), body.substr(0, comma).c_str(), 10) != 0) {
            throw adfam::domain_error("invalid prime in limit kind '" + spec + "'");
        }
        const unsigned long i = std::stoul(body.substr(comma + 1));
        return adfam::RightAt{adfam::AlgebraicPoint{p, i}};
    }
    throw adfam::domain_error("limit kind must be zero, one, left:A/B or right:p,i; got '" +
                              spec + "'");
}

// Re-feed check: embeddings previously written by `embed` (JSON lines, one
// per witness point, same order) must pair diagonally with the witness.
bool witness_matches_embeds(const adfam::IndependenceWitness& w, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw adfam::domain_error("cannot open embeds file '" + path + "'");
    std::vector<adfam::DyadicVector> vecs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        adfam::DyadicVector v;
        for (const auto& s : j.at("entries")) {
            mpz_class e;
            mpz_set_str(e.get_mpz_t(), s.get_ref<const std::string&>().c_str(), 10);
            v.entries.push_back(e);
        }
        vecs.push_back(std::move(v));
    }
    if (vecs.size() != w.points.size()) {
        throw adfam::domain_error("embeds file holds " + std::to_string(vecs.size()) +
                                  " vectors for " + std::to_string(w.points.size()) + " points");
    }
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        for (std::size_t j2 = 0; j2 < vecs.size(); ++j2) {
            const adfam::DyadicSum got = adfam::coordinate_pairing(vecs[i], w.witness_indices[j2]);
            const adfam::DyadicSum want =
                i == j2 ? adfam::DyadicSum::pow2(w.witness_indices[i]) : adfam::DyadicSum{};
            if (!(got == want)) return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prime-indexed almost-disjoint families, exact embeddings, and "
                 "pushforward-measure certificate experiments"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--depth-cap", g.depth_cap, "Family depth cap")
        ->envname("ADFAM_DEPTH_CAP")
        ->capture_default_str();
    app.add_option("--bit-ceiling", g.bit_ceiling, "Bigint bit ceiling")
        ->envname("ADFAM_BIT_CEILING")
        ->capture_default_str();
    app.add_option("--sieve-ceiling", g.sieve_ceiling,
                   "Largest value answered by sieving; larger queries scan with a "
                   "deterministic primality test")
        ->envname("ADFAM_SIEVE_CEILING")
        ->capture_default_str();
    app.add_option("--output", g.output, "json or json-lines")
        ->envname("ADFAM_OUTPUT")
        ->check(CLI::IsMember({"json", "json-lines"}))
        ->capture_default_str();

    // family
    auto* c_family = app.add_subcommand("family", "First depth steps of e_j and f_j at t");
    std::string f_t;
    unsigned f_depth = 8;
    c_family->add_option("--t", f_t, "Rational t as A/B")->required();
    c_family->add_option("--depth", f_depth, "Prefix depth")->required();

    // intersect
    auto* c_intersect = app.add_subcommand("intersect", "First-mismatch certificate for a pair");
    std::string i_t, i_tp;
    unsigned i_cap = adfam::default_config().depth_cap;
    c_intersect->add_option("--t", i_t)->required();
    c_intersect->add_option("--tp", i_tp)->required();
    c_intersect->add_option("--cap", i_cap, "Certificate search cap")->capture_default_str();

    // inS
    auto* c_ins = app.add_subcommand("inS", "Rational membership in S = {p^{-1/i}}");
    std::string s_t;
    c_ins->add_option("--t", s_t)->required();

    // embed
    auto* c_embed = app.add_subcommand("embed", "Truncated embedding of t");
    std::string e_t;
    unsigned e_depth = 8;
    bool e_baseline = false;
    c_embed->add_option("--t", e_t)->required();
    c_embed->add_option("--depth", e_depth)->capture_default_str();
    c_embed->add_flag("--baseline", e_baseline, "Binary-digit construction instead");

    // limits
    auto* c_limits = app.add_subcommand("limits", "Boundary limit vectors");
    std::string l_kind;
    unsigned l_depth = 5;
    c_limits->add_option("--kind", l_kind, "zero | one | left:A/B | right:p,i")->required();
    c_limits->add_option("--depth", l_depth)->capture_default_str();

    // witness
    auto* c_witness = app.add_subcommand("witness", "Linear-independence witness for points");
    std::string w_points, w_embeds;
    unsigned w_cap = adfam::default_config().depth_cap;
    c_witness->add_option("--points", w_points, "Comma-separated rationals")->required();
    c_witness->add_option("--cap", w_cap)->capture_default_str();
    c_witness->add_option("--embeds", w_embeds,
                          "JSON-lines file of embed outputs (one per point) to verify against");

    // sample
    auto* c_sample = app.add_subcommand("sample", "Draw dyadic samples and embed them");
    adfam::SamplerConfig sample_cfg;
    c_sample->add_option("--bits", sample_cfg.bits)->capture_default_str();
    c_sample->add_option("--seed", sample_cfg.seed)->capture_default_str();
    c_sample->add_option("--n", sample_cfg.n_samples)->capture_default_str();
    c_sample->add_option("--depth", sample_cfg.depth)->capture_default_str();

    // annihilate
    auto* c_annihilate = app.add_subcommand("annihilate", "Span hit-test experiment");
    adfam::SamplerConfig ann_cfg;
    std::string a_basis;
    unsigned a_cap = adfam::default_config().depth_cap;
    unsigned a_threads = 1;
    c_annihilate->add_option("--basis", a_basis, "Comma-separated rationals")->required();
    c_annihilate->add_option("--bits", ann_cfg.bits)->capture_default_str();
    c_annihilate->add_option("--seed", ann_cfg.seed)->capture_default_str();
    c_annihilate->add_option("--n", ann_cfg.n_samples)->capture_default_str();
    c_annihilate->add_option("--cap", a_cap)->capture_default_str();
    c_annihilate->add_option("--threads", a_threads)->capture_default_str();

    // atoms
    auto* c_atoms = app.add_subcommand("atoms", "Pairwise-distinctness certificates for samples");
    adfam::SamplerConfig at_cfg;
    unsigned at_cap = adfam::default_config().depth_cap;
    unsigned at_threads = 1;
    c_atoms->add_option("--bits", at_cfg.bits)->capture_default_str();
    c_atoms->add_option("--seed", at_cfg.seed)->capture_default_str();
    c_atoms->add_option("--n", at_cfg.n_samples)->capture_default_str();
    c_atoms->add_option("--cap", at_cap)->capture_default_str();
    c_atoms->add_option("--threads", at_threads)->capture_default_str();

    // gapstats
    auto* c_gap = app.add_subcommand("gapstats", "Exact max prime-gap ratio over a range");
    std::uint64_t g_lo = 2, g_hi = 100;
    c_gap->add_option("--lo", g_lo)->required();
    c_gap->add_option("--hi", g_hi)->required();

    // verify
    auto* c_verify = app.add_subcommand("verify", "Run a named invariant suite");
    std::string v_suite, v_scale = "small";
    std::uint64_t v_seed = 0;
    c_verify->add_option("--suite", v_suite)->required();
    c_verify->add_option("--seed", v_seed)->capture_default_str();
    c_verify->add_option("--scale", v_scale)->check(CLI::IsMember({"small", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const adfam::Config cfg = to_config(g);
        adfam::PrimeOracle oracle(cfg.sieve_ceiling);

        if (*c_family) {
            emit(adfam::to_json(
                adfam::family_prefix(oracle, adfam::Rat::parse(f_t), f_depth, cfg)));
        } else if (*c_intersect) {
            emit(adfam::to_json(adfam::intersection_certificate(
                oracle, adfam::Rat::parse(i_t), adfam::Rat::parse(i_tp), i_cap, cfg)));
        } else if (*c_ins) {
            const adfam::Rat t = adfam::Rat::parse(s_t);
            emit(adfam::in_s_json(t, adfam::in_S(t)));
        } else if (*c_embed) {
            const adfam::Rat t = adfam::Rat::parse(e_t);
            const adfam::DyadicVector v = e_baseline ? adfam::baseline_embed(t, e_depth)
                                                     : adfam::embed(oracle, t, e_depth, cfg);
            json j = adfam::to_json(v);
            json out{{"t", t.str()}, {"depth", e_depth}, {"baseline", e_baseline}};
            out.update(j);
            emit(out);
        } else if (*c_limits) {
            const adfam::LimitKind kind = parse_limit_kind(l_kind);
            json j = adfam::to_json(adfam::limit_point(oracle, kind, l_depth, cfg));
            json out{{"kind", l_kind}, {"depth", l_depth}};
            out.update(j);
            emit(out);
        } else if (*c_witness) {
            const auto points = parse_rat_list(w_points);
            const auto w = adfam::independence_witness(oracle, points, w_cap, cfg);
            json out = adfam::to_json(w);
            if (!w_embeds.empty()) {
                const bool ok = witness_matches_embeds(w, w_embeds);
                out["verified_against_embeds"] = ok;
                emit(out);
                if (!ok) return 3;
            } else {
                emit(out);
            }
        } else if (*c_sample) {
            // One embedding per line unless --output json asks for an array.
            const bool as_array = app.count("--output") > 0 && g.output == "json";
            std::mt19937_64 rng(sample_cfg.seed);
            json lines = json::array();
            for (std::uint64_t i = 0; i < sample_cfg.n_samples; ++i) {
                const adfam::Rat t = adfam::sample_t(rng, sample_cfg.bits);
                json j = adfam::to_json(adfam::embed(oracle, t, sample_cfg.depth, cfg));
                json line{{"index", i}, {"t", t.str()}};
                line.update(j);
                if (as_array) {
                    lines.push_back(std::move(line));
                } else {
                    emit(line);
                }
            }
            if (as_array) emit(lines);
        } else if (*c_annihilate) {
            const auto basis = parse_rat_list(a_basis);
            emit(adfam::to_json(
                adfam::annihilation_experiment(oracle, ann_cfg, basis, a_cap, a_threads, cfg)));
        } else if (*c_atoms) {
            emit(adfam::to_json(
                adfam::atomlessness_experiment(oracle, at_cfg, at_cap, at_threads, cfg)));
        } else if (*c_gap) {
            emit(adfam::to_json(oracle.gap_stats(g_lo, g_hi)));
        } else if (*c_verify) {
            const adfam::Scale scale =
                v_scale == "full" ? adfam::Scale::full : adfam::Scale::small;
            const adfam::SuiteResult r = adfam::run_suite(oracle, v_suite, v_seed, scale, cfg);
            emit(adfam::to_json(r));
            if (!r.passed()) return 3;
        }
        return 0;
    } catch (const adfam::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const adfam::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
