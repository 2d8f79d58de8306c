#include "adfam/embedding.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "adfam/errors.hpp"

namespace adfam {

DyadicSum DyadicSum::pow2(mpz_class neg_exponent) {
    DyadicSum s;
    s.exps_.push_back(std::move(neg_exponent));
    return s;
}

void DyadicSum::add_pow(mpz_class e) {
    // Insert keeping exponents sorted; equal exponents carry: 2^-e + 2^-e = 2^-(e-1).
    while (true) {
        auto it = std::lower_bound(exps_.begin(), exps_.end(), e);
        if (it == exps_.end() || *it != e) {
            exps_.insert(it, std::move(e));
            return;
        }
        exps_.erase(it);
        e -= 1;
    }
}

void DyadicSum::add(const DyadicSum& other) {
    for (const auto& e : other.exps_) add_pow(e);
}

int DyadicSum::cmp(const DyadicSum& o) const {
    // Normalized exponent lists compare like binary expansions: at the first
    // index where they differ, the smaller exponent carries the larger value;
    // a strict prefix is the smaller value.
    const std::size_t n = std::min(exps_.size(), o.exps_.size());
    for (std::size_t k = 0; k < n; ++k) {
        const int c = mpz_cmp(exps_[k].get_mpz_t(), o.exps_[k].get_mpz_t());
        if (c < 0) return 1;
        if (c > 0) return -1;
    }
    if (exps_.size() == o.exps_.size()) return 0;
    return exps_.size() > o.exps_.size() ? 1 : -1;
}

DyadicVector embed(PrimeOracle& po, const Rat& t, unsigned depth, const Config& cfg) {
    if (depth == 0) throw domain_error("embed requires depth >= 1");
    if (depth > cfg.depth_cap) {
        throw resource_error("embed depth " + std::to_string(depth) +
                             " exceeds the depth cap (" + std::to_string(cfg.depth_cap) + ")");
    }
    // One extra step sharpens the tail bound: sum_{u>k} 2^{-f_u} <= 2^{-(f_{k+1}-1)}
    // because f_{u+1} >= 2 f_u.
    FamilyPrefix fp = detail::prefix_unchecked(po, t, depth + 1, cfg);
    DyadicVector v;
    v.entries.assign(fp.f.begin(), fp.f.begin() + depth);
    v.tail_bound_exp = fp.f[depth] - 1;
    return v;
}

DyadicVector baseline_embed(const Rat& t, unsigned depth) {
    if (depth == 0) throw domain_error("baseline_embed requires depth >= 1");
    DyadicVector v;
    // Long division emits binary digits; dyadic t terminates (remainder 0).
    mpz_class r = t.num();
    for (unsigned n = 1; n <= depth && r != 0; ++n) {
        r *= 2;
        if (r >= t.den()) {
            r -= t.den();
            v.entries.emplace_back(n);
        }
    }
    v.tail_bound_exp = mpz_class(depth);
    return v;
}

std::pair<DyadicSum, DyadicSum> l1_norm_bounds(const DyadicVector& v) {
    DyadicSum lower;
    for (const auto& e : v.entries) lower.add_pow(e);
    DyadicSum upper = lower;
    if (v.tail_bound_exp) upper.add_pow(*v.tail_bound_exp);
    return {std::move(lower), std::move(upper)};
}

DyadicSum coordinate_pairing(const DyadicVector& v, const mpz_class& j) {
    const bool present = std::binary_search(v.entries.begin(), v.entries.end(), j);
    return present ? DyadicSum::pow2(j) : DyadicSum{};
}

IndependenceWitness independence_witness(PrimeOracle& po, const std::vector<Rat>& points,
                                         unsigned depth_cap, const Config& cfg) {
    if (points.size() < 2) {
        throw domain_error("independence_witness requires at least 2 points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i] == points[j]) {
                throw domain_error("independence_witness requires distinct points; " +
                                   points[i].str() + " repeats");
            }
        }
    }
    // V = max pairwise first mismatch; past it every f_V is pairwise distinct.
    unsigned v_max = 1;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const bool lt = points[i] < points[j];
            const Rat& lo = lt ? points[i] : points[j];
            const Rat& hi = lt ? points[j] : points[i];
            try {
                const auto cert = intersection_certificate(po, lo, hi, depth_cap, cfg);
                v_max = std::max(v_max, cert.v_star);
            } catch (const resource_error& e) {
                throw resource_error("independence_witness: certificate for pair " + lo.str() +
                                     " vs " + hi.str() + " failed: " + e.what());
            }
        }
    }
    IndependenceWitness w;
    w.points = points;
    w.depth_used = v_max;
    Config deep = cfg;
    deep.depth_cap = std::max(deep.depth_cap, v_max);
    for (const auto& p : points) {
        detail::PrefixCursor cur(po, p, deep);
        w.witness_indices.push_back(cur.f(v_max));
    }
    // Postcondition: w_i belongs to its own family and escapes every other.
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            const bool member = family_contains(po, points[j], w.witness_indices[i], deep);
            if (member != (i == j)) {
                throw std::logic_error("independence witness verification failed for points " +
                                       points[i].str() + ", " + points[j].str());
            }
        }
    }
    return w;
}

DyadicVector limit_point(PrimeOracle& po, const LimitKind& kind, unsigned depth,
                         const Config& cfg) {
    if (depth == 0) throw domain_error("limit_point requires depth >= 1");
    DyadicVector v;
    if (std::holds_alternative<AtZero>(kind)) {
        return v;  // the zero vector, exactly
    }
    if (std::holds_alternative<AtOne>(kind)) {
        // f_u(t) -> 2^u as t -> 1^-, and the entries {2^u} double each step,
        // so the same tail bound shape applies.
        mpz_class pw = 1;
        for (unsigned u = 1; u <= depth; ++u) {
            pw *= 2;
            v.entries.push_back(pw);
        }
        v.tail_bound_exp = mpz_class(2 * pw - 1);
        return v;
    }
    if (const auto* left = std::get_if<LeftAt>(&kind)) {
        if (!in_S(left->t)) {
            throw domain_error("left limit only applies to points of S; " + left->t.str() +
                               " is not 1/p");
        }
        return embed(po, left->t, depth, cfg);  // left continuity
    }
    const auto& pt = std::get<RightAt>(kind).pt;
    mpz_class acc = 1;
    for (unsigned long j = 1; j <= depth + 1; ++j) {
        acc *= e_right_limit(po, pt, j, cfg);
        if (j <= depth) {
            v.entries.push_back(acc);
        } else {
            v.tail_bound_exp = acc - 1;
        }
    }
    return v;
}

} // namespace adfam
