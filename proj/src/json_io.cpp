#include "adfam/json_io.hpp"

namespace adfam {

namespace {
// Exact in a double, hence exact in any JSON reader.
const mpz_class kJsonNumberMax = (mpz_class(1) << 53) - 1;
}  // namespace

json rat_json(const Rat& t) { return t.str(); }

json mpz_string(const mpz_class& z) { return z.get_str(); }

json mpz_json_number_or_string(const mpz_class& z) {
    if (z <= kJsonNumberMax) return static_cast<std::uint64_t>(z.get_ui());
    return z.get_str();
}

json mpz_list_strings(const std::vector<mpz_class>& zs) {
    json a = json::array();
    for (const auto& z : zs) a.push_back(z.get_str());
    return a;
}

json to_json(const FamilyPrefix& fp) {
    json e = json::array();
    for (const auto& p : fp.e) e.push_back(mpz_json_number_or_string(p));
    return json{{"t", rat_json(fp.t)}, {"e", e}, {"f", mpz_list_strings(fp.f)}};
}

json to_json(const IntersectionCertificate& cert) {
    return json{{"t", rat_json(cert.t)},
                {"tp", rat_json(cert.t_prime)},
                {"v_star", cert.v_star},
                {"common", mpz_list_strings(cert.common)}};
}

json in_s_json(const Rat& t, const std::optional<AlgebraicPoint>& pt) {
    json j{{"t", rat_json(t)}, {"in_S", pt.has_value()}};
    if (pt) {
        j["p"] = mpz_string(pt->p);
        j["i"] = pt->i;
    }
    return j;
}

json to_json(const DyadicVector& v) {
    json j{{"entries", mpz_list_strings(v.entries)}};
    j["tail_bound_exp"] = v.tail_bound_exp ? json(v.tail_bound_exp->get_str()) : json(nullptr);
    return j;
}

json to_json(const IndependenceWitness& w) {
    json pts = json::array();
    for (const auto& p : w.points) pts.push_back(rat_json(p));
    return json{{"points", pts},
                {"depth_used", w.depth_used},
                {"witness_indices", mpz_list_strings(w.witness_indices)}};
}

json to_json(const GapStats& gs) {
    return json{{"lo", gs.range_lo},
                {"hi", gs.range_hi},
                {"max_ratio_num", mpz_string(gs.max_ratio_num)},
                {"max_ratio_den", mpz_string(gs.max_ratio_den)},
                {"argmax_p", mpz_string(gs.argmax_p)}};
}

json to_json(const HitReport& r) {
    json basis = json::array();
    for (const auto& b : r.basis) basis.push_back(rat_json(b));
    json witnesses = json::array();
    for (const auto& w : r.witnesses) {
        witnesses.push_back(json{{"index", w.index},
                                 {"t", rat_json(w.t)},
                                 {"witness", mpz_string(w.escaping_index)}});
    }
    json errors = json::array();
    for (const auto& e : r.errors) {
        errors.push_back(json{{"index", e.index}, {"t", rat_json(e.t)}, {"error", e.message}});
    }
    return json{{"n_samples", r.n_samples},
                {"hits", r.hits},
                {"basis", basis},
                {"witnesses", witnesses},
                {"errors", errors}};
}

json to_json(const AtomReport& r) {
    json j{{"n_samples", r.n_samples},
           {"distinct", r.distinct},
           {"pairs", r.pairs},
           {"certified", r.certified},
           {"max_v_star", r.max_v_star}};
    if (r.max_pair) {
        j["max_pair"] = json::array({rat_json(r.max_pair->first), rat_json(r.max_pair->second)});
    } else {
        j["max_pair"] = nullptr;
    }
    json errors = json::array();
    for (const auto& e : r.errors) {
        errors.push_back(json{{"a", rat_json(e.a)}, {"b", rat_json(e.b)}, {"error", e.message}});
    }
    j["errors"] = errors;
    return j;
}

json to_json(const SuiteResult& r) {
    json failures = json::array();
    for (const auto& f : r.failures) {
        failures.push_back(json{{"case", f.case_desc},
                                {"inputs", f.inputs},
                                {"expected", f.expected},
                                {"got", f.got}});
    }
    return json{{"suite", r.suite_name},
                {"cases_run", r.cases_run},
                {"failures", failures},
                {"elapsed_ms", r.elapsed.count()}};
}

} // namespace adfam
