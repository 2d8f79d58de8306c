#ifndef ADFAM_JSON_IO_HPP
#define ADFAM_JSON_IO_HPP

#include <nlohmann/json.hpp>

#include "adfam/embedding.hpp"
#include "adfam/family.hpp"
#include "adfam/measure.hpp"
#include "adfam/primes.hpp"
#include "adfam/verify.hpp"

namespace adfam {

// All JSON uses insertion-ordered objects so repeated runs serialize
// byte-identically. Rationals render as "A/B" strings; anything that can
// outgrow a machine word renders as a decimal string. Primes e_j are
// emitted as JSON numbers while they fit 2^53 - 1 exactly, as decimal
// strings beyond.
using json = nlohmann::ordered_json;

json rat_json(const Rat& t);                 // "A/B"
json mpz_json_number_or_string(const mpz_class& z);
json mpz_string(const mpz_class& z);
json mpz_list_strings(const std::vector<mpz_class>& zs);

json to_json(const FamilyPrefix& fp);
json to_json(const IntersectionCertificate& cert);
json in_s_json(const Rat& t, const std::optional<AlgebraicPoint>& pt);
json to_json(const DyadicVector& v);
json to_json(const IndependenceWitness& w);
json to_json(const GapStats& gs);
json to_json(const HitReport& r);
json to_json(const AtomReport& r);
json to_json(const SuiteResult& r);

} // namespace adfam

#endif
