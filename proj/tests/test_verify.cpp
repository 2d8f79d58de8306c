#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adfam/errors.hpp"
#include "adfam/json_io.hpp"
#include "adfam/verify.hpp"

using namespace adfam;

TEST_CASE("suite names are the canonical eight") {
    const auto& names = suite_names();
    CHECK(names.size() == 8);
    CHECK(names.front() == "family-oracle");
    CHECK(names.back() == "measure");
}

TEST_CASE("unknown suite is a domain error") {
    PrimeOracle po;
    CHECK_THROWS_AS(run_suite(po, "unknown", 1, Scale::small), domain_error);
}

TEST_CASE("each suite passes at small scale and is deterministic per seed") {
    PrimeOracle po;
    for (const auto& name : suite_names()) {
        CAPTURE(name);
        const SuiteResult a = run_suite(po, name, 0x5eed, Scale::small);
        for (const auto& f : a.failures) {
            CAPTURE(f.case_desc);
            CAPTURE(f.inputs);
            CAPTURE(f.expected);
            CAPTURE(f.got);
            CHECK(false);
        }
        CHECK(a.passed());
        CHECK(a.cases_run > 0);

        const SuiteResult b = run_suite(po, name, 0x5eed, Scale::small);
        CHECK(a.cases_run == b.cases_run);
        // identical modulo elapsed time
        json ja = to_json(a), jb = to_json(b);
        ja.erase("elapsed_ms");
        jb.erase("elapsed_ms");
        CHECK(ja.dump() == jb.dump());
    }
}
