#include <doctest.h>

#include "hypermw/arrangement_io.hpp"
#include "hypermw/verify.hpp"

using namespace hypermw;

TEST_CASE("random arrangements are deterministic") {
    Field f = Field::prime(7);
    Arrangement a = random_arrangement(1, f, 2, 3);
    CHECK(a.size() == 3);
    CHECK(random_arrangement(1, f, 2, 3).hyperplanes() == a.hyperplanes());
    CHECK(random_arrangement(1, f, 2, 0).size() == 0);
    CHECK_THROWS_AS(random_arrangement(1, Field::prime(3), 1, 5), Error);
    CHECK(random_arrangement(2, Field::prime(3), 1, 3).size() == 3);
    CHECK(random_arrangement(4, Field::rationals(), 3, 5).size() == 5);
    CHECK(case_arrangement(12).hyperplanes() == case_arrangement(12).hyperplanes());
}

TEST_CASE("corpus arrangements") {
    Field f = Field::rationals();
    CHECK(boolean_arrangement(f, 3).size() == 3);
    CHECK(braid_arrangement(f, 3).size() == 3);
    CHECK(braid_arrangement(f, 3).poincare_polynomial() == std::vector<long>{1, 3, 2});
    CHECK(standard_corpus(f).size() == 7);
}

TEST_CASE("suites pass on seeded cases") {
    for (const auto& name : suite_names()) {
        VerifyReport r = run_suite(name, 12);
        CHECK_MESSAGE(r.ok(), r.to_text());
        CHECK(r.cases == 12);
        CHECK(r.to_json().at("failures").empty());
    }
    CHECK(run_suite("rank-triple", 50).ok());
    CHECK_THROWS_AS(run_suite("no-such-suite", 1), Error);
    CHECK_THROWS_AS(check_case("no-such-suite", boolean_arrangement(Field::prime(5), 2), 1), Error);
}

TEST_CASE("reports are deterministic and cases replay") {
    VerifyReport a = run_suite("equiv", 6, 40), b = run_suite("equiv", 6, 40);
    CHECK(a.failures.size() == b.failures.size());
    CHECK(a.inconclusive == b.inconclusive);
    for (std::uint64_t s = 40; s < 46; ++s) {
        Arrangement arr = case_arrangement(s);
        Arrangement replay = arrangement_from_json(arrangement_to_json(arr));
        CHECK(check_case("equiv", replay, s).failures.size() == check_case("equiv", arr, s).failures.size());
    }
}

TEST_CASE("minimizing a passing case keeps it") {
    Arrangement a = boolean_arrangement(Field::prime(5), 3);
    CHECK(minimize("rank-triple", a, 1).hyperplanes() == a.hyperplanes());
}
