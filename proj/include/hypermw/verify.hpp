#pragma once

// Property suites over seeded random arrangements, with failing cases shrunk
// to a small reproducer.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypermw/arrangement.hpp"

namespace hypermw {

/// Deterministic in the seed; throws when fewer than `count` distinct
/// hyperplanes exist over the field.
Arrangement random_arrangement(std::uint64_t seed, const Field& f, std::size_t dim, std::size_t count);
/// The arrangement a suite checks for case `seed`: field, dimension and size
/// are drawn from the seed as well.
Arrangement case_arrangement(std::uint64_t seed);

Arrangement boolean_arrangement(const Field& f, std::size_t n);
/// {x1, x2, x1 + x2}
Arrangement pencil_arrangement(const Field& f);
/// {x1, x2, x1 + x2 - 1}
Arrangement triangle_arrangement(const Field& f);
/// {x_i - x_j : i < j} in dimension n.
Arrangement braid_arrangement(const Field& f, std::size_t n);

struct NamedArrangement {
    std::string name;
    Arrangement arrangement;
};
/// Boolean n = 1..4, pencil, triangle and braid in dimension 3.
std::vector<NamedArrangement> standard_corpus(const Field& f);

struct CheckFailure {
    std::string what;
    std::string expression;
};

struct CaseOutcome {
    std::vector<CheckFailure> failures;
    /// Zero tests over Q that could be neither certified nor refuted.
    long inconclusive = 0;
    bool ok() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();
/// One suite on one arrangement; `seed` drives any sampling inside the check.
CaseOutcome check_case(const std::string& suite, const Arrangement& a, std::uint64_t seed);
/// Greedily deletes hyperplanes, then moves coefficients to 0 or 1, keeping
/// each step only if the case still fails.
Arrangement minimize(const std::string& suite, const Arrangement& a, std::uint64_t seed);

struct CaseFailure {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    CheckFailure failure;
    /// Minimized arrangement document; replay with check_case(suite, it, seed).
    nlohmann::json arrangement;
};

struct VerifyReport {
    std::string suite;
    std::size_t cases = 0;
    long inconclusive = 0;
    double seconds = 0;
    std::vector<CaseFailure> failures;

    bool ok() const { return failures.empty(); }
    std::string to_text() const;
    nlohmann::json to_json() const;
};

/// Cases use seeds first_seed, ..., first_seed + seeds - 1 and run in
/// parallel; the report is ordered by case index.
VerifyReport run_suite(const std::string& name, std::size_t seeds, std::uint64_t first_seed = 1);

} // namespace hypermw
