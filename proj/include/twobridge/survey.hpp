#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twobridge/classifier.hpp"

namespace twobridge {

/// One canonical knot fraction in a survey, with the path-oracle cross-check.
struct SurveyRow {
    i64 p = 0;
    i64 q = 0;
    KnotFamily family = KnotFamily::Generic;
    std::vector<std::pair<std::string, std::string>> census;  // (slope, kind)
    int max_corner_found = 0;
    bool oracle_agreement = true;
    std::string disagreement;  // empty unless the oracle check failed

    std::string to_jsonl() const;
};

struct SurveySummary {
    i64 knots = 0;
    std::vector<std::pair<std::string, i64>> family_counts;  // sorted by name
    i64 disagreements = 0;
    std::vector<std::string> disagreement_notes;
};

struct SurveyOptions {
    i64 max_q = 45;
    int jobs = 1;
    long long path_bound = 2'000'000;
    bool run_oracle = true;
};

/// Survey every canonical knot fraction (p even, 1 < p < q, gcd(p,q) = 1,
/// q odd) with 5 <= q <= max_q.  Rows stream to `out` as JSON lines in a
/// deterministic order regardless of the worker count.
///
/// The oracle check per eligible knot (1 < p < q-1, non-torus): the
/// constructive obstruction path must agree with the exhaustive search, a
/// knot with no two-term form must reach a corner above two, and a corner
/// above two must rule every Seifert fibered slope out of the census.
SurveySummary run_survey(const SurveyOptions& opts, std::ostream& out);

}  // namespace twobridge
