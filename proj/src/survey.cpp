#include "twobridge/survey.hpp"

#include <atomic>
#include <map>
#include <numeric>
#include <ostream>
#include <thread>

#include "twobridge/diagram.hpp"
#include "twobridge/paths.hpp"

namespace twobridge {

std::string SurveyRow::to_jsonl() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["q"] = q;
    j["family"] = to_string(family);
    auto c = nlohmann::ordered_json::array();
    for (const auto& [slope, kind] : census) c.push_back({slope, kind});
    j["census"] = std::move(c);
    j["max_corner_found"] = max_corner_found;
    j["oracle_agreement"] = oracle_agreement;
    if (!disagreement.empty()) j["disagreement"] = disagreement;
    return j.dump();
}

namespace {

SurveyRow survey_one(i64 p, i64 q, const SurveyOptions& opts) {
    SurveyRow row;
    row.p = p;
    row.q = q;
    KnotReport report = classify_knot(Fraction::make(p, q));
    row.family = report.knot.family;
    for (const auto& e : report.census)
        row.census.emplace_back(e.slope.str(), to_string(e.kind));

    bool eligible = report.knot.family != KnotFamily::TorusKnot && p > 1 && p < q - 1;
    if (!opts.run_oracle || !eligible) return row;

    Diagram d = build_diagram(even_expansion(Fraction::make(p, q)));
    AllowableCertificate constructive = obstruction_path(d);
    row.max_corner_found = constructive.max_corner;

    bool exhaustive_big = false;
    enumerate_allowable_paths(d, opts.path_bound, [&](const AllowableCertificate& c) {
        if (c.max_corner > 2) {
            exhaustive_big = true;
            return false;
        }
        return true;
    });

    auto fail = [&](const std::string& why) {
        row.oracle_agreement = false;
        row.disagreement = why;
    };
    if ((constructive.max_corner > 2) != exhaustive_big)
        fail("constructive path disagrees with the exhaustive search");
    bool two_term = !two_term_forms(report.knot).empty();
    if (!two_term && !exhaustive_big)
        fail("no corner obstruction found for a knot without two-term forms");
    if (exhaustive_big) {
        for (const auto& e : report.census)
            if (e.kind == VerdictKind::SmallSeifertFibered)
                fail("corner obstruction coexists with a Seifert fibered slope");
    }
    return row;
}

}  // namespace

SurveySummary run_survey(const SurveyOptions& opts, std::ostream& out) {
    if (opts.max_q < 5) throw DomainError("survey needs max_q >= 5");
    std::vector<std::pair<i64, i64>> knots;
    for (i64 q = 5; q <= opts.max_q; q += 2)
        for (i64 p = 2; p < q; p += 2)
            if (std::gcd(p, q) == 1) knots.emplace_back(p, q);

    std::vector<SurveyRow> rows(knots.size());
    int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < knots.size(); ++i)
            rows[i] = survey_one(knots[i].first, knots[i].second, opts);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= knots.size()) break;
                rows[i] = survey_one(knots[i].first, knots[i].second, opts);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SurveySummary summary;
    std::map<std::string, i64> families;
    for (const auto& row : rows) {
        out << row.to_jsonl() << "\n";
        ++summary.knots;
        ++families[to_string(row.family)];
        if (!row.oracle_agreement) {
            ++summary.disagreements;
            summary.disagreement_notes.push_back(std::to_string(row.p) + "/" +
                                                 std::to_string(row.q) + ": " + row.disagreement);
        }
    }
    summary.family_counts.assign(families.begin(), families.end());
    return summary;
}

}  // namespace twobridge
