#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>

#include "CLI11.hpp"
#include "twobridge/classifier.hpp"
#include "twobridge/diagram.hpp"
#include "twobridge/interval.hpp"
#include "twobridge/paths.hpp"
#include "twobridge/survey.hpp"

namespace {

using namespace twobridge;

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitBound = 4;
constexpr int kExitIo = 5;

// Knot input: "p/q" (reduced, odd denominator) or an expansion "[b1,...,bk]".
Fraction parse_knot_input(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '[') return evaluate(Expansion::parse(s));
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        // Reject unreduced or even-denominator inputs before reduction.
        i64 n, d;
        try {
            n = std::stoll(s.substr(0, slash));
            d = std::stoll(s.substr(slash + 1));
        } catch (const std::logic_error&) {
            throw ParseError("cannot parse knot fraction: '" + text + "'");
        }
        if (d == 0) throw IsLink("1/0 is the two-component unlink");
        if (d % 2 == 0) throw IsLink();
        if (std::gcd(n < 0 ? -n : n, d < 0 ? -d : d) != 1)
            throw IsLink("fraction is not reduced");
    }
    return Fraction::parse(s);
}

void print_report(const KnotReport& r, bool as_json, std::ostream& os) {
    if (as_json) {
        os << report_to_json(r).dump(2) << "\n";
        return;
    }
    os << "knot " << r.input << " -> canonical " << r.knot.p << "/" << r.knot.q
       << " (" << to_string(r.knot.family) << ")"
       << (r.knot.mirrored ? ", mirrored" : "") << "\n";
    if (r.census.empty()) {
        os << "no exceptional surgeries\n";
        return;
    }
    os << "exceptional surgeries: " << r.census.size() << "\n";
    for (const auto& e : r.census) {
        os << "  slope " << e.slope.str() << ": " << to_string(e.kind) << "  [";
        for (std::size_t i = 0; i < e.certificate.sources.size(); ++i)
            os << (i ? ", " : "") << to_string(e.certificate.sources[i]);
        os << "]\n";
    }
}

int cmd_classify(const std::string& knot, const std::string& slope, bool as_json) {
    Fraction f = parse_knot_input(knot);
    if (slope.empty()) {
        print_report(classify_knot(f), as_json, std::cout);
        return 0;
    }
    SurgeryVerdict v = classify_slope(f, Fraction::parse(slope));
    if (as_json) {
        std::cout << verdict_to_json(v).dump(2) << "\n";
    } else {
        std::cout << "slope " << v.slope.str() << ": " << to_string(v.kind);
        if (!v.certificate.sources.empty())
            std::cout << "  [" << to_string(v.certificate.sources.front())
                      << (v.certificate.incomplete_derivation ? ", incomplete derivation" : "")
                      << "]";
        std::cout << "\n";
    }
    return 0;
}

Diagram diagram_from_input(const std::string& text) {
    if (!text.empty() && text.front() == '[') return build_diagram(Expansion::parse(text));
    Fraction f = parse_knot_input(text);
    KnotClass k = normalize_knot(f);
    if (k.family == KnotFamily::Trivial) throw TrivialKnot();
    return build_diagram(even_expansion(Fraction::make(k.p, k.q)));
}

int cmd_diagram(const std::string& input, bool as_json, bool as_dot) {
    Diagram d = diagram_from_input(input);
    d.validate();
    if (as_dot)
        std::cout << emit_dot(d);
    else if (as_json)
        std::cout << emit_json(d) << "\n";
    else
        std::cout << "diagram of " << d.fraction.str() << " via " << d.expansion.str() << ": "
                  << d.vertices.size() << " vertices, " << d.edges.size() << " edges, "
                  << d.triangles.size() << " triangles, " << d.fans.size() << " fans\n";
    return 0;
}

int cmd_paths(const std::string& input, bool exhaustive, long long bound, bool as_json) {
    Diagram d = diagram_from_input(input);
    if (exhaustive) {
        long long count = 0;
        enumerate_allowable_paths(d, bound, [&](const AllowableCertificate& c) {
            ++count;
            if (as_json)
                std::cout << certificate_to_json(d, c) << "\n";
            else
                std::cout << "allowable path: channels=" << c.channel_count
                          << " min_corner=" << c.min_corner << " max_corner=" << c.max_corner
                          << "\n";
            return true;
        });
        if (!as_json) std::cout << "total allowable paths: " << count << "\n";
        return 0;
    }
    AllowableCertificate cert = obstruction_path(d);
    if (as_json)
        std::cout << certificate_to_json(d, cert) << "\n";
    else
        std::cout << "constructive allowable path: channels=" << cert.channel_count
                  << " min_corner=" << cert.min_corner << " max_corner=" << cert.max_corner
                  << "\n";
    return 0;
}

int cmd_whitehead(i64 r, bool as_json) {
    WhiteheadPathResult res = twisted_whitehead_path(r);
    if (as_json) {
        nlohmann::ordered_json j;
        j["twist"] = res.twist;
        j["mirrored"] = res.mirrored;
        j["expansion"] = res.diagram.expansion.terms();
        j["certificate"] =
            nlohmann::ordered_json::parse(certificate_to_json(res.diagram, res.certificate));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "twisted whitehead path for r=" << r << " via "
                  << res.diagram.expansion.str() << ": channels="
                  << res.certificate.channel_count << " min_corner="
                  << res.certificate.min_corner << (res.mirrored ? " (mirrored)" : "") << "\n";
    }
    return 0;
}

int cmd_interval(const std::string& r, i64 p1, i64 p2, i64 n1, i64 n2, i64 twist,
                 bool has_twist, bool as_json) {
    if (has_twist) {
        auto list = twist_knot_intervals(twist);
        for (const auto& t : list) {
            if (as_json) {
                nlohmann::ordered_json j;
                j["interval"] = t.interval.str();
                j["source"] = to_string(t.source);
                j["cusp_count"] = t.cusp_count;
                j["data"] = {{"r", t.data.r.str()}, {"p1", t.data.p1}, {"p2", t.data.p2},
                             {"n1", t.data.n1},     {"n2", t.data.n2}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << t.interval.str() << "  [" << to_string(t.source)
                          << ", cusps=" << t.cusp_count << "]\n";
            }
        }
        return 0;
    }
    RobertsData d{Fraction::parse(r), p1, p2, n1, n2};
    SlopeInterval j = surgery_interval(d);
    std::cout << j.str() << "\n";
    return 0;
}

int cmd_survey(i64 max_q, const std::string& out_path, int jobs, long long bound) {
    SurveyOptions opts;
    opts.max_q = max_q;
    opts.jobs = jobs;
    opts.path_bound = bound;

    std::string path = out_path;
    if (path.empty()) {
        if (const char* dir = std::getenv("SURGERY_ATLAS_OUT"))
            path = std::string(dir) + "/survey-maxq" + std::to_string(max_q) + ".jsonl";
    }
    SurveySummary summary;
    if (path.empty()) {
        summary = run_survey(opts, std::cout);
    } else {
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot open output file '" << path << "'\n";
            return kExitIo;
        }
        summary = run_survey(opts, out);
        if (!out.good()) {
            std::cerr << "error: failed writing '" << path << "'\n";
            return kExitIo;
        }
        std::cerr << "wrote " << path << "\n";
    }
    std::cerr << "knots: " << summary.knots << "\n";
    for (const auto& [name, count] : summary.family_counts)
        std::cerr << "  " << name << ": " << count << "\n";
    std::cerr << "oracle disagreements: " << summary.disagreements << "\n";
    for (const auto& note : summary.disagreement_notes) std::cerr << "  " << note << "\n";
    return summary.disagreements == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exceptional Dehn surgery census for two-bridge knots"};
    app.require_subcommand(1);

    std::string knot, slope, input, r_text = "0";
    bool as_json = false, as_dot = false, exhaustive = false;
    long long bound = 2'000'000;
    i64 p1 = 0, p2 = 0, n1 = 0, n2 = 0, twist = 0, whitehead_r = 0, max_q = 45;
    int jobs = 1;
    std::string out_path;

    auto* classify = app.add_subcommand("classify", "classify a knot or one surgery slope");
    classify->add_option("knot", knot, "knot as p/q or [b1,b2,...]")->required();
    classify->add_option("--slope", slope, "surgery slope to classify");
    classify->add_flag("--json", as_json, "emit JSON");

    auto* diagram = app.add_subcommand("diagram", "build and print a fan diagram");
    diagram->add_option("input", input, "fraction p/q or expansion [b1,...]")->required();
    diagram->add_flag("--json", as_json, "emit JSON");
    diagram->add_flag("--dot", as_dot, "emit Graphviz DOT");

    auto* paths = app.add_subcommand("paths", "allowable paths in a fan diagram");
    paths->add_option("input", input, "fraction p/q or expansion [b1,...]");
    paths->add_flag("--exhaustive", exhaustive, "enumerate every allowable path");
    paths->add_option("--bound", bound, "search node bound");
    auto* wh = paths->add_option("--whitehead", whitehead_r,
                                 "two-channel path for the twisted Whitehead link");
    paths->add_flag("--json", as_json, "emit JSON");

    auto* interval = app.add_subcommand("interval", "surgery slope intervals");
    interval->add_option("--r", r_text, "boundary slope of the spanning surface");
    interval->add_option("--p1", p1);
    interval->add_option("--p2", p2);
    interval->add_option("--n1", n1);
    interval->add_option("--n2", n2);
    auto* tw = interval->add_option("--twist", twist, "intervals for the twist knot [2n,2]");
    interval->add_flag("--json", as_json, "emit JSON");

    auto* survey = app.add_subcommand("survey", "classify every knot up to a denominator bound");
    survey->add_option("--max-q", max_q, "largest denominator (odd)")->required();
    survey->add_option("--out", out_path, "output JSONL file (default: $SURGERY_ATLAS_OUT)");
    survey->add_option("--jobs", jobs, "worker threads");
    survey->add_option("--bound", bound, "per-knot path search bound");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return cmd_classify(knot, slope, as_json);
        if (diagram->parsed()) return cmd_diagram(input, as_json, as_dot);
        if (paths->parsed()) {
            if (wh->count() > 0) return cmd_whitehead(whitehead_r, as_json);
            if (input.empty()) throw DomainError("paths needs an input or --whitehead");
            return cmd_paths(input, exhaustive, bound, as_json);
        }
        if (interval->parsed())
            return cmd_interval(r_text, p1, p2, n1, n2, twist, tw->count() > 0, as_json);
        if (survey->parsed()) return cmd_survey(max_q, out_path, jobs, bound);
    } catch (const BoundExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBound;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
