#include "twobridge/classifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>

#include "twobridge/diagram.hpp"
#include "twobridge/interval.hpp"
#include "twobridge/paths.hpp"

namespace twobridge {

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Reducible: return "reducible";
        case VerdictKind::Toroidal: return "toroidal";
        case VerdictKind::SmallSeifertFibered: return "small-seifert-fibered";
        case VerdictKind::NonExceptional: return "non-exceptional";
        case VerdictKind::TorusKnotSurgery: return "torus-knot-surgery";
    }
    return "?";
}

const char* to_string(SourceKind s) {
    switch (s) {
        case SourceKind::TorusKnotReducibility: return "torus-knot-reducibility";
        case SourceKind::ToroidalSlopeTable: return "toroidal-slope-table";
        case SourceKind::TwistSeifertSlopes: return "twist-seifert-slopes";
        case SourceKind::PathObstruction: return "path-obstruction";
        case SourceKind::TwoTermCensus: return "two-term-census";
        case SourceKind::NonIntegralObstruction: return "non-integral-obstruction";
        case SourceKind::KleinBottleInterval: return "klein-bottle-interval";
        case SourceKind::SeifertSurfaceInterval: return "seifert-surface-interval";
        case SourceKind::CensusStatement: return "census-statement";
    }
    return "?";
}

namespace {

using json = nlohmann::ordered_json;

Fraction fr(i64 n, i64 d = 1) { return Fraction::make(n, d); }

// Slope printed in the input framing: the census stores output slopes, the
// certificates record the canonical-side slope they actually checked.
Fraction to_output(const KnotClass& k, const Fraction& canonical_slope) {
    return k.mirrored ? canonical_slope.negated() : canonical_slope;
}

struct KnotContext {
    KnotReport report;
    // Lazily built shared evidence.
    json obstruction;           // Generic: allowable path with corner > 2
    json whitehead;             // TwoTermGeneric / TwistKnot: two-channel path
    bool has_obstruction = false;
    bool has_whitehead = false;
};

json whitehead_evidence(i64 r) {
    WhiteheadPathResult res = twisted_whitehead_path(r);
    json j;
    j["link_expansion"] = res.diagram.expansion.terms();
    j["mirrored"] = res.mirrored;
    j["certificate"] = json::parse(certificate_to_json(res.diagram, res.certificate));
    return j;
}

void add_entry(KnotContext& ctx, const Fraction& canonical_slope, VerdictKind kind,
               Certificate cert) {
    CensusEntry e;
    e.slope = to_output(ctx.report.knot, canonical_slope);
    e.kind = kind;
    e.certificate = std::move(cert);
    if (ctx.report.knot.mirrored) e.certificate.data["canonical_slope"] = canonical_slope.str();
    ctx.report.census.push_back(std::move(e));
}

Certificate toroidal_cert(const std::string& case_note, const json& extra = {}) {
    Certificate c;
    c.sources = {SourceKind::ToroidalSlopeTable};
    c.data["case"] = case_note;
    if (!extra.is_null() && !extra.empty()) c.data["detail"] = extra;
    return c;
}

Certificate sfs_cert(i64 n, int sign, i64 slope, bool via_mirror_symmetry) {
    Certificate c;
    c.sources = {SourceKind::TwistSeifertSlopes};
    // -1/n filling of one Whitehead-link component turns the other into the
    // twist knot; the -1, -2, -3 fillings stay small Seifert fibered.
    c.data["whitehead_link"] = "[2,2,-2]";
    c.data["companion_filling"] = "-1/" + std::to_string(n);
    c.data["twist_form"] = "[" + std::to_string(2 * n) + "," + std::to_string(2 * sign) + "]";
    c.data["slope"] = slope;
    if (via_mirror_symmetry) c.data["amphicheiral"] = true;
    return c;
}

void build_twist_census(KnotContext& ctx, i64 n, int sign) {
    // [2n, s*2]: toroidal at 0 and -4s; Seifert fibered at -s, -2s, -3s.
    add_entry(ctx, fr(0), VerdictKind::Toroidal, toroidal_cert("twist-knot slope 0"));
    add_entry(ctx, fr(-4 * sign), VerdictKind::Toroidal, toroidal_cert("twist-knot slope -4s"));
    for (i64 m = 1; m <= 3; ++m)
        add_entry(ctx, fr(-m * sign), VerdictKind::SmallSeifertFibered,
                  sfs_cert(n, sign, -m * sign, false));
}

void build_figure_eight_census(KnotContext& ctx) {
    for (i64 s : {0LL, 4LL, -4LL})
        add_entry(ctx, fr(s), VerdictKind::Toroidal, toroidal_cert("figure-eight slope"));
    for (i64 m = 1; m <= 3; ++m) {
        add_entry(ctx, fr(m), VerdictKind::SmallSeifertFibered, sfs_cert(1, -1, m, false));
        add_entry(ctx, fr(-m), VerdictKind::SmallSeifertFibered, sfs_cert(1, -1, -m, true));
    }
}

std::shared_ptr<KnotContext> build_context(const Fraction& f) {
    auto ctx = std::make_shared<KnotContext>();
    ctx->report.input = f.str();
    ctx->report.knot = normalize_knot(f);
    KnotClass& k = ctx->report.knot;
    if (k.family == KnotFamily::Trivial) throw TrivialKnot();

    json& diag = ctx->report.diagnostics;
    diag["canonical"] = {{"p", k.p}, {"q", k.q}, {"mirrored", k.mirrored}};
    diag["family"] = to_string(k.family);

    switch (k.family) {
        case KnotFamily::TorusKnot: {
            Certificate c;
            c.sources = {SourceKind::TorusKnotReducibility};
            c.data["torus_knot"] = "(2," + std::to_string(k.q) + ")";
            add_entry(*ctx, fr(2 * k.q), VerdictKind::Reducible, std::move(c));
            diag["note"] = "torus-knot surgeries other than the reducible slope are out of scope";
            break;
        }
        case KnotFamily::FigureEight:
            build_figure_eight_census(*ctx);
            break;
        case KnotFamily::TwistKnot:
            diag["twist"] = {{"n", k.twist_n}, {"sign", k.twist_sign}};
            build_twist_census(*ctx, k.twist_n, k.twist_sign);
            break;
        case KnotFamily::TwoTermGeneric: {
            diag["two_term_form"] = {k.b1, k.b2};
            i64 slope = k.b1 % 2 == 0 ? 0 : 2 * k.b2;
            json detail;
            detail["form"] = {k.b1, k.b2};
            detail["rule"] = k.b1 % 2 == 0 ? "both terms even: slope 0" : "odd then even: slope 2*b2";
            add_entry(*ctx, fr(slope), VerdictKind::Toroidal,
                      toroidal_cert("two-term knot", detail));
            break;
        }
        case KnotFamily::Generic: {
            Diagram d = build_diagram(even_expansion(fr(k.p, k.q)));
            AllowableCertificate path = obstruction_path(d);
            if (path.max_corner <= 2)
                throw InternalInconsistency("generic knot without a corner obstruction");
            ctx->obstruction = json::parse(certificate_to_json(d, path));
            ctx->has_obstruction = true;
            diag["even_expansion"] = d.expansion.terms();
            diag["obstruction_path"] = ctx->obstruction;
            break;
        }
        case KnotFamily::Trivial:
            break;
    }

    {
        auto forms = two_term_forms(k);
        auto arr = json::array();
        for (const auto& e : forms) arr.push_back(e.terms());
        diag["two_term_forms"] = std::move(arr);
        diag["inverse_numerator"] = k.inverse_p;
    }

    // Shared constructive evidence for the slopes outside the census.
    if (k.family == KnotFamily::TwoTermGeneric) {
        ctx->whitehead = whitehead_evidence(k.b2);
        ctx->has_whitehead = true;
        ctx->report.diagnostics["whitehead_path"] = ctx->whitehead;
    } else if (k.family == KnotFamily::TwistKnot) {
        ctx->whitehead = whitehead_evidence(2 * k.twist_n);
        ctx->has_whitehead = true;
        ctx->report.diagnostics["whitehead_path"] = ctx->whitehead;
    }

    std::sort(ctx->report.census.begin(), ctx->report.census.end(),
              [](const CensusEntry& a, const CensusEntry& b) { return a.slope < b.slope; });

    // Census sanity: sizes and slope integrality exactly as the classification
    // demands.
    std::size_t expected = 0;
    switch (k.family) {
        case KnotFamily::Generic: expected = 0; break;
        case KnotFamily::TwoTermGeneric: expected = 1; break;
        case KnotFamily::TwistKnot: expected = 5; break;
        case KnotFamily::FigureEight: expected = 9; break;
        case KnotFamily::TorusKnot: expected = 1; break;
        case KnotFamily::Trivial: break;
    }
    if (ctx->report.census.size() != expected)
        throw InternalInconsistency("census cardinality mismatch");
    for (const auto& e : ctx->report.census) {
        if (!e.slope.is_integer()) throw InternalInconsistency("non-integral census slope");
        if (e.kind == VerdictKind::Toroidal && e.slope.num() % 2 != 0)
            throw InternalInconsistency("odd toroidal slope");
    }
    return ctx;
}

const KnotContext& cached_context(const Fraction& f) {
    thread_local std::map<std::pair<i64, i64>, std::shared_ptr<KnotContext>> cache;
    auto key = std::make_pair(f.num(), f.den());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_context(f)).first;
    return *it->second;
}

Certificate non_exceptional_cert(const KnotContext& ctx, const Fraction& slope) {
    const KnotClass& k = ctx.report.knot;
    const Fraction canon = k.mirrored ? slope.negated() : slope;
    Certificate c;
    if (k.mirrored) c.data["canonical_slope"] = canon.str();

    switch (k.family) {
        case KnotFamily::Generic:
            c.sources = {SourceKind::PathObstruction};
            c.data["path"] = ctx.obstruction;
            c.data["note"] = "allowable path with corner above two rules out Seifert "
                             "fillings; no two-term form rules out essential tori";
            return c;
        case KnotFamily::TwoTermGeneric:
            c.sources = {SourceKind::TwoTermCensus};
            c.data["form"] = {k.b1, k.b2};
            c.data["whitehead_path"] = ctx.whitehead;
            return c;
        case KnotFamily::FigureEight: {
            if (!canon.is_integer()) {
                c.sources = {SourceKind::NonIntegralObstruction};
                c.data["note"] = "non-integral fillings of a twist knot are never small "
                                 "Seifert fibered";
                return c;
            }
            c.sources = {SourceKind::KleinBottleInterval};
            auto klein = twist_knot_intervals(-1).front();
            Fraction checked = canon.num() < 0 ? canon : canon.negated();
            c.data["interval"] = klein.interval.str();
            c.data["slope_checked"] = checked.str();
            c.data["cusp_count"] = klein.cusp_count;
            if (canon.num() > 0) c.data["amphicheiral"] = true;
            if (!klein.interval.contains(checked))
                throw InternalInconsistency("slope escaped the Klein-bottle interval");
            return c;
        }
        case KnotFamily::TwistKnot: {
            if (!canon.is_integer()) {
                c.sources = {SourceKind::NonIntegralObstruction};
                c.data["whitehead_path"] = ctx.whitehead;
                return c;
            }
            // Present the knot as [2m, 2] (m = n for sign +, mirror otherwise);
            // the mirror flips the slope once more.
            const i64 n = k.twist_n;
            const int s = k.twist_sign;
            Fraction checked = s > 0 ? canon : canon.negated();
            const i64 m = s > 0 ? n : -n;
            if (checked.num() < 0) {
                auto klein = twist_knot_intervals(m).front();
                if (!klein.interval.contains(checked))
                    throw InternalInconsistency("slope escaped the Klein-bottle interval");
                c.sources = {SourceKind::KleinBottleInterval};
                c.data["presentation"] = "[" + std::to_string(2 * m) + ",2]";
                c.data["interval"] = klein.interval.str();
                c.data["slope_checked"] = checked.str();
                c.data["cusp_count"] = klein.cusp_count;
                if (s < 0) c.data["via_mirror"] = true;
                return c;
            }
            if (std::llabs(n) > 2) {
                auto both = twist_knot_intervals(m);
                const auto& seifert = both.at(1);
                if (!seifert.interval.contains(checked))
                    throw InternalInconsistency("slope escaped the Seifert-surface interval");
                c.sources = {SourceKind::SeifertSurfaceInterval};
                c.data["presentation"] = "[" + std::to_string(2 * m) + ",2]";
                c.data["interval"] = seifert.interval.str();
                c.data["slope_checked"] = checked.str();
                c.data["cusp_count"] = seifert.cusp_count;
                if (s < 0) c.data["via_mirror"] = true;
                return c;
            }
            // |n| = 2: the Seifert-surface interval needs |n| > 2, so this
            // side of the census rests on the statement alone.
            c.sources = {SourceKind::CensusStatement};
            c.incomplete_derivation = true;
            c.data["note"] = "positive-side exclusion for |n| = 2 has no constructive "
                             "interval certificate";
            return c;
        }
        default:
            throw InternalInconsistency("unexpected family in certificate synthesis");
    }
}

}  // namespace

KnotReport classify_knot(const Fraction& f) { return cached_context(f).report; }

SurgeryVerdict classify_slope(const Fraction& f, const Fraction& slope) {
    if (slope.is_infinite()) throw TrivialSlope();
    const KnotContext& ctx = cached_context(f);
    SurgeryVerdict v;
    v.slope = slope;
    for (const auto& e : ctx.report.census)
        if (e.slope == slope) {
            v.kind = e.kind;
            v.certificate = e.certificate;
            return v;
        }
    if (ctx.report.knot.family == KnotFamily::TorusKnot) {
        v.kind = VerdictKind::TorusKnotSurgery;
        v.certificate.sources = {SourceKind::TorusKnotReducibility};
        v.certificate.data["out_of_scope"] = true;
        v.certificate.data["note"] = "torus-knot fillings away from the reducible slope "
                                     "are classical and not classified here";
        return v;
    }
    v.kind = VerdictKind::NonExceptional;
    v.certificate = non_exceptional_cert(ctx, slope);
    return v;
}

Certificate slope_certificate(const Fraction& f, const Fraction& slope) {
    return classify_slope(f, slope).certificate;
}

nlohmann::ordered_json certificate_to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    auto src = nlohmann::ordered_json::array();
    for (auto s : c.sources) src.push_back(to_string(s));
    j["sources"] = std::move(src);
    j["incomplete_derivation"] = c.incomplete_derivation;
    j["data"] = c.data;
    return j;
}

nlohmann::ordered_json report_to_json(const KnotReport& r) {
    nlohmann::ordered_json j;
    j["input"] = r.input;
    j["canonical"] = {{"p", r.knot.p}, {"q", r.knot.q}, {"mirrored", r.knot.mirrored}};
    j["family"] = to_string(r.knot.family);
    auto census = nlohmann::ordered_json::array();
    for (const auto& e : r.census) {
        nlohmann::ordered_json row;
        row["slope"] = e.slope.str();
        row["kind"] = to_string(e.kind);
        row["certificate"] = certificate_to_json(e.certificate);
        census.push_back(std::move(row));
    }
    j["census"] = std::move(census);
    j["diagnostics"] = r.diagnostics;
    return j;
}

nlohmann::ordered_json verdict_to_json(const SurgeryVerdict& v) {
    nlohmann::ordered_json j;
    j["slope"] = v.slope.str();
    j["kind"] = to_string(v.kind);
    j["certificate"] = certificate_to_json(v.certificate);
    return j;
}

}  // namespace twobridge
