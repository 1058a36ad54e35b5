#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "twobridge/farey.hpp"

namespace twobridge {

enum class VerdictKind {
    Reducible,
    Toroidal,
    SmallSeifertFibered,
    NonExceptional,
    TorusKnotSurgery  // torus-knot slope other than the reducible one; out of scope
};

const char* to_string(VerdictKind k);

// Evidence sources a verdict can cite, named by what each argument does.
enum class SourceKind {
    TorusKnotReducibility,    // reducible exactly at 2q on the (2,q) torus knot
    ToroidalSlopeTable,       // the finite table of essential-torus slopes
    TwistSeifertSlopes,       // Whitehead-link fillings that are Seifert fibered
    PathObstruction,          // allowable diagram path with a corner above two
    TwoTermCensus,            // two-term knots are exceptional at one slope only
    NonIntegralObstruction,   // non-integral fillings are never small Seifert
    KleinBottleInterval,      // punctured Klein bottle interval (-inf,-4)
    SeifertSurfaceInterval,   // Seifert surface interval (0,inf)
    CensusStatement           // the bare census; flagged as non-constructive
};

const char* to_string(SourceKind s);

struct Certificate {
    std::vector<SourceKind> sources;
    bool incomplete_derivation = false;
    nlohmann::ordered_json data = nlohmann::ordered_json::object();

    bool constructive() const {
        return !sources.empty() && sources.front() != SourceKind::CensusStatement;
    }
};

struct SurgeryVerdict {
    Fraction slope;
    VerdictKind kind = VerdictKind::NonExceptional;
    Certificate certificate;
};

struct CensusEntry {
    Fraction slope;  // in the input knot's framing (mirror already applied)
    VerdictKind kind = VerdictKind::Toroidal;
    Certificate certificate;
};

struct KnotReport {
    std::string input;
    KnotClass knot;
    std::vector<CensusEntry> census;  // sorted by slope
    nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();
};

/// Full exceptional census of a two-bridge knot.  Throws IsLink for even
/// denominators and TrivialKnot for integer fractions.
KnotReport classify_knot(const Fraction& f);

/// Verdict for one surgery slope.  Throws TrivialSlope for the infinite
/// slope, plus everything classify_knot throws.
SurgeryVerdict classify_slope(const Fraction& f, const Fraction& slope);

/// The evidence chain alone.
Certificate slope_certificate(const Fraction& f, const Fraction& slope);

nlohmann::ordered_json certificate_to_json(const Certificate& c);
nlohmann::ordered_json report_to_json(const KnotReport& r);
nlohmann::ordered_json verdict_to_json(const SurgeryVerdict& v);

}  // namespace twobridge
