#pragma once

#include "gtcf/groebner.hpp"
#include "gtcf/poly.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gtcf::diffcheck {

using algebra::FieldAut;
using algebra::Ideal;
using algebra::Limits;
using algebra::Poly;
using algebra::RingPtr;

// Finitely presented commutative algebra F[vars] / relations. Localizations
// are tracked by companion variables: inverting v introduces a fresh variable
// u together with the relation u*v - 1, recorded in `inverses`.
struct PresentedRing {
    RingPtr ring;
    Ideal relations;
    std::vector<std::pair<size_t, size_t>> inverses; // (variable, companion)
};

// Validates that the presentation is consistent (1 is not a relation).
PresentedRing presented_ring(RingPtr ring, std::vector<Poly> relations,
                             const Limits& limits = {});

// Extends r by a companion variable inv_name for var; existing relations and
// inverse pairs carry over, and inv_name * var - 1 joins the relations.
PresentedRing with_inverse(const PresentedRing& r, const std::string& var,
                           const std::string& inv_name, const Limits& limits = {});

// Endomorphism candidate: one image per ring variable plus a field
// automorphism acting on constants. A default-constructed image marks a
// variable the candidate does not reach (it fell off a truncation window);
// applications touching such a variable are skipped rather than judged.
struct EndoCandidate {
    std::string name;
    std::vector<Poly> images;
    FieldAut constants;
};

struct CheckOutcome {
    bool pass = false;
    std::string witness; // first failure, empty when pass
    unsigned checked = 0;
    unsigned skipped = 0; // applications that touched an unreached variable
};

// Image of p under e, or empty when p touches an unreached variable.
std::optional<Poly> apply_endo(const EndoCandidate& e, const Poly& p);

// Checks that e maps every relation generator back into the relation ideal.
// Generators with unreached variables in their image count as skipped.
CheckOutcome verify_hom(const PresentedRing& r, const EndoCandidate& e,
                        const Limits& limits = {});

// Compares two composites of named candidates on each probe, modulo the
// relation ideal. Words apply rightmost first, so {"f", "g"} means f(g(p));
// the empty word is the identity. The witness names the first probe where
// the sides disagree; probes where either side is undefined are skipped.
CheckOutcome verify_relation(const PresentedRing& r,
                             const std::vector<EndoCandidate>& table,
                             const std::vector<std::string>& lhs,
                             const std::vector<std::string>& rhs,
                             const std::vector<Poly>& probes,
                             const Limits& limits = {});

struct ReplayItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ReplayReport {
    std::string scenario;
    bool verdict = false; // conjunction of the items
    std::vector<ReplayItem> items;
};

struct ZrtzParams {
    long n = 3;          // scenarios A and B
    long window_lo = -3; // scenario C index window
    long window_hi = 4;
};

// Replays the displayed computations about fields acted on by
// <sigma, tau | tau sigma = sigma^-1 tau>, one report item per step.
// Scenario A: the zeta-coefficient contradiction for odd n (even n is
// rejected). Scenario B: the cyclic sum construction, any n > 2.
// Scenario C: the cube-root tower over K(x), truncated to the index window,
// which must contain [-2, 3].
ReplayReport replay_zrtz(const std::string& scenario, const ZrtzParams& params = {},
                         const Limits& limits = {});

} // namespace gtcf::diffcheck
