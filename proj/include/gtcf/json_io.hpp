#pragma once

#include "gtcf/axioms.hpp"
#include "gtcf/bass_serre.hpp"
#include "gtcf/diffcheck.hpp"
#include "gtcf/gpairs.hpp"
#include "gtcf/marked_group.hpp"
#include "gtcf/variety.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gtcf::jsonio {

// Insertion-ordered documents keep the emitted key order stable, which the
// deterministic-output contract of the CLI relies on.
using Json = nlohmann::ordered_json;

using algebra::BaseField;
using groups::FiniteGroup;
using groups::MarkedGroup;
using variety::BlockVariety;
using variety::GFieldPtr;

// Parses text/file into a document; malformed JSON reports as ValidationError.
Json parse_json_text(const std::string& text, const std::string& where = "input");
Json parse_json_file(const std::string& path);
std::string dump(const Json& j);
void write_json_file(const std::string& path, const Json& j);

// --- groups ------------------------------------------------------------

// {"elements": [...], "table": [[...]]}; the table is fully validated.
FiniteGroup read_finite_group(const Json& j, const std::string& where = "group");
Json write_finite_group(const FiniteGroup& g);

// Construction spec "gtcf.group/1": kinds free | finite | product | dihedral
// | graph, plus an optional explicit "rho" override (free and finite kinds
// only; the structured kinds fix their own marking).
MarkedGroup read_marked_group(const Json& j);

// Build artifact "gtcf.marked-group/1": marking labels, the rho.rho matrix
// and the diagonal classes, all positions one-based.
struct GroupBuild {
    std::string kind;
    std::vector<std::string> rho;
    size_t identity = 1;
    std::vector<std::vector<std::string>> matrix;
    std::vector<std::vector<std::pair<size_t, size_t>>> classes;
    std::vector<std::string> reps;
};

Json write_group_build(const MarkedGroup& m);
GroupBuild read_group_build(const Json& j);

// --- fields and varieties ------------------------------------------------

// "Q" or {"cyclotomic": n}; a missing/null spec means the fallback.
BaseField read_base_field(const Json& j, const BaseField& fallback);
Json write_base_field(const BaseField& f);

// Field spec of a variety file: base field plus {"action": {letter: power}}.
GFieldPtr read_gfield(const Json& field_spec, MarkedGroup group, const BaseField& fallback);
Json write_gfield(const variety::GField& gf);

// Variety spec "gtcf.variety/1" interpreted over the given action. A "field"
// entry in the document must agree with the action's field.
BlockVariety read_variety(const Json& j, const GFieldPtr& action);
Json write_variety(const BlockVariety& v);

// --- pair checking and kernels -------------------------------------------

Json write_pair_report(const gpairs::GPairReport& r);
gpairs::GPairReport read_pair_report(const Json& j);

// Tower artifact "gtcf.tower/1"; hom images live in the next stage's ring.
Json write_tower(const gpairs::KernelTower& t);
gpairs::KernelTower read_tower(const Json& j, const GFieldPtr& action);

// Kernel presentation "gtcf.kernel/1": ring variables, relations, the point
// and one image tuple per marking position, all as polynomial strings.
Json write_kernel(const gpairs::KernelPresentation& k);
gpairs::KernelPresentation read_kernel(const Json& j, const BaseField& fallback);

Json write_kernel_pair(const gpairs::KernelPairResult& r);

// --- axiom emitter ---------------------------------------------------------

Json write_axiom_scheme(const axioms::AxiomScheme& s);
axioms::AxiomScheme read_axiom_scheme(const Json& j);

Json write_axiom_instance(const axioms::AxiomInstance& a);
axioms::AxiomInstance read_axiom_instance(const Json& j);

// --- difference-identity verification --------------------------------------

Json write_replay_report(const diffcheck::ReplayReport& r);
diffcheck::ReplayReport read_replay_report(const Json& j);

// Presented ring "gtcf.ring/1": field, variables, relation strings and
// optional ["var", "companion"] localization pairs.
diffcheck::PresentedRing read_ring(const Json& j, const BaseField& fallback,
                                   const algebra::Limits& limits = {});
Json write_ring(const diffcheck::PresentedRing& r);

// Verification job "gtcf.maps/1": named endomorphism candidates (images keyed
// by variable; omitted variables are unreached) plus composite identities to
// compare. Probes default to all ring variables.
struct VerifyIdentity {
    std::string name;
    std::vector<std::string> lhs, rhs;
    std::vector<algebra::Poly> probes;
};

struct VerifyJob {
    std::vector<diffcheck::EndoCandidate> maps;
    std::vector<VerifyIdentity> identities;
};

VerifyJob read_maps(const Json& j, const diffcheck::PresentedRing& r);
Json write_maps(const VerifyJob& job, const diffcheck::PresentedRing& r);

// Runs hom checks for every candidate and then the listed identities.
diffcheck::ReplayReport run_verify_job(const diffcheck::PresentedRing& r, const VerifyJob& job,
                                       const algebra::Limits& limits = {});

} // namespace gtcf::jsonio
