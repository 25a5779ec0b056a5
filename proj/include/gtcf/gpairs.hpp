#pragma once

#include "gtcf/variety.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gtcf::gpairs {

using algebra::FieldAut;
using algebra::Ideal;
using algebra::Limits;
using algebra::Poly;
using algebra::RingPtr;
using groups::MarkedGroup;
using groups::Word;
using variety::BlockVariety;
using variety::GFieldPtr;

// One named condition of a pair predicate. When the condition fails the
// witness renders the offending ideals or block labels.
struct PairCheck {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct GPairReport {
    bool verdict = false;
    std::string kind; // which pair definition was applied
    std::string note; // standing caveats of the ideal representation
    std::vector<PairCheck> checks;

    const PairCheck* find(const std::string& name) const;
    bool passed(const std::string& name) const;
};

struct GPairOptions {
    // Additionally runs the redundant equivalent formulations of the finite
    // pair conditions and records their outcomes as checks.
    bool debug_equivalences = false;
    Limits limits;
};

// Decides whether (V, W) is a pair for the marking, dispatching on the kind
// of the marked group. W must consist of exactly the blocks rho_i * l over
// the labels l of V, with matching widths.
GPairReport check_g_pair(const BlockVariety& v, const BlockVariety& w, const MarkedGroup& m,
                         const GPairOptions& opts = {});

// The prolongation of (V, W): the twisted copies of W intersected with the
// twisted copies of V over one coordinate block per diagonal class of the
// marking. The returned ideal carries its reduced lex basis.
BlockVariety prolong(const BlockVariety& v, const BlockVariety& w, const MarkedGroup& m,
                     const Limits& limits = {});

// The same intersection spelled over all m x m marking positions, keeping
// the diagonal identifications as explicit generators instead of contracting
// them into shared blocks. Position (i, j) holds one full copy of the
// coordinates of V.
struct PositionProlongation {
    RingPtr ring;
    Ideal ideal;
    size_t m = 0;
    size_t v_width = 0;

    size_t var_offset(size_t i, size_t j) const;
};

PositionProlongation prolong_positions(const BlockVariety& v, const BlockVariety& w,
                                       const MarkedGroup& m, const Limits& limits = {});

// Whether the prolongation identifies positions (i, j) and (k, l): membership
// of x_(i,j) - x_(k,l), componentwise, in the position ideal. Indices are
// zero-based marking positions.
bool word_problem_diagonal_check(const PositionProlongation& wp, size_t i, size_t j, size_t k,
                                 size_t l, const Limits& limits = {});

// Coordinate realization of one extension generator: the map sends the
// coordinates of a stage to polynomials over the next stage, with constants
// passing through the recorded automorphism.
struct GeneratorMap {
    Word generator;
    FieldAut constants;
    std::vector<Poly> images;
};

struct HomData {
    std::vector<GeneratorMap> maps; // one per marking position
};

struct PairCheckFailed : std::runtime_error {
    GPairReport report;
    explicit PairCheckFailed(GPairReport r);
};

struct StageCheckFailed : std::runtime_error {
    size_t stage = 0;
    GPairReport report;
    StageCheckFailed(size_t stage, GPairReport r);
};

// Iterated prolongation tower V, W, W', W'', ... with every consecutive pair
// re-verified. reports[k] and homs[k] cover (stages[k], stages[k+1]).
struct KernelTower {
    std::vector<BlockVariety> stages;
    std::vector<GPairReport> reports;
    std::vector<HomData> homs;
};

KernelTower tower(const BlockVariety& v, const BlockVariety& w, const MarkedGroup& m,
                  size_t steps, const GPairOptions& opts = {});

// The coordinate maps of the extension step carried by a verified pair: the
// coordinates of V go to the variables of the block of W labeled rho_i.
// Throws PairCheckFailed when (V, W) is not a pair.
HomData kernel_from_pair(const BlockVariety& v, const BlockVariety& w, const MarkedGroup& m,
                         const GPairOptions& opts = {});

// Finitely presented input for the reverse direction: a quotient of a
// polynomial ring, a point given by coordinate polynomials, and for every
// marking position the coordinates of its image.
struct KernelPresentation {
    RingPtr ring;
    std::vector<Poly> relations;
    std::vector<Poly> point;
    std::vector<std::vector<Poly>> images;
};

struct KernelPairResult {
    BlockVariety v;
    BlockVariety w;
    GPairReport report;
};

// Reads the pair of loci off a presented kernel: V is the locus of the point,
// W the joint locus of its images, both computed by elimination. The identity
// position must reproduce the point modulo the relations, and the relation
// ideal must be proper.
KernelPairResult pair_from_kernel(const GFieldPtr& action, const MarkedGroup& m,
                                  const KernelPresentation& pres, const GPairOptions& opts = {});

} // namespace gtcf::gpairs
