#pragma once

#include <cstdint>
#include <vector>

#include "quartic/endo.hpp"
#include "quartic/fibration.hpp"

namespace quartic {

struct OrbitNode {
    ProjPoint point;
    int64_t parent;       // index into the node list, -1 for the seed
    std::string op;       // "seed" | "e1" | "e2" | "sigma_<letters>"
    Int height;
    size_t height_digits;
    FibreId f1, f2;
};

struct Strategy {
    size_t max_nodes = 200;
    size_t max_height_digits = 2000;
    bool sigma_closure = true;
    unsigned threads = 0;  // accepted as a cap; the engine is sequential
};

struct OrbitResult {
    std::vector<OrbitNode> nodes;       // sorted by (height, point)
    size_t pruned = 0;                  // endomorphism images over the digit budget
    size_t singular_fibre_nodes = 0;    // accepted nodes on a singular fibre (either index)
};

/// Closes the seed under {e1, e2} and (optionally) the sign automorphisms,
/// lowest height expanded first, deduplicating on canonical form. Every
/// node is re-verified against the surface equation. Deterministic:
/// the emitted order is (height, lexicographic), independent of schedule.
/// Throws SeedInOmega (OmegaPoint), EmptyBudget (BadInput).
OrbitResult generate_orbit(const Surface& s, const RulingPair& r, const ProjPoint& seed,
                           const Strategy& strat);

/// Number of distinct fibres of f_i met by the nodes.
size_t fibre_spread(const std::vector<OrbitNode>& nodes, int i);

/// Occupancy grid over the real (f1, f2) chart; bin assignment is done by
/// exact rational comparison. Throws NoRealPoints (BadInput) unless two
/// surface coefficients are positive and two negative.
struct Histogram {
    size_t bins;
    std::array<Rat, 4> chart;         // x0, x1, y0, y1
    std::vector<size_t> counts;       // row-major, bins x bins
    size_t occupied = 0;
    size_t outside = 0;               // nodes outside the chart (incl. t = 0 fibres)
};

Histogram density_histogram(const Surface& s, const std::vector<OrbitNode>& nodes,
                            const std::array<Rat, 4>& chart, size_t bins);

} // namespace quartic
