#pragma once

#include <vector>

#include "quartic/surface.hpp"

namespace quartic {

/// Base parameter of a fibre, canonical point of P^1. Serializes as "s:t".
using FibreId = P1Point;

/// One representation of a ruling of the quadric Q = tau(V): the map
/// X -> (num.X : den.X) on Q, where X are the coordinates of Q (squares
/// of the surface coordinates). Undefined exactly on one line of Q.
struct RulingRep {
    Vec4I num;
    Vec4I den;
};

/// Coordinate-wise squaring, normalized.
ProjPoint tau_square(const ProjPoint& p);

/// Both rulings of Q with >= 2 representations each (disjoint base loci),
/// plus the cached degeneracy forms for singular-fibre detection.
class RulingPair {
public:
    /// Builds the rulings by splitting the tangent-plane section of Q at
    /// the seed point r0 (a point of Q, typically tau of a surface point).
    /// Throws NotOnQuadric / DegenerateTangent.
    static RulingPair build(const Surface& s, const ProjPoint& r0);

    const Surface& surface() const { return s_; }
    const std::vector<RulingRep>& reps(int ruling) const { return reps_[static_cast<size_t>(ruling - 1)]; }

    /// Value of f_i at a surface point; first defined representation wins
    /// (all defined representations agree). Throws AllRepresentationsVanish.
    FibreId fibre_value(int ruling, const ProjPoint& p) const;

    /// True iff the fibre of f_i over `fid` is singular (contains lines):
    /// some 2x2 minor of the cutting quadric pencil degenerates there.
    bool is_singular_fibre(int ruling, const FibreId& fid) const;
    bool is_singular_fibre(int ruling, const ProjPoint& p) const;

    /// The two diagonal quadrics in the surface coordinates cutting the
    /// fibre of f_i over `fid` (coefficient vectors of x^2,y^2,z^2,w^2).
    std::pair<Vec4I, Vec4I> fibre_quadrics(int ruling, const FibreId& fid) const;

private:
    RulingPair() = default;
    Surface s_{Surface::make({1, 1, -1, -1})};
    std::array<std::vector<RulingRep>, 2> reps_;
    // Six 2x2 minors of the pencil matrix, binary quadratics in (s,t).
    std::array<std::array<BinaryQuadratic, 6>, 2> minors_;
};

} // namespace quartic
