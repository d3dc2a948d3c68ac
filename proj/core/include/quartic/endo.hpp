#pragma once

#include <optional>
#include <vector>

#include "quartic/fibration.hpp"
#include "quartic/poly.hpp"

namespace quartic {

/// The closed-form polynomial description of the endomorphism pair: for
/// each sign of N four degree-13 forms, in four conjugated variants whose
/// vanishing loci only meet in Omega. Variant 0 is the principal set;
/// variants 1..3 are its conjugates by the double transpositions
/// (xy)(zw), (xz)(yw), (xw)(yz).
struct EndoForms {
    // forms[variant][sign][coordinate]; sign 0 is +N, sign 1 is -N.
    std::array<std::array<std::array<MPoly, 4>, 2>, 4> forms;
    std::string provenance;  // "printed" | "derived"
};

/// The two endomorphism values at P via the geometric construction:
/// node tangents of the tangent-plane section, quartic deflation, and
/// fibre-tangency labeling (the tangent to the fibre of f_j yields e_i).
/// Returns (e1(P), e2(P)) in the ruling labeling of `r`.
/// Throws OmegaPoint; NotOnSurface; Internal on TangentInCurve.
std::pair<ProjPoint, ProjPoint> richmond_pair(const Surface& s, const RulingPair& r,
                                              const ProjPoint& p);

/// The node-tangent directions at p, labeled like richmond_pair: first the
/// direction whose fourth intersection point is e_1(P) (tangent to the
/// fibre of f_2), then the one for e_2(P). Requires all coordinates
/// nonzero (BadInput otherwise): on the coordinate planes the tangents
/// coincide.
std::pair<Vec4I, Vec4I> node_tangents(const Surface& s, const RulingPair& r, const ProjPoint& p);

/// Evaluates the closed forms for one sign of N, walking the conjugated
/// variants until one is nonvanishing. Diagnostic: not guaranteed to equal
/// a richmond_pair component until validated. n_sign is +1 or -1.
ProjPoint eval_printed_forms(const Surface& s, int n_sign, const ProjPoint& p);

/// Closed forms validated symbolically: the image satisfies the surface
/// equation modulo the surface ideal, and every coordinate form has the
/// exponent parities forcing sign-automorphism equivariance. Throws
/// Internal (InterpolationFailure) if validation fails. Cached per surface.
const EndoForms& derive_validated_forms(const Surface& s);

struct FormsReport {
    bool surface_preserved = false;  // both signs, symbolic
    bool sigma_equivariant = false;  // exponent parity, both signs
    bool printed_match = false;      // derived forms coincide with the principal set
    size_t samples_checked = 0;
    size_t samples_agreeing = 0;
    std::optional<ProjPoint> counterexample;
};

/// Compares the validated forms against the geometric construction on the
/// given sample points (set equality of the two values at each sample) and
/// reports the symbolic validation outcome.
FormsReport reconcile_forms(const Surface& s, const RulingPair& r,
                            const std::vector<ProjPoint>& samples);

/// Public e_i: validated closed forms as the fast path, disambiguated by
/// fibre invariance, with richmond_pair as ground-truth fallback.
ProjPoint apply_endo(const Surface& s, const RulingPair& r, int i, const ProjPoint& p);

} // namespace quartic
