#pragma once

#include <vector>

#include "quartic/ellcurve.hpp"
#include "quartic/endo.hpp"

namespace quartic {

enum class OrderKind { One, Two, Three, Four, Infinite, UndefinedSingularFibre };

std::string to_string(OrderKind k);

/// Order of the divisor class (e_i(P)) - (P) on the fibre, with the points
/// used in the decision, so the verdict can be replayed by pure point
/// comparisons.
struct OrderClass {
    OrderKind kind;
    std::vector<std::pair<std::string, ProjPoint>> witnesses;
};

/// Decision tree: singular fibre -> Undefined; zero coordinate -> One;
/// e_i(P) a double sign flip of P -> Two; e_i^2(P) = e_i(P) -> Three;
/// e_i^2(P) a double sign flip of P -> Four (-2Q is nontrivial 2-torsion);
/// otherwise Infinite (torsion order is at most 4 for such points).
/// Throws NotOnSurface / OmegaPoint.
OrderClass order_class(const Surface& s, const RulingPair& r, int i, const ProjPoint& p);

/// Independent oracle for the Infinite verdict: the 12 first multiples of
/// the image of e_i(P) on the Weierstrass model, all checked nonzero.
struct InfiniteOrderCertificate {
    WeierstrassCurve curve;
    EllPoint q;  // image of e_i(P), origin at P
    std::vector<EllPoint> multiples;
};

/// Throws BadInput if order_class is not Infinite (certificate refused)
/// and Internal (Contradiction) if the oracle finds a vanishing multiple.
InfiniteOrderCertificate certify_infinite_order(const Surface& s, const RulingPair& r, int i,
                                                const ProjPoint& p);

} // namespace quartic
