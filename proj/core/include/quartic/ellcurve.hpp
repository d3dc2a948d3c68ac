#pragma once

#include <optional>
#include <vector>

#include "quartic/fibration.hpp"
#include "quartic/poly.hpp"

namespace quartic {

/// Long Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct WeierstrassCurve {
    Rat a1, a2, a3, a4, a6;

    Rat discriminant() const;
    friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;
};

/// O or an affine point; coordinates are exact rationals.
struct EllPoint {
    bool infinity = true;
    Rat x, y;

    static EllPoint O() { return {}; }
    static EllPoint affine(Rat x, Rat y) { return {false, std::move(x), std::move(y)}; }

    friend bool operator==(const EllPoint&, const EllPoint&) = default;
};

bool on_curve(const WeierstrassCurve& e, const EllPoint& p);

/// Group law (chord-tangent, Silverman III.2.3). Throws PointNotOnCurve.
EllPoint ell_neg(const WeierstrassCurve& e, const EllPoint& p);
EllPoint ell_add(const WeierstrassCurve& e, const EllPoint& p, const EllPoint& q);
EllPoint ell_mul(const WeierstrassCurve& e, const Int& k, const EllPoint& p);

/// Smallest k <= 12 with kQ = O, or nullopt meaning infinite order (valid
/// over the rationals by Mazur's theorem).
std::optional<int> bounded_torsion_order(const WeierstrassCurve& e, const EllPoint& q);

/// Birational identification of a nonsingular fibre with its Weierstrass
/// model, origin at the seed point. The underlying chain (projection from
/// the seed to a plane cubic, then Nagell reduction) has finitely many
/// exceptional points; those are routed through the chord group law on the
/// cubic with a pool of helper points, so both directions are total in
/// practice. Construction throws SingularFibre (BadInput).
class CurveMap {
public:
    const WeierstrassCurve& curve() const { return e_; }
    const ProjPoint& origin_point() const { return seed_; }

    /// forward: fibre point -> curve point; forward(seed) = O.
    EllPoint to_curve(const ProjPoint& p) const;
    /// inverse: curve point -> fibre point; inverse(O) = seed.
    ProjPoint to_fibre(const EllPoint& q) const;

private:
    friend std::pair<WeierstrassCurve, CurveMap> fibre_to_weierstrass(const Surface&,
                                                                      const RulingPair&, int,
                                                                      const ProjPoint&);
    struct K3 {
        std::array<Int, 3> c;
        friend bool operator==(const K3&, const K3&) = default;
    };

    K3 project(const ProjPoint& p) const;
    ProjPoint unproject(const K3& k) const;
    K3 third(const K3& a, const K3& b) const;
    K3 chord_neg(const K3& a) const;
    K3 chord_add(const K3& a, const K3& b) const;
    K3 chord_sub(const K3& a, const K3& b) const;
    std::optional<EllPoint> nagell_forward(const K3& k) const;
    std::optional<K3> nagell_inverse(const EllPoint& q) const;

    Surface s_{Surface::make({1, 1, -1, -1})};
    ProjPoint seed_{Vec4I{1, 0, 0, 0}};
    Vec4I q1_{}, q2_{};          // fibre quadric coefficient vectors
    size_t pivot_ = 0;           // coordinate sent to the seed
    std::array<size_t, 3> ks_{}; // the other coordinates, ascending
    MPoly cubic_;                // plane cubic K in vars 0,1,2
    std::array<MPoly, 2> lin_;   // L_1, L_2 in vars 0,1,2
    std::array<MPoly, 2> quad_;  // M_1, M_2 in vars 0,1,2
    K3 oprime_{};                // rational base point of K
    size_t kpivot_ = 0;          // affine chart coordinate at O'
    std::array<size_t, 2> kaff_{};
    std::array<Rat, 2> kbase_{}; // affine coordinates of O'
    bool swapped_ = false;
    std::array<std::vector<Rat>, 3> sp_; // s_1(1,t), s_2(1,t), s_3(1,t)
    std::vector<Rat> g_;                 // quartic g(t)
    Rat t0_, v0_;
    bool flex_ = false;                  // v0 == 0 branch
    std::array<Rat, 5> gc_{};            // G(u) = g(t0+u) coefficients, ascending
    std::array<Rat, 4> hc_{};            // flex: H = G/u coefficients, ascending
    Rat r_, ss_, lambda_;                // general branch data
    WeierstrassCurve e_;
    std::vector<K3> pool_;
};

std::pair<WeierstrassCurve, CurveMap> fibre_to_weierstrass(const Surface& s, const RulingPair& r,
                                                           int i, const ProjPoint& p);

/// Convenience wrappers matching the two transport directions.
EllPoint transport_point(const CurveMap& m, const ProjPoint& p);
ProjPoint transport_point(const CurveMap& m, const EllPoint& q);

} // namespace quartic
