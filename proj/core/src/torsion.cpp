#include "quartic/torsion.hpp"

namespace quartic {

std::string to_string(OrderKind k) {
    switch (k) {
        case OrderKind::One: return "One";
        case OrderKind::Two: return "Two";
        case OrderKind::Three: return "Three";
        case OrderKind::Four: return "Four";
        case OrderKind::Infinite: return "Infinite";
        case OrderKind::UndefinedSingularFibre: return "UndefinedSingularFibre";
    }
    return "?";
}

namespace {

bool is_double_flip_of(const ProjPoint& a, const ProjPoint& b) {
    for (const SignAut& sig : SignAut::double_flips())
        if (a == apply_sign_aut(sig, b)) return true;
    return false;
}

} // namespace

OrderClass order_class(const Surface& s, const RulingPair& r, int i, const ProjPoint& p) {
    PointClass pc = classify_point(s, p);
    if (pc.kind == PointClass::OmegaPoint)
        throw Error(ErrorKind::OmegaPoint, "OmegaPoint: order is undefined on Omega");
    if (r.is_singular_fibre(i, r.fibre_value(i, p)))
        return {OrderKind::UndefinedSingularFibre, {{"P", p}}};
    if (pc.kind == PointClass::CoordinatePlane) return {OrderKind::One, {{"P", p}}};
    ProjPoint e1 = apply_endo(s, r, i, p);
    if (is_double_flip_of(e1, p)) return {OrderKind::Two, {{"P", p}, {"e_i(P)", e1}}};
    ProjPoint e2 = apply_endo(s, r, i, e1);
    OrderClass oc{OrderKind::Infinite, {{"P", p}, {"e_i(P)", e1}, {"e_i^2(P)", e2}}};
    if (e2 == e1)
        oc.kind = OrderKind::Three;
    else if (is_double_flip_of(e2, p))
        oc.kind = OrderKind::Four;
    return oc;
}

InfiniteOrderCertificate certify_infinite_order(const Surface& s, const RulingPair& r, int i,
                                                const ProjPoint& p) {
    OrderClass oc = order_class(s, r, i, p);
    require(oc.kind == OrderKind::Infinite, ErrorKind::BadInput,
            "certificate refused: order_class is " + to_string(oc.kind));
    auto [curve, map] = fibre_to_weierstrass(s, r, i, p);
    InfiniteOrderCertificate cert;
    cert.curve = curve;
    cert.q = map.to_curve(apply_endo(s, r, i, p));
    EllPoint acc = EllPoint::O();
    for (int k = 1; k <= 12; ++k) {
        acc = ell_add(curve, acc, cert.q);
        require(!acc.infinity, ErrorKind::Internal,
                "Contradiction: classifier says Infinite but a bounded multiple vanishes");
        cert.multiples.push_back(acc);
    }
    return cert;
}

} // namespace quartic
