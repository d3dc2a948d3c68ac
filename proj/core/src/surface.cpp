#include "quartic/surface.hpp"

#include <sstream>

namespace quartic {

Surface Surface::make(const Vec4Q& coeffs) {
    Surface s;
    s.c_ = coeffs;
    Rat prod = 1;
    for (const auto& x : coeffs) {
        if (x == 0) throw Error(ErrorKind::BadInput, "ZeroCoefficient");
        prod *= x;
    }
    auto n = rational_sqrt(prod);
    if (!n) throw Error(ErrorKind::BadInput, "ProductNotSquare: abcd is not a rational square");
    s.n_ = *n;
    Int lcm = 1;
    for (const auto& x : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    Int content = 0;
    for (int i = 0; i < 4; ++i) {
        Rat v = coeffs[static_cast<size_t>(i)] * Rat(lcm);
        s.ic_[static_cast<size_t>(i)] = v.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), s.ic_[static_cast<size_t>(i)].get_mpz_t());
    }
    for (auto& x : s.ic_) x /= content;
    return s;
}

Int Surface::quartic_at(const ProjPoint& p) const {
    Int acc = 0;
    for (int i = 0; i < 4; ++i) {
        Int t = p[i] * p[i];
        acc += ic_[static_cast<size_t>(i)] * t * t;
    }
    return acc;
}

bool Surface::contains(const ProjPoint& p) const { return quartic_at(p) == 0; }

Int Surface::quadric_at(const Vec4I& x) const {
    Int acc = 0;
    for (int i = 0; i < 4; ++i)
        acc += ic_[static_cast<size_t>(i)] * x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    return acc;
}

std::string Surface::str() const {
    return to_string(c_[0]) + "," + to_string(c_[1]) + "," + to_string(c_[2]) + "," + to_string(c_[3]);
}

Surface parse_surface(const std::string& spec) {
    std::stringstream ss(spec);
    std::string part;
    Vec4Q v;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 4) throw Error(ErrorKind::BadInput, "bad surface spec: " + spec);
        v[static_cast<size_t>(i++)] = parse_rat(part);
    }
    if (i != 4) throw Error(ErrorKind::BadInput, "bad surface spec: " + spec);
    return Surface::make(v);
}

std::string to_string(const PointClass& pc) {
    switch (pc.kind) {
        case PointClass::OmegaPoint: return "Omega";
        case PointClass::CoordinatePlane: return "CoordinatePlane";
        case PointClass::OnLine:
            switch (pc.pairing) {
                case LinePairing::XY_ZW: return "OnLine(xy|zw)";
                case LinePairing::XZ_YW: return "OnLine(xz|yw)";
                case LinePairing::XW_YZ: return "OnLine(xw|yz)";
            }
            return "OnLine";
        case PointClass::Generic: return "Generic";
    }
    return "?";
}

PointClass classify_point(const Surface& s, const ProjPoint& p) {
    if (!s.contains(p)) throw Error(ErrorKind::NotOnSurface, "classify_point: point not on surface");
    int zeros = p.zero_count();
    if (zeros == 2) return {PointClass::OmegaPoint, {}};
    if (zeros == 1) return {PointClass::CoordinatePlane, {}};
    // All coordinates nonzero: the point lies on one of the 48 lines iff a
    // complementary coefficient pairing vanishes (the other half follows
    // from the surface equation).
    auto quart = [&](int i) -> Int {
        Int t = p[i] * p[i];
        return s.int_coeffs()[static_cast<size_t>(i)] * t * t;
    };
    Int qx = quart(0), qy = quart(1), qz = quart(2), qw = quart(3);
    if (qx + qy == 0) return {PointClass::OnLine, LinePairing::XY_ZW};
    if (qx + qz == 0) return {PointClass::OnLine, LinePairing::XZ_YW};
    if (qx + qw == 0) return {PointClass::OnLine, LinePairing::XW_YZ};
    return {PointClass::Generic, {}};
}

std::array<SignAut, 8> SignAut::all() {
    return {SignAut(0), SignAut(1), SignAut(2), SignAut(4),
            SignAut(3), SignAut(5), SignAut(6), SignAut(7)};
}

std::array<SignAut, 3> SignAut::double_flips() {
    // xy, xz, yz; complements give the pairs involving w.
    return {SignAut(3), SignAut(5), SignAut(6)};
}

std::array<SignAut, 4> SignAut::single_flips() {
    return {SignAut(1), SignAut(2), SignAut(4), SignAut(8)};
}

ProjPoint apply_sign_aut(const SignAut& sigma, const ProjPoint& p) {
    Vec4I v = p.coords();
    for (int i = 0; i < 4; ++i)
        if (sigma.negates(i)) v[static_cast<size_t>(i)] = -v[static_cast<size_t>(i)];
    return ProjPoint(v);
}

Vec4I tangent_plane(const Surface& s, const ProjPoint& p) {
    if (!s.contains(p)) throw Error(ErrorKind::NotOnSurface, "tangent_plane: point not on surface");
    Vec4I g;
    for (int i = 0; i < 4; ++i)
        g[static_cast<size_t>(i)] = s.int_coeffs()[static_cast<size_t>(i)] * p[i] * p[i] * p[i];
    Int content = 0;
    for (const auto& x : g) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    // The surface is smooth, so the gradient never vanishes on it.
    require(content != 0, ErrorKind::Internal, "vanishing gradient");
    for (auto& x : g) x /= content;
    return g;
}

ProjPoint SumZeroTransport::forward(const ProjPoint& p) const {
    Vec4Q v;
    for (int i = 0; i < 4; ++i) v[static_cast<size_t>(i)] = Rat(p[i]) * forward_scale[static_cast<size_t>(i)];
    return normalize_point(v);
}

ProjPoint SumZeroTransport::backward(const ProjPoint& p) const {
    Vec4Q v;
    for (int i = 0; i < 4; ++i) v[static_cast<size_t>(i)] = Rat(p[i]) * backward_scale[static_cast<size_t>(i)];
    return normalize_point(v);
}

SumZeroTransport transport_sum_zero(const Surface& s, const ProjPoint& p) {
    if (!s.contains(p)) throw Error(ErrorKind::NotOnSurface, "transport_sum_zero: point not on surface");
    if (p.zero_count() != 0)
        throw Error(ErrorKind::BadInput, "ZeroCoordinate: transport needs all coordinates nonzero");
    Vec4Q coeffs, fwd, bwd;
    for (int i = 0; i < 4; ++i) {
        Rat pi(p[i]);
        Rat p4 = pi * pi * pi * pi;
        coeffs[static_cast<size_t>(i)] = s.coeff(i) * p4;
        fwd[static_cast<size_t>(i)] = Rat(1) / pi;
        bwd[static_cast<size_t>(i)] = pi;
    }
    return SumZeroTransport{Surface::make(coeffs), fwd, bwd};
}

} // namespace quartic
