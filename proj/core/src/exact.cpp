#include "quartic/exact.hpp"

#include <algorithm>
#include <sstream>

namespace quartic {

Int parse_int(const std::string& s) {
    if (s.empty()) throw Error(ErrorKind::BadInput, "empty integer");
    Int n;
    if (mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
        throw Error(ErrorKind::BadInput, "bad integer: " + s);
    return n;
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::BadInput, "zero denominator: " + s);
    return make_rat(num, den);
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

static std::optional<Int> int_sqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Rat> rational_sqrt(const Rat& r) {
    auto num = int_sqrt(r.get_num());
    if (!num) return std::nullopt;
    auto den = int_sqrt(r.get_den());
    if (!den) return std::nullopt;
    return make_rat(*num, *den);
}

// ---------------------------------------------------------------- ProjPoint

ProjPoint::ProjPoint(Vec4I coords) : c_(std::move(coords)) {
    Int g = 0;
    for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) throw Error(ErrorKind::BadInput, "all-zero projective point");
    for (auto& x : c_) x /= g;
    for (const auto& x : c_) {
        if (x != 0) {
            if (x < 0)
                for (auto& y : c_) y = -y;
            break;
        }
    }
}

int ProjPoint::zero_count() const {
    int n = 0;
    for (const auto& x : c_)
        if (x == 0) ++n;
    return n;
}

std::string ProjPoint::str() const {
    return c_[0].get_str() + ":" + c_[1].get_str() + ":" + c_[2].get_str() + ":" + c_[3].get_str();
}

ProjPoint normalize_point(const Vec4I& raw) { return ProjPoint(raw); }

ProjPoint normalize_point(const Vec4Q& raw) {
    // Clear denominators, then canonicalize.
    Int lcm = 1;
    for (const auto& r : raw) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
    Vec4I v;
    for (int i = 0; i < 4; ++i) {
        Rat scaled = raw[static_cast<size_t>(i)] * Rat(lcm);
        v[static_cast<size_t>(i)] = scaled.get_num();
    }
    return ProjPoint(v);
}

ProjPoint parse_point(const std::string& s) {
    std::stringstream ss(s);
    std::string part;
    Vec4I v;
    int i = 0;
    while (std::getline(ss, part, ':')) {
        if (i >= 4) throw Error(ErrorKind::BadInput, "bad point spec: " + s);
        v[static_cast<size_t>(i++)] = parse_int(part);
    }
    if (i != 4) throw Error(ErrorKind::BadInput, "bad point spec: " + s);
    return ProjPoint(v);
}

Int height(const ProjPoint& p) {
    Int h = 0;
    for (const auto& x : p.coords()) {
        Int a = abs(x);
        if (a > h) h = a;
    }
    return h;
}

size_t height_digits(const ProjPoint& p) {
    return mpz_sizeinbase(height(p).get_mpz_t(), 10);
}

// ------------------------------------------------------------- binary forms

template <int Deg>
void BinaryForm<Deg>::normalize() {
    Int g = 0;
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return;
    for (auto& x : c) x /= g;
    for (const auto& x : c) {
        if (x != 0) {
            if (x < 0)
                for (auto& y : c) y = -y;
            break;
        }
    }
}

template void BinaryForm<1>::normalize();
template void BinaryForm<2>::normalize();
template void BinaryForm<3>::normalize();
template void BinaryForm<4>::normalize();

P1Point::P1Point(Int uu, Int vv) : u(std::move(uu)), v(std::move(vv)) {
    Int g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    if (g == 0) throw Error(ErrorKind::BadInput, "(0:0) is not a point of P^1");
    u /= g;
    v /= g;
    if (u < 0 || (u == 0 && v < 0)) {
        u = -u;
        v = -v;
    }
}

std::string P1Point::str() const { return u.get_str() + ":" + v.get_str(); }

std::pair<BinaryLinear, BinaryLinear> split_square_disc_quadratic(const BinaryQuadratic& q) {
    if (q.is_zero()) throw Error(ErrorKind::Internal, "ZeroForm: cannot split the zero quadratic");
    const Int &A = q.c[0], &B = q.c[1], &C = q.c[2];
    BinaryLinear l1, l2;
    if (A == 0 && C == 0) {
        // B*u*v
        l1.c = {Int(1), Int(0)};
        l2.c = {Int(0), Int(1)};
    } else if (A == 0) {
        // v*(B*u + C*v)
        l1.c = {Int(0), Int(1)};
        l2.c = {B, C};
    } else {
        Int disc = B * B - 4 * A * C;
        auto s = int_sqrt(disc);
        if (!s) throw Error(ErrorKind::Internal, "NonSquareDiscriminant");
        // A*q = (A u + (B-s)/2 v)(A u + (B+s)/2 v); B-s and B+s share parity.
        l1.c = {2 * A, B - *s};
        l2.c = {2 * A, B + *s};
    }
    l1.normalize();
    l2.normalize();
    if (l2.c < l1.c) std::swap(l1, l2);
    return {l1, l2};
}

template <int Deg>
BinaryForm<Deg - 1> deflate_once(const BinaryForm<Deg>& q, const P1Point& root) {
    // Synthetic division by (v_r*u - u_r*v). Work over Q then clear content;
    // the division is exact by precondition, checked via the final remainder.
    const Int &ur = root.u, &vr = root.v;
    BinaryForm<Deg - 1> out{};
    if (vr != 0) {
        // Treat as polynomial in u (coefficients of u^(Deg-i) v^i); divide by (vr*u - ur*v).
        // Coefficients over Q: b[i] with q = (vr u - ur v) * sum b[i] u^(Deg-1-i) v^i.
        std::array<Rat, Deg> b;
        Rat carry = 0;
        for (int i = 0; i < Deg; ++i) {
            b[static_cast<size_t>(i)] = (Rat(q.c[static_cast<size_t>(i)]) + carry) / Rat(vr);
            carry = b[static_cast<size_t>(i)] * Rat(ur);
        }
        Rat rem = Rat(q.c[Deg]) + carry;
        if (rem != 0) throw Error(ErrorKind::Internal, "deflate_once: not a root");
        Int lcm = 1;
        for (const auto& x : b) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
        for (int i = 0; i < Deg; ++i) {
            Rat s = b[static_cast<size_t>(i)] * Rat(lcm);
            out.c[static_cast<size_t>(i)] = s.get_num();
        }
    } else {
        // Root (1:0): v | q, so the leading u^Deg coefficient is zero.
        if (q.c[0] != 0) throw Error(ErrorKind::Internal, "deflate_once: not a root");
        for (int i = 0; i < Deg; ++i) out.c[static_cast<size_t>(i)] = q.c[static_cast<size_t>(i) + 1];
    }
    out.normalize();
    return out;
}

template BinaryForm<3> deflate_once(const BinaryForm<4>&, const P1Point&);
template BinaryForm<2> deflate_once(const BinaryForm<3>&, const P1Point&);
template BinaryForm<1> deflate_once(const BinaryForm<2>&, const P1Point&);

int root_multiplicity(const BinaryQuartic& q, const P1Point& root) {
    if (q.is_zero()) return 5;
    int mult = 0;
    BinaryQuartic f4 = q;
    if (f4.eval(root.u, root.v) != 0) return 0;
    auto f3 = deflate_once(f4, root);
    ++mult;
    if (f3.eval(root.u, root.v) != 0) return mult;
    auto f2 = deflate_once(f3, root);
    ++mult;
    if (f2.eval(root.u, root.v) != 0) return mult;
    auto f1 = deflate_once(f2, root);
    ++mult;
    if (f1.eval(root.u, root.v) != 0) return mult;
    return 4;
}

P1Point deflate_triple_root(const BinaryQuartic& q, const P1Point& root) {
    if (q.is_zero())
        throw Error(ErrorKind::Internal, "IdenticallyZero: quartic vanishes on the whole line");
    if (q.eval(root.u, root.v) != 0)
        throw Error(ErrorKind::Internal, "NotTripleRoot: not a root at all");
    auto f3 = deflate_once(q, root);
    if (f3.eval(root.u, root.v) != 0)
        throw Error(ErrorKind::Internal, "NotTripleRoot: multiplicity 1");
    auto f2 = deflate_once(f3, root);
    if (f2.eval(root.u, root.v) != 0)
        throw Error(ErrorKind::Internal, "NotTripleRoot: multiplicity 2");
    auto f1 = deflate_once(f2, root);
    // f1 = alpha*u + beta*v; its root is (beta : -alpha).
    return P1Point(f1.c[1], -f1.c[0]);
}

} // namespace quartic
