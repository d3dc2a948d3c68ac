#include "quartic/ellcurve.hpp"

#include "quartic/linalg.hpp"

namespace quartic {

namespace {

// ---- dense univariate polynomials over Rat, coefficient i on u^i ----
using UPoly = std::vector<Rat>;

void utrim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly uadd(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    utrim(r);
    return r;
}

UPoly uscale(const Rat& c, const UPoly& a) {
    UPoly r(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    utrim(r);
    return r;
}

UPoly usub(const UPoly& a, const UPoly& b) { return uadd(a, uscale(Rat(-1), b)); }

UPoly umul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    utrim(r);
    return r;
}

Rat ueval(const UPoly& p, const Rat& t) {
    Rat acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
    return acc;
}

/// p(t0 + u) as a polynomial in u.
UPoly ushift(const UPoly& p, const Rat& t0) {
    UPoly r;
    for (size_t i = p.size(); i-- > 0;) {
        // r <- r*(t0 + u) + p[i]
        UPoly next(r.size() + 1, Rat(0));
        for (size_t j = 0; j < r.size(); ++j) {
            next[j] += r[j] * t0;
            next[j + 1] += r[j];
        }
        if (next.empty()) next.resize(1, Rat(0));
        next[0] += p[i];
        utrim(next);
        r = std::move(next);
    }
    return r;
}

/// Elements of Q[u,v]/(v^2 - G(u)), written c0(u) + c1(u) v.
struct VElem {
    UPoly c0, c1;
};

VElem vmul(const VElem& a, const VElem& b, const UPoly& g) {
    VElem r;
    r.c0 = uadd(umul(a.c0, b.c0), umul(umul(a.c1, b.c1), g));
    r.c1 = uadd(umul(a.c0, b.c1), umul(a.c1, b.c0));
    return r;
}

VElem vmul_u(const VElem& a, size_t k) {
    VElem r;
    auto lift = [&](const UPoly& p) {
        if (p.empty()) return UPoly{};
        UPoly q(p.size() + k, Rat(0));
        for (size_t i = 0; i < p.size(); ++i) q[i + k] = p[i];
        return q;
    };
    r.c0 = lift(a.c0);
    r.c1 = lift(a.c1);
    return r;
}

MPoly subst(const MPoly& f, const std::array<MPoly, 4>& x) {
    MPoly out;
    for (const auto& [e, c] : f.terms()) {
        MPoly t = MPoly::constant(c);
        for (int i = 0; i < 4; ++i)
            if (e[static_cast<size_t>(i)] > 0) t = t * x[static_cast<size_t>(i)].pow(e[static_cast<size_t>(i)]);
        out = out + t;
    }
    return out;
}

std::array<Int, 3> k3_norm(std::array<Int, 3> c) {
    Int content = 0;
    for (const auto& x : c) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    require(content != 0, ErrorKind::Internal, "zero point on cubic");
    int sign = 0;
    for (const auto& x : c)
        if (x != 0) { sign = sgn(x); break; }
    if (sign < 0) content = -content;
    for (auto& x : c) x /= content;
    return c;
}

std::array<Int, 3> k3_from_q(const std::array<Rat, 3>& v) {
    Int lcm = 1;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    std::array<Int, 3> c;
    for (size_t i = 0; i < 3; ++i) {
        Rat t = v[i] * Rat(lcm);
        c[i] = t.get_num();
    }
    return k3_norm(c);
}

Rat eval3(const MPoly& f, const std::array<Int, 3>& c) {
    return f.eval({Rat(c[0]), Rat(c[1]), Rat(c[2]), Rat(0)});
}

Rat curve_defect(const WeierstrassCurve& e, const EllPoint& p) {
    const Rat &x = p.x, &y = p.y;
    return y * y + e.a1 * x * y + e.a3 * y - x * x * x - e.a2 * x * x - e.a4 * x - e.a6;
}

} // namespace

Rat WeierstrassCurve::discriminant() const {
    Rat b2 = a1 * a1 + 4 * a2;
    Rat b4 = 2 * a4 + a1 * a3;
    Rat b6 = a3 * a3 + 4 * a6;
    Rat b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

bool on_curve(const WeierstrassCurve& e, const EllPoint& p) {
    return p.infinity || curve_defect(e, p) == 0;
}

EllPoint ell_neg(const WeierstrassCurve& e, const EllPoint& p) {
    require(on_curve(e, p), ErrorKind::BadInput, "PointNotOnCurve");
    if (p.infinity) return p;
    return EllPoint::affine(p.x, -p.y - e.a1 * p.x - e.a3);
}

EllPoint ell_add(const WeierstrassCurve& e, const EllPoint& p, const EllPoint& q) {
    require(on_curve(e, p) && on_curve(e, q), ErrorKind::BadInput, "PointNotOnCurve");
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x && q.y == -p.y - e.a1 * p.x - e.a3) return EllPoint::O();
    Rat lam, nu;
    if (p.x != q.x) {
        lam = (q.y - p.y) / (q.x - p.x);
        nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
    } else {
        Rat den = 2 * p.y + e.a1 * p.x + e.a3;
        lam = (3 * p.x * p.x + 2 * e.a2 * p.x + e.a4 - e.a1 * p.y) / den;
        nu = (-p.x * p.x * p.x + e.a4 * p.x + 2 * e.a6 - e.a3 * p.y) / den;
    }
    Rat x3 = lam * lam + e.a1 * lam - e.a2 - p.x - q.x;
    Rat y3 = -(lam + e.a1) * x3 - nu - e.a3;
    return EllPoint::affine(x3, y3);
}

EllPoint ell_mul(const WeierstrassCurve& e, const Int& k, const EllPoint& p) {
    Int n = k;
    EllPoint base = p;
    if (n < 0) {
        n = -n;
        base = ell_neg(e, p);
    }
    EllPoint acc = EllPoint::O();
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (n == 0) return acc;
    for (size_t i = bits; i-- > 0;) {
        acc = ell_add(e, acc, acc);
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) acc = ell_add(e, acc, base);
    }
    return acc;
}

std::optional<int> bounded_torsion_order(const WeierstrassCurve& e, const EllPoint& q) {
    EllPoint acc = EllPoint::O();
    for (int k = 1; k <= 12; ++k) {
        acc = ell_add(e, acc, q);
        if (acc.infinity) return k;
    }
    return std::nullopt;
}

// ---- CurveMap internals ----

CurveMap::K3 CurveMap::project(const ProjPoint& p) const {
    const Int& pp = seed_.coords()[pivot_];
    Int y3 = p.coords()[pivot_];
    std::array<Int, 3> y;
    bool nonzero = false;
    for (size_t j = 0; j < 3; ++j) {
        y[j] = pp * p.coords()[ks_[j]] - y3 * seed_.coords()[ks_[j]];
        if (y[j] != 0) nonzero = true;
    }
    if (!nonzero) return oprime_;  // the seed projects to the tangent direction
    return K3{k3_norm(y)};
}

ProjPoint CurveMap::unproject(const K3& k) const {
    if (k == oprime_) return seed_;
    Rat l1 = eval3(lin_[0], k.c), l2 = eval3(lin_[1], k.c);
    Rat w;
    if (l1 != 0)
        w = -eval3(quad_[0], k.c) / l1;
    else if (l2 != 0)
        w = -eval3(quad_[1], k.c) / l2;
    else
        throw Error(ErrorKind::Internal, "cubic point off the chart and off the tangent");
    Vec4Q x;
    x[pivot_] = w * Rat(seed_.coords()[pivot_]);
    for (size_t j = 0; j < 3; ++j) x[ks_[j]] = Rat(k.c[j]) + w * Rat(seed_.coords()[ks_[j]]);
    ProjPoint out = normalize_point(x);
    for (const Vec4I* q : {&q1_, &q2_}) {
        Int acc = 0;
        for (size_t i = 0; i < 4; ++i) acc += (*q)[i] * out.coords()[i] * out.coords()[i];
        require(acc == 0, ErrorKind::Internal, "unprojected point off the fibre");
    }
    return out;
}

CurveMap::K3 CurveMap::third(const K3& a, const K3& b) const {
    auto line_cubic = [&](const std::array<Int, 3>& u, const std::array<Int, 3>& v) {
        std::array<MPoly, 4> x;
        for (size_t i = 0; i < 3; ++i)
            x[i] = MPoly::constant(Rat(u[i])) * MPoly::var(0) + MPoly::constant(Rat(v[i])) * MPoly::var(1);
        x[3] = MPoly();
        return to_binary_form<3>(subst(cubic_, x), 0, 1);
    };
    if (a == b) {
        // Tangent line at a: direction orthogonal to the gradient.
        std::array<Rat, 3> g{};
        for (const auto& [e, c] : cubic_.terms()) {
            for (size_t i = 0; i < 3; ++i) {
                if (e[i] == 0) continue;
                Rat t = c * e[i];
                for (size_t j = 0; j < 3; ++j) {
                    int pw = e[j] - (j == i ? 1 : 0);
                    for (int k = 0; k < pw; ++k) t *= Rat(a.c[j]);
                }
                g[i] += t;
            }
        }
        std::array<Int, 3> gi = k3_norm(k3_from_q(g));
        std::array<std::array<Int, 3>, 3> cand = {{{gi[1], -gi[0], Int(0)}, {gi[2], Int(0), -gi[0]}, {Int(0), gi[2], -gi[1]}}};
        for (const auto& d : cand) {
            bool zero = d[0] == 0 && d[1] == 0 && d[2] == 0;
            if (zero) continue;
            // independent from a?
            bool indep = a.c[0] * d[1] - a.c[1] * d[0] != 0 || a.c[0] * d[2] - a.c[2] * d[0] != 0 ||
                         a.c[1] * d[2] - a.c[2] * d[1] != 0;
            if (!indep) continue;
            BinaryForm<3> f = line_cubic(a.c, d);
            require(f.c[0] == 0 && f.c[1] == 0, ErrorKind::Internal, "tangent line mispredicted");
            require(f.c[2] != 0 || f.c[3] != 0, ErrorKind::Internal, "line inside cubic");
            std::array<Int, 3> out;
            for (size_t i = 0; i < 3; ++i) out[i] = f.c[3] * a.c[i] - f.c[2] * d[i];
            return K3{k3_norm(out)};
        }
        throw Error(ErrorKind::Internal, "no tangent direction");
    }
    BinaryForm<3> f = line_cubic(a.c, b.c);
    require(f.c[0] == 0 && f.c[3] == 0, ErrorKind::Internal, "chord endpoints off cubic");
    require(f.c[1] != 0 || f.c[2] != 0, ErrorKind::Internal, "line inside cubic");
    std::array<Int, 3> out;
    for (size_t i = 0; i < 3; ++i) out[i] = f.c[2] * a.c[i] - f.c[1] * b.c[i];
    return K3{k3_norm(out)};
}

CurveMap::K3 CurveMap::chord_neg(const K3& a) const {
    // -a = a * (O' * O'); the naive a * O' is off unless O' is a flex.
    return third(a, third(oprime_, oprime_));
}

CurveMap::K3 CurveMap::chord_add(const K3& a, const K3& b) const { return third(oprime_, third(a, b)); }

CurveMap::K3 CurveMap::chord_sub(const K3& a, const K3& b) const { return chord_add(a, chord_neg(b)); }

std::optional<EllPoint> CurveMap::nagell_forward(const K3& k) const {
    if (k == oprime_) return EllPoint::O();
    if (k.c[kpivot_] == 0) return std::nullopt;
    Rat alpha = Rat(k.c[kaff_[0]]) / Rat(k.c[kpivot_]) - kbase_[0];
    Rat beta = Rat(k.c[kaff_[1]]) / Rat(k.c[kpivot_]) - kbase_[1];
    if (alpha == 0) return std::nullopt;
    Rat t = beta / alpha;
    Rat v = 2 * ueval(sp_[2], t) * alpha + ueval(sp_[1], t);
    Rat u = t - t0_;
    EllPoint out;
    if (flex_) {
        if (u == 0) return EllPoint::O();  // then v = 0: the base point
        Rat x = hc_[0] / u;
        Rat y = hc_[0] * v / (u * u);
        out = EllPoint::affine(x, y);
    } else if (u != 0) {
        Rat n1 = v + v0_ + r_ * u;
        Rat x = n1 / (u * u);
        Rat y = (n1 + ss_ * u * u) / (u * u * u);
        out = EllPoint::affine(lambda_ * x, lambda_ * y);
    } else if (v == v0_) {
        return EllPoint::O();
    } else {
        // The second point over u = 0; rationalized limits of N1/u^2, N2/u^3.
        const Rat &A = gc_[4], &B = gc_[3], &C = gc_[2];
        UPoly g2 = {C - r_ * r_, B, A};
        utrim(g2);
        Rat den = v - v0_;  // = -2 v0, nonzero here
        Rat x = ueval(g2, Rat(0)) / den;
        Rat y;
        if (ss_ == 0) {
            require(!g2.empty() && g2[0] == 0, ErrorKind::Internal, "limit expansion (s=0)");
            UPoly g2q(g2.begin() + 1, g2.end());
            y = ueval(g2q, Rat(0)) / den;
        } else {
            UPoly alpha_p = {C - r_ * r_ - ss_ * v0_, B - ss_ * r_, A};
            utrim(alpha_p);
            UPoly gpoly(gc_.begin(), gc_.end());
            utrim(gpoly);
            UPoly num = usub(umul(alpha_p, alpha_p), uscale(ss_ * ss_, gpoly));
            require(num.empty() || num[0] == 0, ErrorKind::Internal, "limit expansion (s!=0)");
            UPoly numq = num.empty() ? UPoly{} : UPoly(num.begin() + 1, num.end());
            Rat d2 = ueval(alpha_p, Rat(0)) - ss_ * v;  // alpha(0) + s v0 = 2 s v0 != 0
            require(d2 != 0, ErrorKind::Internal, "limit denominator vanishes");
            y = ueval(numq, Rat(0)) / (den * d2);
        }
        out = EllPoint::affine(lambda_ * x, lambda_ * y);
    }
    require(on_curve(e_, out), ErrorKind::Internal, "forward image off the Weierstrass curve");
    return out;
}

std::optional<CurveMap::K3> CurveMap::nagell_inverse(const EllPoint& q) const {
    if (q.infinity) return oprime_;
    Rat t, v;
    if (flex_) {
        if (q.x == 0) return std::nullopt;
        Rat u = hc_[0] / q.x;
        v = q.y * u * u / hc_[0];
        t = t0_ + u;
    } else {
        Rat yy = q.y / lambda_;
        if (yy == 0) return std::nullopt;
        Rat xx = q.x / lambda_;
        Rat u = (xx + ss_) / yy;
        v = xx * u * u - v0_ - r_ * u;
        t = t0_ + u;
    }
    Rat s3t = ueval(sp_[2], t);
    Rat alpha;
    if (s3t != 0) {
        alpha = (v - ueval(sp_[1], t)) / (2 * s3t);
    } else {
        Rat s2t = ueval(sp_[1], t);
        if (s2t == 0 || v != s2t) return std::nullopt;
        alpha = -ueval(sp_[0], t) / s2t;
    }
    if (alpha == 0) return std::nullopt;
    Rat beta = t * alpha;
    std::array<Rat, 3> c{};
    c[kpivot_] = 1;
    c[kaff_[0]] = kbase_[0] + alpha;
    c[kaff_[1]] = kbase_[1] + beta;
    K3 k{k3_from_q(c)};
    require(eval3(cubic_, k.c) == 0, ErrorKind::Internal, "inverse image off the cubic");
    return k;
}

EllPoint CurveMap::to_curve(const ProjPoint& p) const {
    for (const Vec4I* q : {&q1_, &q2_}) {
        Int acc = 0;
        for (size_t i = 0; i < 4; ++i) acc += (*q)[i] * p.coords()[i] * p.coords()[i];
        require(acc == 0, ErrorKind::BadInput, "transport: point not on the fibre");
    }
    K3 k = project(p);
    if (auto f = nagell_forward(k)) return *f;
    for (const K3& h : pool_) {
        K3 w = chord_sub(k, h);
        auto fw = nagell_forward(w);
        auto fh = nagell_forward(h);
        if (fw && fh) return ell_add(e_, *fw, *fh);
    }
    throw Error(ErrorKind::Internal, "ExceptionalPoint: helper pool exhausted (forward)");
}

ProjPoint CurveMap::to_fibre(const EllPoint& q) const {
    require(on_curve(e_, q), ErrorKind::BadInput, "PointNotOnCurve");
    if (auto k = nagell_inverse(q)) return unproject(*k);
    for (const K3& h : pool_) {
        auto fh = nagell_forward(h);
        if (!fh) continue;
        auto kw = nagell_inverse(ell_add(e_, q, *fh));
        if (!kw) continue;
        return unproject(chord_sub(*kw, h));
    }
    throw Error(ErrorKind::Internal, "ExceptionalPoint: helper pool exhausted (inverse)");
}

std::pair<WeierstrassCurve, CurveMap> fibre_to_weierstrass(const Surface& s, const RulingPair& r,
                                                           int i, const ProjPoint& p) {
    FibreId fid = r.fibre_value(i, p);
    if (r.is_singular_fibre(i, fid))
        throw Error(ErrorKind::BadInput, "SingularFibre: no Weierstrass model");
    CurveMap m;
    m.s_ = s;
    m.seed_ = p;
    std::tie(m.q1_, m.q2_) = r.fibre_quadrics(i, fid);

    // Coordinates with the seed at (0:0:0:1).
    size_t pivot = 0;
    while (p.coords()[pivot] == 0) ++pivot;
    m.pivot_ = pivot;
    size_t n = 0;
    for (size_t j = 0; j < 4; ++j)
        if (j != pivot) m.ks_[n++] = j;

    // Substituted quadrics w L_k + M_k; the w^2 term vanishes as the seed
    // lies on both.
    std::array<MPoly, 4> xs;
    xs[pivot] = MPoly::constant(Rat(p.coords()[pivot])) * MPoly::var(3);
    for (size_t j = 0; j < 3; ++j)
        xs[m.ks_[j]] = MPoly::var(static_cast<int>(j)) +
                       MPoly::constant(Rat(p.coords()[m.ks_[j]])) * MPoly::var(3);
    for (int c = 0; c < 2; ++c) {
        const Vec4I& q = c == 0 ? m.q1_ : m.q2_;
        MPoly qs;
        for (size_t k = 0; k < 4; ++k) qs = qs + Rat(q[k]) * xs[k] * xs[k];
        require(qs.coeff_of(3, 2).is_zero(), ErrorKind::Internal, "seed off its fibre");
        m.lin_[static_cast<size_t>(c)] = qs.coeff_of(3, 1);
        m.quad_[static_cast<size_t>(c)] = qs.coeff_of(3, 0);
    }

    // The projected plane cubic and its rational point (tangent direction).
    m.cubic_ = m.lin_[1] * m.quad_[0] - m.lin_[0] * m.quad_[1];
    require(!m.cubic_.is_zero(), ErrorKind::Internal, "degenerate projection");
    std::array<Rat, 3> l1{}, l2{};
    for (size_t j = 0; j < 3; ++j) {
        MPoly::Exp e{};
        e[j] = 1;
        auto it1 = m.lin_[0].terms().find(e);
        auto it2 = m.lin_[1].terms().find(e);
        if (it1 != m.lin_[0].terms().end()) l1[j] = it1->second;
        if (it2 != m.lin_[1].terms().end()) l2[j] = it2->second;
    }
    std::array<Rat, 3> cross = {l1[1] * l2[2] - l1[2] * l2[1], l1[2] * l2[0] - l1[0] * l2[2],
                                l1[0] * l2[1] - l1[1] * l2[0]};
    require(cross[0] != 0 || cross[1] != 0 || cross[2] != 0, ErrorKind::Internal,
            "seed is a singular point of the fibre");
    m.oprime_ = CurveMap::K3{k3_from_q(cross)};
    require(eval3(m.cubic_, m.oprime_.c) == 0, ErrorKind::Internal, "tangent direction off the cubic");

    // Affine chart at O' and the degree decomposition s1 + s2 + s3.
    size_t kpivot = 0;
    while (m.oprime_.c[kpivot] == 0) ++kpivot;
    m.kpivot_ = kpivot;
    n = 0;
    for (size_t j = 0; j < 3; ++j)
        if (j != kpivot) m.kaff_[n++] = j;
    for (int attempt = 0; attempt < 2; ++attempt) {
        m.kbase_[0] = Rat(m.oprime_.c[m.kaff_[0]]) / Rat(m.oprime_.c[kpivot]);
        m.kbase_[1] = Rat(m.oprime_.c[m.kaff_[1]]) / Rat(m.oprime_.c[kpivot]);
        std::array<MPoly, 4> aff;
        aff[kpivot] = MPoly::constant(Rat(1));
        aff[m.kaff_[0]] = MPoly::constant(m.kbase_[0]) + MPoly::var(0);
        aff[m.kaff_[1]] = MPoly::constant(m.kbase_[1]) + MPoly::var(1);
        aff[3] = MPoly();
        MPoly kaffine = subst(m.cubic_, aff);
        require(kaffine.coeff_of(0, 0).coeff_of(1, 0).is_zero(), ErrorKind::Internal,
                "base point off the affine cubic");
        for (size_t d = 1; d <= 3; ++d) {
            UPoly sp(d + 1, Rat(0));
            for (const auto& [e, c] : kaffine.terms())
                if (static_cast<size_t>(e[0] + e[1]) == d) sp[static_cast<size_t>(e[1])] = c;
            utrim(sp);
            m.sp_[d - 1] = sp;
        }
        require(!m.sp_[0].empty(), ErrorKind::Internal, "base point singular on the cubic");
        if (m.sp_[0].size() >= 2 && m.sp_[0][1] != 0) break;  // s1 has a t-coefficient
        require(attempt == 0, ErrorKind::Internal, "degenerate linear part");
        std::swap(m.kaff_[0], m.kaff_[1]);
        m.swapped_ = true;
    }

    // Nagell: v^2 = g(t) with g = s2^2 - 4 s1 s3, base point over the root
    // of s1.
    m.g_ = usub(umul(m.sp_[1], m.sp_[1]), uscale(Rat(4), umul(m.sp_[0], m.sp_[2])));
    m.t0_ = -m.sp_[0][0] / m.sp_[0][1];
    m.v0_ = ueval(m.sp_[1], m.t0_);
    UPoly gshift = ushift(m.g_, m.t0_);
    gshift.resize(5, Rat(0));
    for (size_t j = 0; j < 5; ++j) m.gc_[j] = gshift[j];
    m.flex_ = m.v0_ == 0;
    if (m.flex_) {
        require(m.gc_[0] == 0, ErrorKind::Internal, "flex base point off the quartic");
        for (size_t j = 0; j < 4; ++j) m.hc_[j] = m.gc_[j + 1];
        require(m.hc_[0] != 0, ErrorKind::Internal, "base point is a double root");
        m.e_ = WeierstrassCurve{Rat(0), m.hc_[1], Rat(0), m.hc_[0] * m.hc_[2],
                                m.hc_[0] * m.hc_[0] * m.hc_[3]};
    } else {
        const Rat &C = m.gc_[2], &D = m.gc_[1];
        m.r_ = D / (2 * m.v0_);
        m.ss_ = C / (2 * m.v0_) - D * D / (8 * m.v0_ * m.v0_ * m.v0_);
        // Solve N2^2 = lambda N1^3 + a1' u N1 N2 + a2' u^2 N1^2 + a3' u^3 N2
        //             + a4' u^4 N1 + a6' u^6 in Q[u,v]/(v^2 - G).
        UPoly g(m.gc_.begin(), m.gc_.end());
        utrim(g);
        VElem n1{UPoly{m.v0_, m.r_}, UPoly{Rat(1)}};
        VElem n2{UPoly{m.v0_, m.r_, m.ss_}, UPoly{Rat(1)}};
        VElem lhs = vmul(n2, n2, g);
        std::array<VElem, 6> basis = {vmul(vmul(n1, n1, g), n1, g),
                                      vmul_u(vmul(n1, n2, g), 1),
                                      vmul_u(vmul(n1, n1, g), 2),
                                      vmul_u(n2, 3),
                                      vmul_u(n1, 4),
                                      VElem{UPoly(7, Rat(0)), UPoly{}}};
        basis[5].c0[6] = 1;
        size_t deg = 0;
        auto upd = [&deg](const VElem& e) {
            deg = std::max({deg, e.c0.size(), e.c1.size()});
        };
        upd(lhs);
        for (const auto& b : basis) upd(b);
        QMat mat;
        QVec rhs;
        for (size_t part = 0; part < 2; ++part) {
            for (size_t k = 0; k < deg; ++k) {
                QVec row(6, Rat(0));
                for (size_t b = 0; b < 6; ++b) {
                    const UPoly& pc = part == 0 ? basis[b].c0 : basis[b].c1;
                    if (k < pc.size()) row[b] = pc[k];
                }
                const UPoly& lc = part == 0 ? lhs.c0 : lhs.c1;
                mat.push_back(row);
                rhs.push_back(k < lc.size() ? lc[k] : Rat(0));
            }
        }
        auto sol = solve_linear(mat, rhs);
        require(sol.has_value(), ErrorKind::Internal, "Weierstrass relation not found");
        m.lambda_ = (*sol)[0];
        require(m.lambda_ != 0, ErrorKind::Internal, "degenerate Weierstrass relation");
        Rat a1p = (*sol)[1], a2p = (*sol)[2], a3p = (*sol)[3], a4p = (*sol)[4], a6p = (*sol)[5];
        m.e_ = WeierstrassCurve{-a1p, a2p, -m.lambda_ * a3p, m.lambda_ * a4p,
                                m.lambda_ * m.lambda_ * a6p};
    }
    require(m.e_.discriminant() != 0, ErrorKind::Internal, "singular Weierstrass model");

    // Helper pool for exceptional points: sign-automorphism images of the
    // seed (all on the fibre) and chord-generated combinations.
    for (const SignAut& sig : SignAut::all()) {
        CurveMap::K3 k = m.project(apply_sign_aut(sig, p));
        if (std::find(m.pool_.begin(), m.pool_.end(), k) == m.pool_.end()) m.pool_.push_back(k);
    }
    size_t fixed = m.pool_.size();
    for (size_t a = 0; a < fixed && m.pool_.size() < 24; ++a) {
        for (size_t b = a; b < fixed && m.pool_.size() < 24; ++b) {
            CurveMap::K3 t = m.third(m.pool_[a], m.pool_[b]);
            if (std::find(m.pool_.begin(), m.pool_.end(), t) == m.pool_.end()) m.pool_.push_back(t);
        }
    }
    return {m.e_, std::move(m)};
}

EllPoint transport_point(const CurveMap& m, const ProjPoint& p) { return m.to_curve(p); }
ProjPoint transport_point(const CurveMap& m, const EllPoint& q) { return m.to_fibre(q); }

} // namespace quartic
