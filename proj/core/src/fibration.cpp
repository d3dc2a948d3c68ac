#include "quartic/fibration.hpp"

#include "quartic/linalg.hpp"

namespace quartic {

namespace {

Int dot(const Vec4I& a, const Vec4I& b) {
    Int acc = 0;
    for (size_t i = 0; i < 4; ++i) acc += a[i] * b[i];
    return acc;
}

/// Polar form of the diagonal quadric: B(x, y) = sum a_i x_i y_i.
Int polar(const Surface& s, const Vec4I& x, const Vec4I& y) {
    Int acc = 0;
    for (size_t i = 0; i < 4; ++i) acc += s.int_coeffs()[i] * x[i] * y[i];
    return acc;
}

Int det4(const std::array<Vec4I, 4>& rows) {
    // Expansion by 2x2 complementary minors (Laplace along first two rows).
    auto m2 = [&](int r0, int r1, int c0, int c1) -> Int {
        return rows[static_cast<size_t>(r0)][static_cast<size_t>(c0)] * rows[static_cast<size_t>(r1)][static_cast<size_t>(c1)] -
               rows[static_cast<size_t>(r0)][static_cast<size_t>(c1)] * rows[static_cast<size_t>(r1)][static_cast<size_t>(c0)];
    };
    return m2(0, 1, 0, 1) * m2(2, 3, 2, 3) - m2(0, 1, 0, 2) * m2(2, 3, 1, 3) +
           m2(0, 1, 0, 3) * m2(2, 3, 1, 2) + m2(0, 1, 1, 2) * m2(2, 3, 0, 3) -
           m2(0, 1, 1, 3) * m2(2, 3, 0, 2) + m2(0, 1, 2, 3) * m2(2, 3, 0, 1);
}

/// Linear forms cutting a ruling line, as the pair of maps representing the
/// opposite ruling.
struct LineForms {
    Vec4I line_dir;  // the line is span{r0, line_dir}
    Vec4I a, b;      // ideal of the line in degree 1
    Vec4I c, d;      // q = a*d + b*c, second representation (-c : d)
};

LineForms build_line_forms(const Surface& s, const Vec4I& r0, const Vec4I& dir) {
    LineForms lf;
    lf.line_dir = dir;
    require(polar(s, dir, dir) == 0 && polar(s, r0, dir) == 0, ErrorKind::Internal,
            "ruling line not contained in quadric");

    // Degree-1 part of the line ideal: kernel of the 2x4 span matrix.
    QMat span(2, QVec(4));
    for (size_t i = 0; i < 4; ++i) {
        span[0][i] = Rat(r0[i]);
        span[1][i] = Rat(dir[i]);
    }
    auto ker = kernel_basis(span);
    require(ker.size() == 2, ErrorKind::Internal, "line ideal rank");
    lf.a = integral_vec4(ker[0]);
    lf.b = integral_vec4(ker[1]);

    // Solve q = a*d + b*c as an identity of quadratic forms: 10 symmetric
    // coefficients, 8 unknowns (d0..d3, c0..c3). Solvable because the line
    // lies on the quadric and its ideal is saturated.
    QMat m;
    QVec rhs;
    for (size_t i = 0; i < 4; ++i) {
        QVec row(8, Rat(0));
        row[i] = Rat(lf.a[i]);
        row[4 + i] = Rat(lf.b[i]);
        m.push_back(row);
        rhs.push_back(Rat(s.int_coeffs()[i]));
    }
    for (size_t i = 0; i < 4; ++i) {
        for (size_t j = i + 1; j < 4; ++j) {
            QVec row(8, Rat(0));
            row[j] = Rat(lf.a[i]);
            row[i] += Rat(lf.a[j]);
            row[4 + j] = Rat(lf.b[i]);
            row[4 + i] += Rat(lf.b[j]);
            m.push_back(row);
            rhs.push_back(Rat(0));
        }
    }
    auto sol = solve_linear(m, rhs);
    require(sol.has_value(), ErrorKind::Internal, "line complement system inconsistent");

    // Clear denominators jointly (c and d may only be rescaled together).
    Int lcm = 1;
    for (const auto& x : *sol) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    std::array<Int, 8> w;
    Int content = 0;
    for (size_t i = 0; i < 8; ++i) {
        Rat v = (*sol)[i] * Rat(lcm);
        w[i] = v.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), w[i].get_mpz_t());
    }
    require(content != 0, ErrorKind::Internal, "zero complement forms");
    int sign = 0;
    for (const auto& x : w)
        if (x != 0) { sign = sgn(x); break; }
    if (sign < 0) content = -content;
    for (auto& x : w) x /= content;
    for (size_t i = 0; i < 4; ++i) {
        lf.d[i] = w[i];
        lf.c[i] = w[4 + i];
    }

    // Smooth quadric => the base lines {a=b=0} and {c=d=0} are disjoint.
    require(det4({lf.a, lf.b, lf.c, lf.d}) != 0, ErrorKind::Internal,
            "representation base lines not disjoint");
    return lf;
}

BinaryQuadratic pencil_minor(const RulingRep& r1, const RulingRep& r2, size_t m, size_t n) {
    // Minor p_m q_n - p_n q_m of the pencil p = t*num1 - s*den1,
    // q = t*num2 - s*den2, as a binary quadratic in (s, t).
    BinaryQuadratic f;
    f.c[0] = r1.den[m] * r2.den[n] - r1.den[n] * r2.den[m];
    f.c[1] = -(r1.num[m] * r2.den[n] + r1.den[n] * r2.num[m] - r1.num[n] * r2.den[m] - r1.den[m] * r2.num[n]);
    f.c[2] = r1.num[m] * r2.num[n] - r1.num[n] * r2.num[m];
    f.normalize();
    return f;
}

} // namespace

ProjPoint tau_square(const ProjPoint& p) {
    Vec4I v;
    for (size_t i = 0; i < 4; ++i) v[i] = p.coords()[i] * p.coords()[i];
    return ProjPoint(v);
}

RulingPair RulingPair::build(const Surface& s, const ProjPoint& r0) {
    if (s.quadric_at(r0.coords()) != 0)
        throw Error(ErrorKind::NotOnSurface, "NotOnQuadric: ruling seed not on the quadric");

    // Tangent plane of Q at r0 and two plane directions completing r0 to a
    // basis of the plane. The plane cuts Q in two distinct rational lines.
    Vec4I t;
    for (size_t i = 0; i < 4; ++i) t[i] = s.int_coeffs()[i] * r0.coords()[i];
    size_t m = 0;
    for (size_t i = 1; i < 4; ++i)
        if (abs(t[i]) > abs(t[m])) m = i;
    std::array<Vec4I, 3> cand{};
    size_t nc = 0;
    for (size_t j = 0; j < 4; ++j) {
        if (j == m) continue;
        Vec4I e{};
        e[j] = t[m];
        e[m] = -t[j];
        cand[nc++] = e;
    }
    Vec4I e1{}, e2{};
    bool found = false;
    for (size_t i = 0; i < 3 && !found; ++i) {
        for (size_t j = i + 1; j < 3 && !found; ++j) {
            QMat rows(3, QVec(4));
            for (size_t k = 0; k < 4; ++k) {
                rows[0][k] = Rat(r0.coords()[k]);
                rows[1][k] = Rat(cand[i][k]);
                rows[2][k] = Rat(cand[j][k]);
            }
            if (matrix_rank(rows) == 3) {
                e1 = cand[i];
                e2 = cand[j];
                found = true;
            }
        }
    }
    require(found, ErrorKind::Internal, "DegenerateTangent: no plane basis through seed");

    // Restriction of q to u*r0 + v*e1 + w*e2: the u-terms vanish (q(r0) = 0,
    // e's orthogonal to the gradient), leaving a binary quadratic in (v, w).
    BinaryQuadratic rq;
    rq.c[0] = polar(s, e1, e1);
    rq.c[1] = 2 * polar(s, e1, e2);
    rq.c[2] = polar(s, e2, e2);
    require(!rq.is_zero(), ErrorKind::Internal, "DegenerateTangent: plane contained in quadric");
    auto [l1, l2] = split_square_disc_quadratic(rq);

    auto line_dir = [&](const BinaryLinear& l) {
        // Factor c0*v + c1*w vanishes in direction (v, w) = (c1, -c0).
        Vec4I d;
        for (size_t k = 0; k < 4; ++k) d[k] = l.c[1] * e1[k] - l.c[0] * e2[k];
        return d;
    };
    LineForms f1 = build_line_forms(s, r0.coords(), line_dir(l1));
    LineForms f2 = build_line_forms(s, r0.coords(), line_dir(l2));

    // The representation built from a line parametrizes the opposite ruling;
    // ruling 1 is the family containing the line of the first (lex-smaller)
    // factor, so its representations come from the second line, and vice versa.
    RulingPair rp;
    rp.s_ = s;
    auto to_reps = [](const LineForms& f) {
        Vec4I neg_c;
        for (size_t i = 0; i < 4; ++i) neg_c[i] = -f.c[i];
        return std::vector<RulingRep>{{f.a, f.b}, {neg_c, f.d}};
    };
    rp.reps_[0] = to_reps(f2);
    rp.reps_[1] = to_reps(f1);
    for (size_t r = 0; r < 2; ++r) {
        size_t k = 0;
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j)
                rp.minors_[r][k++] = pencil_minor(rp.reps_[r][0], rp.reps_[r][1], i, j);
    }
    return rp;
}

FibreId RulingPair::fibre_value(int ruling, const ProjPoint& p) const {
    if (!s_.contains(p))
        throw Error(ErrorKind::NotOnSurface, "fibre_value: point not on surface");
    ProjPoint r = tau_square(p);
    for (const auto& rep : reps(ruling)) {
        Int nu = dot(rep.num, r.coords());
        Int de = dot(rep.den, r.coords());
        if (nu != 0 || de != 0) return FibreId(nu, de);
    }
    throw Error(ErrorKind::Internal, "AllRepresentationsVanish");
}

bool RulingPair::is_singular_fibre(int ruling, const FibreId& fid) const {
    for (const auto& mn : minors_[static_cast<size_t>(ruling - 1)])
        if (mn.eval(fid.u, fid.v) == 0) return true;
    return false;
}

bool RulingPair::is_singular_fibre(int ruling, const ProjPoint& p) const {
    return is_singular_fibre(ruling, fibre_value(ruling, p));
}

std::pair<Vec4I, Vec4I> RulingPair::fibre_quadrics(int ruling, const FibreId& fid) const {
    const auto& rs = reps(ruling);
    auto cut = [&](const RulingRep& rep) {
        Vec4I v;
        for (size_t i = 0; i < 4; ++i) v[i] = fid.v * rep.num[i] - fid.u * rep.den[i];
        Int content = 0;
        for (const auto& x : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
        require(content != 0, ErrorKind::Internal, "vanishing fibre quadric");
        int sign = 0;
        for (const auto& x : v)
            if (x != 0) { sign = sgn(x); break; }
        if (sign < 0) content = -content;
        for (auto& x : v) x /= content;
        return v;
    };
    Vec4I q1 = cut(rs[0]), q2 = cut(rs[1]);
    require(q1 != q2, ErrorKind::Internal, "fibre pencil degenerates to one quadric");
    return {q1, q2};
}

} // namespace quartic
