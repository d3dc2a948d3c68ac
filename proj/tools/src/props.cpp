#include "props.hpp"

#include <algorithm>
#include <sstream>

namespace quartic::props {

namespace {

std::string pt(const ProjPoint& p) { return p.str(); }

ProjPoint permute_point(const ProjPoint& p, const std::array<int, 4>& perm) {
    Vec4I v;
    for (size_t i = 0; i < 4; ++i) v[i] = p.coords()[static_cast<size_t>(perm[i])];
    return ProjPoint(v);
}

bool is_double_flip_of(const ProjPoint& a, const ProjPoint& b) {
    for (const SignAut& sig : SignAut::double_flips())
        if (a == apply_sign_aut(sig, b)) return true;
    return false;
}

struct Runner {
    const Surface& s;
    const ProjPoint& seed;
    RulingPair r;
    std::vector<ProjPoint> samples;        // orbit points, sorted by height
    std::vector<ProjPoint> small_samples;  // all coordinates nonzero, moderate height
    std::vector<CheckResult> out;

    Runner(const Surface& s_, const ProjPoint& seed_)
        : s(s_), seed(seed_), r(RulingPair::build(s_, tau_square(seed_))) {
        Strategy st;
        st.max_nodes = 40;
        st.max_height_digits = 1500;
        auto orb = generate_orbit(s, r, seed, st);
        for (const auto& n : orb.nodes) {
            samples.push_back(n.point);
            if (n.point.zero_count() == 0 && n.height_digits <= 20 && small_samples.size() < 4)
                small_samples.push_back(n.point);
        }
    }

    void run(const std::string& name, void (Runner::*check)()) {
        CheckResult res{name, "pass", ""};
        out.push_back(res);
        try {
            (this->*check)();
        } catch (const Error& e) {
            out.back().status = "fail";
            if (out.back().detail.empty()) out.back().detail = e.what();
        }
    }

    CheckResult& cur() { return out.back(); }

    void expect(bool cond, const std::string& detail) {
        if (!cond) {
            cur().status = "fail";
            if (cur().detail.empty()) cur().detail = detail;
            throw Error(ErrorKind::Internal, detail);
        }
    }

    void note(const std::string& d) { cur().detail = d; }
    void skip(const std::string& d) {
        cur().status = "skip";
        cur().detail = d;
    }

    // e_i(P) = P exactly when a coordinate of P vanishes.
    void zerofix() {
        size_t with_zero = 0;
        for (const auto& p : samples) {
            bool zc = p.zero_count() == 1;
            with_zero += zc;
            for (int i = 1; i <= 2; ++i) {
                bool fixed = apply_endo(s, r, i, p) == p;
                expect(fixed == zc, "fixed-point criterion failed at " + pt(p));
            }
        }
        note(std::to_string(samples.size()) + " samples, " + std::to_string(with_zero) +
             " with a zero coordinate");
    }

    // For P on a line in the fibre of f_i: e_j(P) is a double sign flip of
    // P, while e_i(P) lies on a line, outside Omega, on the same fibre.
    void onlines() {
        size_t line_pts = 0;
        for (const auto& p : samples) {
            if (p.zero_count() != 0 || classify_point(s, p).kind != PointClass::OnLine) continue;
            ++line_pts;
            for (int k = 1; k <= 2; ++k) {
                ProjPoint ek = apply_endo(s, r, k, p);
                if (r.is_singular_fibre(k, p)) {
                    expect(ek.zero_count() == 0, "e_i(P) hit a coordinate plane at " + pt(p));
                    expect(classify_point(s, ek).kind == PointClass::OnLine,
                           "e_i(P) left the lines at " + pt(p));
                    expect(r.fibre_value(k, ek) == r.fibre_value(k, p),
                           "e_i(P) left the fibre at " + pt(p));
                } else {
                    expect(is_double_flip_of(ek, p), "e_j(P) not a double flip at " + pt(p));
                }
            }
        }
        if (line_pts == 0)
            skip("no line points among the samples");
        else
            note(std::to_string(line_pts) + " line points");
    }

    // The sign automorphisms commute with both endomorphisms.
    void sigmacomm() {
        size_t checked = 0;
        for (const auto& p : small_samples) {
            for (const SignAut& sig : SignAut::all()) {
                ProjPoint sp = apply_sign_aut(sig, p);
                for (int i = 1; i <= 2; ++i) {
                    expect(apply_endo(s, r, i, sp) == apply_sign_aut(sig, apply_endo(s, r, i, p)),
                           "commutation failed at " + pt(p));
                    ++checked;
                }
            }
        }
        if (checked == 0) { skip("no usable samples"); return; }
        note(std::to_string(checked) + " commutation identities");
    }

    // An odd coordinate permutation carries {e_1, e_2} to {e_1, e_2} of the
    // permuted surface with the two fibrations exchanged.
    void permute() {
        const std::array<int, 4> tr = {1, 0, 2, 3};  // transposition of the first two coordinates
        Vec4Q co;
        for (size_t i = 0; i < 4; ++i) co[i] = s.coeff(tr[i]);
        Surface s2 = Surface::make(co);
        size_t checked = 0, crossed = 0;
        for (const auto& p : small_samples) {
            if (checked >= 2) break;
            ProjPoint tp = permute_point(p, tr);
            RulingPair r2 = RulingPair::build(s2, tau_square(tp));
            ProjPoint a1 = permute_point(apply_endo(s, r, 1, p), tr);
            ProjPoint a2 = permute_point(apply_endo(s, r, 2, p), tr);
            ProjPoint b1 = apply_endo(s2, r2, 1, tp);
            ProjPoint b2 = apply_endo(s2, r2, 2, tp);
            expect((a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1),
                   "image sets differ at " + pt(p));
            // The transported images attach to opposite fibrations.
            auto keeps = [&](const ProjPoint& q, int k) {
                return r2.fibre_value(k, q) == r2.fibre_value(k, tp);
            };
            if ((keeps(a1, 1) != keeps(a1, 2)) && (keeps(a2, 1) != keeps(a2, 2)) &&
                (keeps(a1, 1) != keeps(a2, 1)))
                ++crossed;
            ++checked;
        }
        if (checked == 0) { skip("no usable samples"); return; }
        note(std::to_string(checked) + " points, " + std::to_string(crossed) +
             " with the fibrations visibly exchanged");
    }

    // Both node tangents lie on the quadric A, the tau-preimage of the
    // tangent plane of Q: sum a_i p_i^2 x_i^2 vanishes on each of them.
    void essence_tangent_in_a() {
        size_t checked = 0;
        for (const auto& p : samples) {
            if (p.zero_count() != 0) continue;
            auto [d1, d2] = node_tangents(s, r, p);
            for (const Vec4I& d : {d1, d2}) {
                Int lin = 0, quad = 0;
                for (int i = 0; i < 4; ++i) {
                    const Int& a = s.int_coeffs()[static_cast<size_t>(i)];
                    lin += a * p[i] * p[i] * p[i] * d[static_cast<size_t>(i)];
                    quad += a * p[i] * p[i] * d[static_cast<size_t>(i)] * d[static_cast<size_t>(i)];
                }
                expect(lin == 0 && quad == 0, "node tangent left A at " + pt(p));
            }
            ++checked;
        }
        if (checked == 0) { skip("no usable samples"); return; }
        note(std::to_string(checked) + " points, both tangents each");
    }

    // The tangent-plane section meets each node tangent with multiplicity
    // exactly 3 at P (so the fourth intersection point is unique).
    void hyp() {
        size_t triple = 0, contained = 0;
        for (const auto& p : samples) {
            if (p.zero_count() != 0) continue;
            auto [d1, d2] = node_tangents(s, r, p);
            for (const Vec4I& d : {d1, d2}) {
                BinaryQuartic f{};
                // Restriction of the quartic to u*p + v*d, expanded exactly.
                for (int i = 0; i < 4; ++i) {
                    const Int& a = s.int_coeffs()[static_cast<size_t>(i)];
                    const Int &pi = p[i], &di = d[static_cast<size_t>(i)];
                    f.c[0] += a * pi * pi * pi * pi;
                    f.c[1] += 4 * a * pi * pi * pi * di;
                    f.c[2] += 6 * a * pi * pi * di * di;
                    f.c[3] += 4 * a * pi * di * di * di;
                    f.c[4] += a * di * di * di * di;
                }
                int mult = root_multiplicity(f, P1Point(1, 0));
                if (mult == 5)
                    ++contained;  // the tangent is a line of the surface
                else {
                    expect(mult == 3, "intersection multiplicity " + std::to_string(mult) +
                                          " at " + pt(p));
                    ++triple;
                }
            }
        }
        if (triple + contained == 0) { skip("no usable samples"); return; }
        note(std::to_string(triple) + " triple contacts, " + std::to_string(contained) +
             " tangents inside the surface");
    }

    // psi(e_i^2(P)) = -2 psi(e_i(P)) on the fibre with origin P.
    void esquared() {
        size_t checked = 0;
        for (const auto& p : small_samples) {
            for (int i = 1; i <= 2; ++i) {
                if (r.is_singular_fibre(i, p)) continue;
                auto [e, map] = fibre_to_weierstrass(s, r, i, p);
                ProjPoint e1 = apply_endo(s, r, i, p);
                ProjPoint e2 = apply_endo(s, r, i, e1);
                expect(map.to_curve(e2) == ell_mul(e, Int(-2), map.to_curve(e1)),
                       "doubling identity failed at " + pt(p));
                ++checked;
            }
        }
        if (checked == 0) { skip("no nonsingular fibres among the samples"); return; }
        note(std::to_string(checked) + " fibres");
    }

    // psi(e_i(P)) = 2 psi(sigma_u(P)) for every single sign flip.
    void phipistwo() {
        size_t checked = 0;
        for (const auto& p : small_samples) {
            for (int i = 1; i <= 2; ++i) {
                if (r.is_singular_fibre(i, p)) continue;
                auto [e, map] = fibre_to_weierstrass(s, r, i, p);
                EllPoint img = map.to_curve(apply_endo(s, r, i, p));
                for (const SignAut& sig : SignAut::single_flips()) {
                    EllPoint half = map.to_curve(apply_sign_aut(sig, p));
                    expect(img == ell_mul(e, Int(2), half), "halving identity failed at " + pt(p));
                }
                ++checked;
            }
        }
        if (checked == 0) { skip("no nonsingular fibres among the samples"); return; }
        note(std::to_string(checked) + " fibres, four flips each");
    }

    // The images of the three double flips are exactly the nontrivial
    // 2-torsion points of the fibre with origin P.
    void twotorsion() {
        size_t checked = 0;
        for (const auto& p : small_samples) {
            for (int i = 1; i <= 2; ++i) {
                if (r.is_singular_fibre(i, p)) continue;
                auto [e, map] = fibre_to_weierstrass(s, r, i, p);
                std::vector<EllPoint> tors;
                for (const SignAut& sig : SignAut::double_flips())
                    tors.push_back(map.to_curve(apply_sign_aut(sig, p)));
                for (const auto& t : tors) {
                    expect(!(t == EllPoint::O()), "double flip mapped to the origin at " + pt(p));
                    expect(ell_mul(e, Int(2), t) == EllPoint::O(),
                           "double flip image not 2-torsion at " + pt(p));
                }
                expect(!(tors[0] == tors[1]) && !(tors[0] == tors[2]) && !(tors[1] == tors[2]),
                       "double flip images collide at " + pt(p));
                ++checked;
            }
        }
        if (checked == 0) { skip("no nonsingular fibres among the samples"); return; }
        note(std::to_string(checked) + " full 2-torsion subgroups");
    }

    // On the (1,1,-1,-1) surface, the coordinate shuffles of P with three
    // + signs and one - sign are 4-torsion with origin P.
    void fourtorsion_rational() {
        if (s.int_coeffs() != Vec4I{1, 1, -1, -1}) {
            skip("only meaningful on the 1,1,-1,-1 surface");
            return;
        }
        size_t checked = 0;
        for (const auto& p : small_samples) {
            if (checked >= 8) break;
            for (const auto& perm : {std::array<int, 4>{2, 3, 0, 1}, std::array<int, 4>{3, 2, 1, 0}}) {
                ProjPoint base = permute_point(p, perm);
                for (int neg = 0; neg < 4; ++neg) {
                    Vec4I v = base.coords();
                    v[static_cast<size_t>(neg)] = -v[static_cast<size_t>(neg)];
                    ProjPoint t(v);
                    int match = 0, k = 0;
                    for (int i = 1; i <= 2; ++i)
                        if (r.fibre_value(i, t) == r.fibre_value(i, p)) {
                            ++match;
                            k = i;
                        }
                    if (match != 1 || r.is_singular_fibre(k, p)) continue;
                    auto [e, map] = fibre_to_weierstrass(s, r, k, p);
                    auto ord = bounded_torsion_order(e, map.to_curve(t));
                    expect(ord.has_value() && *ord == 4,
                           "shuffle not of order 4 at " + pt(p) + " -> " + pt(t));
                    ++checked;
                }
            }
        }
        if (checked == 0) { skip("no usable shuffle points"); return; }
        note(std::to_string(checked) + " order-4 points");
    }

    // On a nonsingular fibre, the class has order 2 exactly when P lies on
    // a line.
    void ordtwo() {
        size_t checked = 0;
        for (const auto& p : samples) {
            if (p.zero_count() != 0) continue;
            bool on_line = classify_point(s, p).kind == PointClass::OnLine;
            for (int i = 1; i <= 2; ++i) {
                if (r.is_singular_fibre(i, p)) continue;
                bool two = order_class(s, r, i, p).kind == OrderKind::Two;
                expect(two == on_line, "order-2 criterion failed at " + pt(p));
                ++checked;
            }
        }
        if (checked == 0) { skip("no usable samples"); return; }
        note(std::to_string(checked) + " fibre verdicts");
    }

    // Order dividing 3 is equivalent to e_i^2(P) = e_i(P); cross-checked
    // against the Weierstrass order of the image.
    void orderthree() {
        size_t checked = 0;
        for (const auto& p : small_samples) {
            for (int i = 1; i <= 2; ++i) {
                if (r.is_singular_fibre(i, p)) continue;
                ProjPoint e1 = apply_endo(s, r, i, p);
                bool idem = apply_endo(s, r, i, e1) == e1;
                auto [e, map] = fibre_to_weierstrass(s, r, i, p);
                auto ord = bounded_torsion_order(e, map.to_curve(e1));
                bool div3 = ord.has_value() && (*ord == 1 || *ord == 3);
                expect(idem == div3, "order-3 criterion failed at " + pt(p));
                ++checked;
            }
        }
        if (checked == 0) { skip("no nonsingular fibres among the samples"); return; }
        note(std::to_string(checked) + " fibre verdicts");
    }

    // The combinatorial classifier agrees with the Weierstrass torsion
    // order, and orders 5..12 never occur.
    void atmostfour_agreement() {
        size_t checked = 0;
        for (const auto& p : small_samples) {
            for (int i = 1; i <= 2; ++i) {
                if (r.is_singular_fibre(i, p)) continue;
                OrderKind kind = order_class(s, r, i, p).kind;
                auto [e, map] = fibre_to_weierstrass(s, r, i, p);
                auto ord = bounded_torsion_order(e, map.to_curve(apply_endo(s, r, i, p)));
                if (ord) {
                    expect(*ord <= 4, "torsion order " + std::to_string(*ord) + " at " + pt(p));
                    int want = kind == OrderKind::One     ? 1
                               : kind == OrderKind::Two   ? 2
                               : kind == OrderKind::Three ? 3
                               : kind == OrderKind::Four  ? 4
                                                          : 0;
                    expect(*ord == want, "classifier disagreement at " + pt(p));
                } else {
                    expect(kind == OrderKind::Infinite, "classifier disagreement at " + pt(p));
                }
                ++checked;
            }
        }
        if (checked == 0) { skip("no nonsingular fibres among the samples"); return; }
        note(std::to_string(checked) + " fibre verdicts");
    }
};

} // namespace

std::vector<CheckResult> run_suite(const Surface& s, const ProjPoint& seed) {
    Runner runner(s, seed);
    runner.run("zerofix", &Runner::zerofix);
    runner.run("onlines", &Runner::onlines);
    runner.run("sigmacomm", &Runner::sigmacomm);
    runner.run("permute", &Runner::permute);
    runner.run("essence-tangent-in-A", &Runner::essence_tangent_in_a);
    runner.run("hyp", &Runner::hyp);
    runner.run("esquared", &Runner::esquared);
    runner.run("phipistwo", &Runner::phipistwo);
    runner.run("twotorsion", &Runner::twotorsion);
    runner.run("fourtorsion-rational", &Runner::fourtorsion_rational);
    runner.run("ordtwo", &Runner::ordtwo);
    runner.run("orderthree", &Runner::orderthree);
    runner.run("atmostfour-agreement", &Runner::atmostfour_agreement);
    return std::move(runner.out);
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& c) { return c.status != "fail"; });
}

} // namespace quartic::props
