// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "props.hpp"
#include "quartic/orbit.hpp"
#include "quartic/torsion.hpp"

using namespace quartic;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double secs(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

struct Criterion {
    std::string name;
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond && pass) {
            pass = false;
            detail = why;
        }
    }
};

struct SampleRow {
    std::string label;
    const Surface* s;
    const RulingPair* r;
    int index;
    ProjPoint point;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    Clock::time_point suite_start = Clock::now();
    std::vector<Criterion> crit(8);
    crit[0].name = "exactness";
    crit[1].name = "worked-examples";
    crit[2].name = "construction-vs-forms";
    crit[3].name = "property-suite";
    crit[4].name = "elliptic-identities";
    crit[5].name = "torsion-classifier";
    crit[6].name = "orbit-generation";
    crit[7].name = "cli-determinism";

    try {
        // Shared fixtures -------------------------------------------------
        Surface v0 = parse_surface("1,1,-1,-1");
        ProjPoint euler = parse_point("133:134:158:59");
        RulingPair r1 = RulingPair::build(v0, tau_square(euler));
        SumZeroTransport tr = transport_sum_zero(v0, euler);
        const Surface& ts = tr.target;
        ProjPoint tseed = tr.forward(euler);  // (1:1:1:1) on the transported surface
        RulingPair r2 = RulingPair::build(ts, tau_square(tseed));
        Surface sm = parse_surface("-2,1,1,-2");
        ProjPoint smp = parse_point("0:1:1:1");
        RulingPair r3 = RulingPair::build(sm, tau_square(smp));

        size_t residuals_checked = 0;
        auto check_residual = [&](Criterion& c, const Surface& s, const ProjPoint& p) {
            c.require(s.contains(p), "nonzero residual at " + p.str());
            ++residuals_checked;
        };

        // Criterion 7: orbit generation under the published budget --------
        Clock::time_point t7 = Clock::now();
        Strategy strat;
        strat.max_nodes = 200;
        strat.max_height_digits = 2000;
        OrbitResult orbit = generate_orbit(v0, r1, euler, strat);
        double orbit_secs = secs(t7, Clock::now());
        {
            Criterion& c = crit[6];
            std::set<ProjPoint> distinct;
            for (const auto& n : orbit.nodes) {
                distinct.insert(n.point);
                check_residual(crit[0], v0, n.point);
            }
            c.require(distinct.size() == orbit.nodes.size(), "duplicate nodes emitted");
            c.require(distinct.size() >= 25,
                      "only " + std::to_string(distinct.size()) + " distinct points");
            size_t sp1 = fibre_spread(orbit.nodes, 1), sp2 = fibre_spread(orbit.nodes, 2);
            c.require(sp1 >= 5 && sp2 >= 5,
                      "fibre spread " + std::to_string(sp1) + "/" + std::to_string(sp2));
            std::array<Rat, 4> chart = {Rat(-2), make_rat(1, 2), make_rat(-1, 2), Rat(2)};
            Histogram h = density_histogram(v0, orbit.nodes, chart, 10);
            c.require(h.occupied >= 10, "only " + std::to_string(h.occupied) + " occupied bins");
            c.require(orbit_secs < 60.0, "orbit took " + std::to_string(orbit_secs) + "s");
            std::ostringstream d;
            d << distinct.size() << " points, spreads " << sp1 << "/" << sp2 << ", "
              << h.occupied << " occupied bins, " << orbit_secs << "s";
            if (c.pass) c.detail = d.str();
        }

        // Criterion 2: the worked examples, exactly -----------------------
        {
            Criterion& c = crit[1];
            ProjPoint dbl = parse_point("1:1:1:1");
            std::set<ProjPoint> got = {apply_endo(v0, r1, 1, dbl), apply_endo(v0, r1, 2, dbl)};
            std::set<ProjPoint> want = {parse_point("1:-1:-1:1"),
                                        normalize_point(Vec4I{-1, 1, -1, 1})};
            c.require(got == want, "image pair at 1:1:1:1 is wrong");
            c.require(apply_endo(sm, r3, 1, smp) == smp && apply_endo(sm, r3, 2, smp) == smp,
                      "0:1:1:1 not fixed on -2,1,1,-2");
            if (c.pass) c.detail = "both images at 1:1:1:1 exact; 0:1:1:1 fixed by both maps";
        }

        // Criterion 3: geometric construction vs closed forms -------------
        {
            Criterion& c = crit[2];
            auto agree = [&](const Surface& s, const RulingPair& r, const ProjPoint& p) {
                auto [g1, g2] = richmond_pair(s, r, p);
                std::set<ProjPoint> forms = {eval_printed_forms(s, 1, p),
                                             eval_printed_forms(s, -1, p)};
                check_residual(crit[0], s, g1);
                check_residual(crit[0], s, g2);
                return std::set<ProjPoint>{g1, g2} == forms;
            };
            size_t points = 0, surfaces = 0;
            // Surface 1: every node of the criterion-7 orbit, plus sign images.
            std::vector<ProjPoint> v0pts;
            for (const auto& n : orbit.nodes) v0pts.push_back(n.point);
            for (const SignAut& sig : SignAut::all()) v0pts.push_back(apply_sign_aut(sig, euler));
            for (const auto& p : v0pts) {
                c.require(agree(v0, r1, p), "mismatch on 1,1,-1,-1 at " + p.str());
                ++points;
            }
            ++surfaces;
            // Surface 2: the transported surface.
            Strategy st2;
            st2.max_nodes = 20;
            st2.max_height_digits = 2000;
            for (const auto& n : generate_orbit(ts, r2, tseed, st2).nodes) {
                c.require(agree(ts, r2, n.point), "mismatch on transported surface at " +
                                                      n.point.str());
                ++points;
            }
            ++surfaces;
            // Surface 3: sign closure of a coordinate-plane point.
            for (const SignAut& sig : SignAut::all()) {
                ProjPoint p = apply_sign_aut(sig, smp);
                c.require(agree(sm, r3, p), "mismatch on -2,1,1,-2 at " + p.str());
                ++points;
            }
            ++surfaces;
            c.require(points >= 100, "only " + std::to_string(points) + " comparison points");
            // reconcile_forms must report full symbolic validation and
            // sample agreement on every surface.
            auto reconciled = [&](const Surface& s, const RulingPair& r, const ProjPoint& seed) {
                FormsReport rep = reconcile_forms(s, r, {seed});
                c.require(rep.surface_preserved && rep.sigma_equivariant && rep.printed_match,
                          "symbolic validation incomplete on " + s.str());
                c.require(rep.samples_agreeing == rep.samples_checked && !rep.counterexample,
                          "sample disagreement on " + s.str());
            };
            reconciled(v0, r1, euler);
            reconciled(ts, r2, tseed);
            reconciled(sm, r3, smp);
            if (c.pass)
                c.detail = std::to_string(points) + " points on " + std::to_string(surfaces) +
                           " surfaces, forms reconciled";
        }

        // Criterion 4: the proposition suite ------------------------------
        {
            Criterion& c = crit[3];
            size_t checks = 0, skips = 0;
            for (const auto& [s, seed] :
                 std::vector<std::pair<const Surface*, ProjPoint>>{
                     {&v0, euler}, {&v0, parse_point("1:2:1:2")}, {&ts, tseed}}) {
                for (const auto& res : props::run_suite(*s, seed)) {
                    ++checks;
                    skips += res.status == "skip";
                    c.require(res.status != "fail",
                              res.name + " failed on " + s->str() + ": " + res.detail);
                }
            }
            // Direct spot checks: e_i preserves its fibration and U.
            for (int i = 1; i <= 2; ++i) {
                ProjPoint img = apply_endo(v0, r1, i, euler);
                c.require(r1.fibre_value(i, img) == r1.fibre_value(i, euler),
                          "fibre not preserved");
                c.require(img.zero_count() == 0, "generic point left U");
                ++checks;
            }
            if (c.pass)
                c.detail = std::to_string(checks) + " checks on 3 seeds, 0 failures, " +
                           std::to_string(skips) + " vacuous skips";
        }

        // Criteria 5 and 6: fibre identities and the torsion classifier ---
        std::vector<SampleRow> rows;
        {
            std::set<std::string> combos;
            std::vector<std::string> base = {
                "133:134:158:59", "133:134:59:158", "158:59:133:134", "59:158:134:133",
                "7:239:157:227",  "7:239:227:157",  "157:227:7:239",  "227:157:239:7"};
            for (const auto& str : base) {
                ProjPoint p = parse_point(str);
                check_residual(crit[0], v0, p);
                ProjPoint q = tr.forward(p);
                check_residual(crit[0], ts, q);
                for (int i = 1; i <= 2; ++i) {
                    if (!r1.is_singular_fibre(i, p) &&
                        combos.insert("V#" + std::to_string(i) + "#" +
                                      r1.fibre_value(i, p).str()).second)
                        rows.push_back({"1,1,-1,-1", &v0, &r1, i, p});
                    if (!r2.is_singular_fibre(i, q) &&
                        combos.insert("T#" + std::to_string(i) + "#" +
                                      r2.fibre_value(i, q).str()).second)
                        rows.push_back({"transported", &ts, &r2, i, q});
                }
            }
            crit[4].require(rows.size() >= 20,
                            "only " + std::to_string(rows.size()) + " distinct fibres");
        }
        {
            Criterion& c = crit[4];
            for (const auto& row : rows) {
                const Surface& s = *row.s;
                const RulingPair& r = *row.r;
                int i = row.index;
                const ProjPoint& p = row.point;
                auto [e, map] = fibre_to_weierstrass(s, r, i, p);
                ProjPoint e1 = apply_endo(s, r, i, p);
                ProjPoint e2 = apply_endo(s, r, i, e1);
                c.require(map.to_curve(e2) == ell_mul(e, Int(-2), map.to_curve(e1)),
                          "doubling identity failed at " + p.str());
                std::vector<EllPoint> tors;
                for (const SignAut& sig : SignAut::double_flips())
                    tors.push_back(map.to_curve(apply_sign_aut(sig, p)));
                for (const auto& t : tors)
                    c.require(!(t == EllPoint::O()) && ell_mul(e, Int(2), t) == EllPoint::O(),
                              "double flip image not nontrivial 2-torsion at " + p.str());
                c.require(!(tors[0] == tors[1]) && !(tors[0] == tors[2]) &&
                              !(tors[1] == tors[2]),
                          "2-torsion images collide at " + p.str());
                EllPoint img = map.to_curve(e1);
                for (const SignAut& sig : SignAut::single_flips())
                    c.require(img == ell_mul(e, Int(2), map.to_curve(apply_sign_aut(sig, p))),
                              "halving identity failed at " + p.str());
            }
            // Rational 4-torsion from the sign-pattern shuffles at the seed.
            size_t four = 0;
            for (const auto& perm :
                 {std::array<int, 4>{2, 3, 0, 1}, std::array<int, 4>{3, 2, 1, 0}}) {
                Vec4I bv;
                for (size_t j = 0; j < 4; ++j)
                    bv[j] = euler.coords()[static_cast<size_t>(perm[j])];
                for (int neg = 0; neg < 4; ++neg) {
                    Vec4I v = bv;
                    v[static_cast<size_t>(neg)] = -v[static_cast<size_t>(neg)];
                    ProjPoint t(v);
                    check_residual(crit[0], v0, t);
                    int match = 0, k = 0;
                    for (int i = 1; i <= 2; ++i)
                        if (r1.fibre_value(i, t) == r1.fibre_value(i, euler)) {
                            ++match;
                            k = i;
                        }
                    c.require(match == 1, "shuffle fibre matching failed at " + t.str());
                    if (match != 1) continue;
                    auto [e, map] = fibre_to_weierstrass(v0, r1, k, euler);
                    auto ord = bounded_torsion_order(e, map.to_curve(t));
                    c.require(ord.has_value() && *ord == 4, "shuffle not of order 4 at " + t.str());
                    ++four;
                }
            }
            if (c.pass)
                c.detail = std::to_string(rows.size()) + " fibres, all identities exact, " +
                           std::to_string(four) + " rational 4-torsion points";
        }
        {
            Criterion& c = crit[5];
            size_t agreements = 0;
            auto check_agreement = [&](const Surface& s, const RulingPair& r, int i,
                                       const ProjPoint& p) {
                OrderKind kind = order_class(s, r, i, p).kind;
                auto [e, map] = fibre_to_weierstrass(s, r, i, p);
                auto ord = bounded_torsion_order(e, map.to_curve(apply_endo(s, r, i, p)));
                if (ord) {
                    c.require(*ord <= 4, "torsion order " + std::to_string(*ord) + " observed");
                    int want = kind == OrderKind::One     ? 1
                               : kind == OrderKind::Two   ? 2
                               : kind == OrderKind::Three ? 3
                               : kind == OrderKind::Four  ? 4
                                                          : 0;
                    c.require(*ord == want, "classifier disagreement at " + p.str());
                } else {
                    c.require(kind == OrderKind::Infinite, "classifier disagreement at " + p.str());
                }
                ++agreements;
            };
            for (const auto& row : rows) check_agreement(*row.s, *row.r, row.index, row.point);
            // A bona fide torsion case: a line point on its nonsingular fibre.
            ProjPoint lp = parse_point("1:2:1:2");
            int good = r1.is_singular_fibre(1, lp) ? 2 : 1;
            c.require(order_class(v0, r1, good, lp).kind == OrderKind::Two,
                      "line point not classified as order two");
            check_agreement(v0, r1, good, lp);
            if (c.pass)
                c.detail = std::to_string(agreements) +
                           " classifier/Weierstrass agreements, no order in 5..12";
        }

        // Criterion 8: CLI byte-determinism -------------------------------
        {
            Criterion& c = crit[7];
            fs::path dir = fs::temp_directory_path() / "quartic-acceptance";
            fs::create_directories(dir);
            auto run = [&](const std::string& env, const fs::path& out) {
                std::string cmd =
                    env + " '" + QUARTIC_CLI_PATH +
                    "' orbit --surface 1,1,-1,-1 --point 133:134:158:59 --max-nodes 120 "
                    "--max-digits 2000 --format jsonl --bins 10 --chart -2,1/2,-1/2,2 > '" +
                    out.string() + "' 2>&1";
                return std::system(cmd.c_str());
            };
            fs::path f1 = dir / "run1.jsonl", f2 = dir / "run2.jsonl", f3 = dir / "run3.jsonl";
            int rc1 = run("QUARTIC_ORBIT_THREADS=8", f1);
            int rc2 = run("QUARTIC_ORBIT_THREADS=8", f2);
            int rc3 = run("QUARTIC_ORBIT_THREADS=1", f3);
            c.require(rc1 == 0 && rc2 == 0 && rc3 == 0, "CLI run failed");
            std::string b1 = read_file(f1), b2 = read_file(f2), b3 = read_file(f3);
            c.require(!b1.empty(), "CLI produced no output");
            c.require(b1 == b2, "outputs differ between identical runs");
            c.require(b1 == b3, "outputs differ across thread settings");
            if (c.pass)
                c.detail = std::to_string(b1.size()) +
                           " bytes identical across 3 runs (8, 8, and 1 threads)";
        }

        // Criterion 1: exactness and suite runtime ------------------------
        {
            Criterion& c = crit[0];
            double total = secs(suite_start, Clock::now());
            c.require(total < 300.0, "suite took " + std::to_string(total) + "s");
            if (c.pass)
                c.detail = std::to_string(residuals_checked) +
                           " zero residuals, all arithmetic exact, suite " +
                           std::to_string(total) + "s";
        }
    } catch (const std::exception& e) {
        // A thrown invariant aborts the run: fail every criterion that has
        // not already recorded a verdict.
        for (auto& c : crit)
            if (c.detail.empty()) {
                c.pass = false;
                c.detail = std::string("aborted: ") + e.what();
            }
        std::cerr << "exception: " << e.what() << "\n";
    }

    bool all = true;
    for (size_t i = 0; i < crit.size(); ++i) {
        all = all && crit[i].pass;
        std::cout << "criterion " << (i + 1) << " (" << crit[i].name << "): "
                  << (crit[i].pass ? "PASS" : "FAIL");
        if (!crit[i].detail.empty()) std::cout << " - " << crit[i].detail;
        std::cout << "\n";
    }
    return all ? 0 : 1;
}
