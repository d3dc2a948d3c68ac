#include <doctest.h>

#include <set>

#include "quartic/orbit.hpp"

using namespace quartic;

namespace {

const Surface& v0prime() {
    static Surface s = parse_surface("1,1,-1,-1");
    return s;
}

const ProjPoint& euler() {
    static ProjPoint p = parse_point("133:134:158:59");
    return p;
}

const RulingPair& rulings() {
    static RulingPair r = RulingPair::build(v0prime(), tau_square(euler()));
    return r;
}

} // namespace

TEST_CASE("sign closure of a double-line point is its eight-element orbit") {
    RulingPair r = RulingPair::build(v0prime(), tau_square(parse_point("1:1:1:1")));
    Strategy strat;
    strat.max_nodes = 8;
    OrbitResult res = generate_orbit(v0prime(), r, parse_point("1:1:1:1"), strat);
    CHECK(res.nodes.size() == 8);
    std::set<ProjPoint> pts;
    for (const auto& n : res.nodes) {
        pts.insert(n.point);
        CHECK(tau_square(n.point) == parse_point("1:1:1:1"));
    }
    CHECK(pts.size() == 8);
    // All eight sit on the same pair of fibres.
    CHECK(fibre_spread(res.nodes, 1) == 1);
    CHECK(fibre_spread(res.nodes, 2) == 1);
}

TEST_CASE("orbit rejects empty budgets and Omega seeds") {
    Strategy strat;
    strat.max_nodes = 0;
    CHECK_THROWS_AS(generate_orbit(v0prime(), rulings(), euler(), strat), Error);
    Strategy one;
    one.max_nodes = 1;
    try {
        generate_orbit(v0prime(), rulings(), parse_point("1:0:1:0"), one);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OmegaPoint);
    }
}

TEST_CASE("orbit invariants on the growing seed") {
    Strategy strat;
    strat.max_nodes = 60;
    strat.max_height_digits = 2000;
    OrbitResult res = generate_orbit(v0prime(), rulings(), euler(), strat);
    REQUIRE(res.nodes.size() == 60);

    std::set<ProjPoint> seen;
    bool has_seed = false;
    for (size_t i = 0; i < res.nodes.size(); ++i) {
        const OrbitNode& n = res.nodes[i];
        CHECK(v0prime().contains(n.point));
        CHECK(seen.insert(n.point).second);  // dedup
        CHECK(n.height == height(n.point));
        CHECK(n.height_digits == height_digits(n.point));
        if (n.op == "seed") {
            has_seed = true;
            CHECK(n.parent == -1);
            CHECK(n.point == euler());
        } else {
            REQUIRE(n.parent >= 0);
            REQUIRE(static_cast<size_t>(n.parent) < res.nodes.size());
            CHECK(res.nodes[static_cast<size_t>(n.parent)].point != n.point);
        }
        if (i > 0) {
            const OrbitNode& prev = res.nodes[i - 1];
            bool ordered = prev.height < n.height ||
                           (prev.height == n.height && prev.point < n.point);
            CHECK(ordered);  // sorted by (height, point)
        }
    }
    CHECK(has_seed);
    CHECK(fibre_spread(res.nodes, 1) >= 3);
    CHECK(fibre_spread(res.nodes, 2) >= 3);

    // Determinism: a rerun reproduces the node list exactly.
    OrbitResult res2 = generate_orbit(v0prime(), rulings(), euler(), strat);
    REQUIRE(res2.nodes.size() == res.nodes.size());
    for (size_t i = 0; i < res.nodes.size(); ++i) {
        CHECK(res2.nodes[i].point == res.nodes[i].point);
        CHECK(res2.nodes[i].op == res.nodes[i].op);
        CHECK(res2.nodes[i].parent == res.nodes[i].parent);
    }

    // A thread cap must not change the emitted order.
    Strategy capped = strat;
    capped.threads = 8;
    OrbitResult res3 = generate_orbit(v0prime(), rulings(), euler(), capped);
    REQUIRE(res3.nodes.size() == res.nodes.size());
    for (size_t i = 0; i < res.nodes.size(); ++i)
        CHECK(res3.nodes[i].point == res.nodes[i].point);
}

TEST_CASE("tight digit budgets prune instead of overflowing") {
    Strategy strat;
    strat.max_nodes = 40;
    strat.max_height_digits = 4;
    OrbitResult res = generate_orbit(v0prime(), rulings(), euler(), strat);
    CHECK(!res.nodes.empty());
    for (const auto& n : res.nodes) CHECK(n.height_digits <= 4);
    CHECK(res.pruned > 0);
}

TEST_CASE("density histogram counts nodes in the chart") {
    Strategy strat;
    strat.max_nodes = 60;
    OrbitResult res = generate_orbit(v0prime(), rulings(), euler(), strat);
    std::array<Rat, 4> chart = {Rat(-2), make_rat(1, 2), make_rat(-1, 2), Rat(2)};
    Histogram h = density_histogram(v0prime(), res.nodes, chart, 10);
    CHECK(h.bins == 10);
    CHECK(h.counts.size() == 100);
    size_t total = 0, occupied = 0;
    for (size_t c : h.counts) {
        total += c;
        occupied += c > 0;
    }
    CHECK(occupied == h.occupied);
    CHECK(total + h.outside == res.nodes.size());
    CHECK(h.occupied >= 5);

    // Every sign on the surface coefficients must appear twice for the
    // real chart to contain surface points.
    CHECK_THROWS_AS(
        density_histogram(parse_surface("-2,1,1,-2"), res.nodes, chart, 0), Error);
    Surface one_neg = parse_surface("1,1,1,1");
    (void)one_neg;  // all-positive abcd is a valid square but has no real points
    try {
        density_histogram(one_neg, res.nodes, chart, 10);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadInput);
    }
}
