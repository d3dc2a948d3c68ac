#include "quartic/orbit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace quartic {

namespace {

std::string sigma_tag(const SignAut& sig) {
    static const char* names = "xyz";  // canonical masks never set the w bit
    std::string tag = "sigma_";
    for (int i = 0; i < 3; ++i)
        if (sig.negates(i)) tag += names[i];
    return tag;
}

} // namespace

OrbitResult generate_orbit(const Surface& s, const RulingPair& r, const ProjPoint& seed,
                           const Strategy& strat) {
    PointClass pc = classify_point(s, seed);
    if (pc.kind == PointClass::OmegaPoint)
        throw Error(ErrorKind::OmegaPoint, "SeedInOmega");
    require(strat.max_nodes > 0, ErrorKind::BadInput, "EmptyBudget: max_nodes is zero");
    require(strat.max_height_digits >= height_digits(seed), ErrorKind::BadInput,
            "EmptyBudget: digit budget below the seed height");

    OrbitResult res;
    std::set<ProjPoint> seen;
    std::vector<bool> expanded;

    auto accept = [&](ProjPoint pt, int64_t parent, std::string op) -> int64_t {
        if (res.nodes.size() >= strat.max_nodes) return -1;
        if (!seen.insert(pt).second) return -1;
        require(s.contains(pt), ErrorKind::Internal, "orbit point off the surface");
        OrbitNode node{pt, parent, std::move(op), height(pt), height_digits(pt),
                       r.fibre_value(1, pt), r.fibre_value(2, pt)};
        if (r.is_singular_fibre(1, node.f1) || r.is_singular_fibre(2, node.f2))
            ++res.singular_fibre_nodes;
        res.nodes.push_back(std::move(node));
        expanded.push_back(false);
        return static_cast<int64_t>(res.nodes.size()) - 1;
    };

    auto close_sigma = [&](int64_t id) {
        if (id < 0 || !strat.sigma_closure) return;
        ProjPoint base = res.nodes[static_cast<size_t>(id)].point;
        for (const SignAut& sig : SignAut::all()) {
            if (sig.mask() == 0) continue;
            accept(apply_sign_aut(sig, base), id, sigma_tag(sig));
        }
    };

    close_sigma(accept(seed, -1, "seed"));

    while (res.nodes.size() < strat.max_nodes) {
        // Lowest unexpanded height first, ties by point then by id.
        int64_t pick = -1;
        for (size_t i = 0; i < res.nodes.size(); ++i) {
            if (expanded[i]) continue;
            if (pick < 0 || res.nodes[i].height < res.nodes[static_cast<size_t>(pick)].height ||
                (res.nodes[i].height == res.nodes[static_cast<size_t>(pick)].height &&
                 res.nodes[i].point < res.nodes[static_cast<size_t>(pick)].point))
                pick = static_cast<int64_t>(i);
        }
        if (pick < 0) break;
        expanded[static_cast<size_t>(pick)] = true;
        ProjPoint base = res.nodes[static_cast<size_t>(pick)].point;
        for (int i = 1; i <= 2; ++i) {
            ProjPoint img = apply_endo(s, r, i, base);
            if (height_digits(img) > strat.max_height_digits) {
                ++res.pruned;
                continue;
            }
            close_sigma(accept(std::move(img), pick, i == 1 ? "e1" : "e2"));
        }
    }

    // Canonical output order with remapped parent links.
    std::vector<size_t> order(res.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (res.nodes[a].height != res.nodes[b].height) return res.nodes[a].height < res.nodes[b].height;
        return res.nodes[a].point < res.nodes[b].point;
    });
    std::vector<int64_t> where(order.size());
    for (size_t newid = 0; newid < order.size(); ++newid) where[order[newid]] = static_cast<int64_t>(newid);
    std::vector<OrbitNode> sorted;
    sorted.reserve(res.nodes.size());
    for (size_t newid = 0; newid < order.size(); ++newid) {
        OrbitNode n = std::move(res.nodes[order[newid]]);
        if (n.parent >= 0) n.parent = where[static_cast<size_t>(n.parent)];
        sorted.push_back(std::move(n));
    }
    res.nodes = std::move(sorted);
    return res;
}

size_t fibre_spread(const std::vector<OrbitNode>& nodes, int i) {
    std::set<FibreId> ids;
    for (const auto& n : nodes) ids.insert(i == 1 ? n.f1 : n.f2);
    return ids.size();
}

Histogram density_histogram(const Surface& s, const std::vector<OrbitNode>& nodes,
                            const std::array<Rat, 4>& chart, size_t bins) {
    int pos = 0, neg = 0;
    for (const auto& c : s.coeffs()) (c > 0 ? pos : neg)++;
    require(pos == 2 && neg == 2, ErrorKind::BadInput,
            "NoRealPoints: need two positive and two negative coefficients");
    require(bins > 0 && chart[0] < chart[1] && chart[2] < chart[3], ErrorKind::BadInput,
            "bad histogram chart");
    Histogram h;
    h.bins = bins;
    h.chart = chart;
    h.counts.assign(bins * bins, 0);
    auto bin_index = [&](const FibreId& f, const Rat& lo, const Rat& hi) -> long {
        if (f.v == 0) return -1;
        Rat x = make_rat(f.u, f.v);
        if (x < lo || x > hi) return -1;
        // floor(bins * (x - lo) / (hi - lo)), clamped so x == hi lands in
        // the last bin.
        Rat q = Rat(static_cast<unsigned long>(bins)) * (x - lo) / (hi - lo);
        Int k;
        mpz_fdiv_q(k.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        long idx = static_cast<long>(k.get_si());
        if (idx == static_cast<long>(bins)) idx = static_cast<long>(bins) - 1;
        return idx;
    };
    for (const auto& n : nodes) {
        long ix = bin_index(n.f1, chart[0], chart[1]);
        long iy = bin_index(n.f2, chart[2], chart[3]);
        if (ix < 0 || iy < 0) {
            ++h.outside;
            continue;
        }
        size_t& cell = h.counts[static_cast<size_t>(iy) * bins + static_cast<size_t>(ix)];
        if (cell == 0) ++h.occupied;
        ++cell;
    }
    return h;
}

} // namespace quartic
