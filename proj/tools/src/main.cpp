#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "props.hpp"
#include "quartic/orbit.hpp"
#include "quartic/torsion.hpp"

using json = nlohmann::ordered_json;
using namespace quartic;

namespace {

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::BadInput: return 2;
        case ErrorKind::NotOnSurface: return 3;
        case ErrorKind::OmegaPoint: return 4;
        case ErrorKind::Internal: return 5;
    }
    return 5;
}

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::BadInput: return "BadInput";
        case ErrorKind::NotOnSurface: return "NotOnSurface";
        case ErrorKind::OmegaPoint: return "OmegaPoint";
        case ErrorKind::Internal: return "Internal";
    }
    return "Internal";
}

struct Options {
    std::string surface;
    std::string point;
    int fibration = 0;  // 0 = both
    size_t max_nodes = 200;
    size_t max_digits = 2000;
    std::string format = "jsonl";
    size_t bins = 0;
    std::string chart = "-2,2,-2,2";
};

json curve_json(const WeierstrassCurve& e) {
    return json{{"a1", to_string(e.a1)}, {"a2", to_string(e.a2)}, {"a3", to_string(e.a3)},
                {"a4", to_string(e.a4)}, {"a6", to_string(e.a6)}};
}

json point_json(const EllPoint& q) {
    if (q.infinity) return json{{"infinity", true}};
    return json{{"x", to_string(q.x)}, {"y", to_string(q.y)}};
}

std::array<Rat, 4> parse_chart(const std::string& spec) {
    std::stringstream ss(spec);
    std::string part;
    std::array<Rat, 4> out;
    size_t i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 4) throw Error(ErrorKind::BadInput, "bad chart spec: " + spec);
        out[i++] = parse_rat(part);
    }
    if (i != 4) throw Error(ErrorKind::BadInput, "bad chart spec: " + spec);
    return out;
}

Strategy make_strategy(const Options& o) {
    Strategy st;
    st.max_nodes = o.max_nodes;
    st.max_height_digits = o.max_digits;
    if (const char* env = std::getenv("QUARTIC_ORBIT_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0') st.threads = static_cast<unsigned>(v);
    }
    return st;
}

std::vector<int> fibration_indices(const Options& o) {
    if (o.fibration == 0) return {1, 2};
    return {o.fibration};
}

int cmd_check(const Options& o) {
    Surface s = parse_surface(o.surface);
    ProjPoint p = parse_point(o.point);
    json out{{"surface", s.str()}, {"point", p.str()}};
    if (!s.contains(p)) {
        out["on_surface"] = false;
        std::cout << out.dump() << "\n";
        return 3;
    }
    out["on_surface"] = true;
    out["class"] = to_string(classify_point(s, p));
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_apply_e(const Options& o) {
    Surface s = parse_surface(o.surface);
    ProjPoint p = parse_point(o.point);
    RulingPair r = RulingPair::build(s, tau_square(p));
    json out{{"surface", s.str()},
             {"point", p.str()},
             {"e1", apply_endo(s, r, 1, p).str()},
             {"e2", apply_endo(s, r, 2, p).str()}};
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_fibre(const Options& o) {
    Surface s = parse_surface(o.surface);
    ProjPoint p = parse_point(o.point);
    RulingPair r = RulingPair::build(s, tau_square(p));
    json out{{"surface", s.str()}, {"point", p.str()}};
    for (int i : {1, 2}) {
        FibreId f = r.fibre_value(i, p);
        out["f" + std::to_string(i)] = f.str();
        out["f" + std::to_string(i) + "_singular"] = r.is_singular_fibre(i, f);
    }
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_torsion(const Options& o) {
    Surface s = parse_surface(o.surface);
    ProjPoint p = parse_point(o.point);
    RulingPair r = RulingPair::build(s, tau_square(p));
    for (int i : fibration_indices(o)) {
        OrderClass oc = order_class(s, r, i, p);
        json out{{"fibration", i}, {"order", to_string(oc.kind)}};
        json wit = json::array();
        for (const auto& [name, q] : oc.witnesses) wit.push_back(json{{name, q.str()}});
        out["witnesses"] = wit;
        if (oc.kind == OrderKind::Infinite) {
            InfiniteOrderCertificate cert = certify_infinite_order(s, r, i, p);
            json mult = json::array();
            for (const auto& q : cert.multiples) mult.push_back(point_json(q));
            out["certificate"] = json{{"curve", curve_json(cert.curve)},
                                      {"image", point_json(cert.q)},
                                      {"nonzero_multiples", mult}};
        }
        std::cout << out.dump() << "\n";
    }
    return 0;
}

int cmd_weierstrass(const Options& o) {
    Surface s = parse_surface(o.surface);
    ProjPoint p = parse_point(o.point);
    RulingPair r = RulingPair::build(s, tau_square(p));
    for (int i : fibration_indices(o)) {
        auto [e, map] = fibre_to_weierstrass(s, r, i, p);
        json out{{"fibration", i},
                 {"fibre", r.fibre_value(i, p).str()},
                 {"curve", curve_json(e)},
                 {"discriminant", to_string(e.discriminant())},
                 {"origin", map.origin_point().str()}};
        std::cout << out.dump() << "\n";
    }
    return 0;
}

int cmd_orbit(const Options& o) {
    Surface s = parse_surface(o.surface);
    ProjPoint p = parse_point(o.point);
    RulingPair r = RulingPair::build(s, tau_square(p));
    OrbitResult res = generate_orbit(s, r, p, make_strategy(o));
    bool csv = o.format == "csv";
    if (csv) std::cout << "coords,op,parent,height_digits,f1,f2\n";
    for (const auto& n : res.nodes) {
        if (csv) {
            std::cout << n.point.str() << "," << n.op << "," << n.parent << ","
                      << n.height_digits << "," << n.f1.str() << "," << n.f2.str() << "\n";
            continue;
        }
        json line{{"coords", json::array()},
                  {"op", n.op},
                  {"parent", n.parent},
                  {"height_digits", n.height_digits},
                  {"f1", n.f1.str()},
                  {"f2", n.f2.str()}};
        for (int i = 0; i < 4; ++i) line["coords"].push_back(to_string(n.point[i]));
        std::cout << line.dump() << "\n";
    }
    if (!csv) {
        json summary{{"nodes", res.nodes.size()},
                     {"pruned", res.pruned},
                     {"singular_fibre_nodes", res.singular_fibre_nodes},
                     {"fibre_spread1", fibre_spread(res.nodes, 1)},
                     {"fibre_spread2", fibre_spread(res.nodes, 2)}};
        if (o.bins > 0) {
            Histogram h = density_histogram(s, res.nodes, parse_chart(o.chart), o.bins);
            json chart = json::array();
            for (const auto& c : h.chart) chart.push_back(to_string(c));
            summary["histogram"] = json{{"bins", h.bins},
                                        {"chart", chart},
                                        {"occupied", h.occupied},
                                        {"outside", h.outside},
                                        {"counts", h.counts}};
        }
        std::cout << summary.dump() << "\n";
    }
    return 0;
}

int cmd_verify_props(const Options& o) {
    Surface s = parse_surface(o.surface);
    ProjPoint p = parse_point(o.point);
    auto results = props::run_suite(s, p);
    for (const auto& c : results) {
        std::cout << c.name;
        for (size_t i = c.name.size(); i < 24; ++i) std::cout << ' ';
        std::cout << c.status;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
    }
    return props::all_passed(results) ? 0 : 1;
}

int cmd_reconcile(const Options& o) {
    Surface s = parse_surface(o.surface);
    ProjPoint p = parse_point(o.point);
    RulingPair r = RulingPair::build(s, tau_square(p));
    Strategy st;
    st.max_nodes = 24;
    st.max_height_digits = 1500;
    std::vector<ProjPoint> samples;
    for (const auto& n : generate_orbit(s, r, p, st).nodes)
        if (n.point.zero_count() == 0) samples.push_back(n.point);
    FormsReport rep = reconcile_forms(s, r, samples);
    json out{{"surface", s.str()},
             {"provenance", derive_validated_forms(s).provenance},
             {"surface_preserved", rep.surface_preserved},
             {"sigma_equivariant", rep.sigma_equivariant},
             {"printed_match", rep.printed_match},
             {"samples_checked", rep.samples_checked},
             {"samples_agreeing", rep.samples_agreeing}};
    out["counterexample"] = rep.counterexample ? json(rep.counterexample->str()) : json(nullptr);
    std::cout << out.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic on diagonal quartic surfaces: endomorphisms, "
                 "elliptic fibrations, torsion orders, and rational point generation"};
    app.require_subcommand(1);

    Options o;
    std::map<std::string, int (*)(const Options&)> handlers;
    auto add = [&](const std::string& name, const std::string& desc, int (*fn)(const Options&),
                   bool needs_fibration = false) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--surface", o.surface, "surface coefficients a,b,c,d")->required();
        sub->add_option("--point", o.point, "projective point x:y:z:w")->required();
        if (needs_fibration)
            sub->add_option("--fibration", o.fibration, "fibration index 1 or 2 (default: both)")
                ->check(CLI::IsMember({1, 2}));
        handlers[name] = fn;
        return sub;
    };

    add("check", "surface membership and point classification", cmd_check);
    add("apply-e", "both endomorphism images of a point", cmd_apply_e);
    add("fibre", "fibre parameters and singularity flags", cmd_fibre);
    add("torsion", "torsion order of the endomorphism divisor class", cmd_torsion, true);
    add("weierstrass", "Weierstrass model of the fibre through a point", cmd_weierstrass, true);
    CLI::App* orbit = add("orbit", "close a seed under the endomorphisms", cmd_orbit);
    orbit->add_option("--max-nodes", o.max_nodes, "node budget");
    orbit->add_option("--max-digits", o.max_digits, "height digit budget");
    orbit->add_option("--format", o.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
    orbit->add_option("--bins", o.bins, "histogram grid size (0 disables)");
    orbit->add_option("--chart", o.chart, "histogram chart x0,x1,y0,y1");
    add("verify-props", "run the proposition property suite", cmd_verify_props);
    add("reconcile-forms", "closed forms vs geometric construction report", cmd_reconcile);

    CLI11_PARSE(app, argc, argv);

    try {
        return handlers.at(app.get_subcommands().front()->get_name())(o);
    } catch (const Error& e) {
        std::cout << json{{"error", json{{"kind", kind_name(e.kind())}, {"message", e.what()}}}}.dump()
                  << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cout << json{{"error", json{{"kind", "Internal"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 5;
    }
}
