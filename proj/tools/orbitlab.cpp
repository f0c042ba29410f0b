// orbitlab: decide orbit-closure relations of normal operators presented as
// spectral data, compute essential spectra and spectral distances, and run
// the constructive matrix lab.
//
// Exit codes: 0 relation holds / value computed, 1 relation fails, 2 error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "orbitlab/io.hpp"
#include "orbitlab/report.hpp"
#include "orbitlab/selftest.hpp"

namespace {

using namespace orbitlab;

struct Options {
    bool json = false;
    std::uint64_t seed = 0;
    std::vector<std::string> frame;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParsedOperator load(const std::string& path) { return parse_operator_spec(read_file(path)); }

SpectralMeasure load_measure(const std::string& path) {
    ParsedOperator op = load(path);
    if (auto* m = std::get_if<SpectralMeasure>(&op)) return *m;
    throw Error("'" + path + "' holds a matrix; this query needs a spectral measure");
}

NormalMatrix load_matrix(const std::string& path) {
    ParsedOperator op = load(path);
    if (auto* m = std::get_if<NormalMatrix>(&op)) return *m;
    throw Error("'" + path + "' holds a spectral measure; this query needs a matrix");
}

std::optional<Box> parse_frame(const std::vector<std::string>& frame) {
    if (frame.empty()) return std::nullopt;
    if (frame.size() != 4) throw Error("--frame needs x0 y0 x1 y1");
    return Box(detail_io::parse_rational(frame[0], 0), detail_io::parse_rational(frame[1], 0),
               detail_io::parse_rational(frame[2], 0), detail_io::parse_rational(frame[3], 0));
}

class Emitter {
public:
    Emitter(const Options& opt, std::string query)
        : opt_(opt), query_(std::move(query)), start_(std::chrono::steady_clock::now()) {}

    int finish(const Json& body, const std::string& text, int exit_code) {
        if (opt_.json) {
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
            std::cout << make_report(query_, body, opt_.seed, ms).dump(2) << "\n";
        } else {
            std::cout << text << "\n";
        }
        return exit_code;
    }

private:
    const Options& opt_;
    std::string query_;
    std::chrono::steady_clock::time_point start_;
};

std::string describe(const OrbitVerdict& v) {
    std::ostringstream out;
    out << (v.holds ? "holds" : "fails");
    if (!v.notes.empty()) out << " (" << v.notes << ")";
    if (v.witness) {
        out << "\nwitness region:";
        for (const Box& b : v.witness->rects()) out << " " << b.str();
    }
    return out.str();
}

std::string describe(const SupportSet& s) {
    if (s.is_empty()) return "(empty)";
    std::ostringstream out;
    for (const Box& c : s.cells()) out << "cell " << c.str() << "  ";
    for (const Box& g : s.segs()) out << "seg " << g.str() << "  ";
    for (const RatPoint& p : s.pts()) out << "pt " << p.str() << "  ";
    return out.str();
}

int cmd_compare(const Options& opt, const std::string& topology, const std::string& fa,
                const std::string& fb) {
    Emitter em(opt, "compare --topology " + topology);
    SpectralMeasure h = load_measure(fa), k = load_measure(fb);
    if (topology == "norm") {
        OrbitVerdict v = same_norm_closure(h, k);
        return em.finish(to_json(v), "same norm-closed orbit: " + describe(v), v.holds ? 0 : 1);
    }
    // Equality of strong*/strong closures is mutual membership.
    OrbitVerdict fwd = member_strong_closure(k, h);
    OrbitVerdict bwd = member_strong_closure(h, k);
    OrbitVerdict v = fwd.holds ? bwd : fwd;
    v.holds = fwd.holds && bwd.holds;
    if (v.holds) v.relation = OrbitRelation::SameNormClosure;
    Json body{{"holds", v.holds}, {"forward", to_json(fwd)}, {"backward", to_json(bwd)}};
    return em.finish(body, "same " + topology + "-closed orbit: " + describe(v),
                     v.holds ? 0 : 1);
}

int cmd_member(const Options& opt, const std::string& fk, const std::string& fh) {
    Emitter em(opt, "member");
    SpectralMeasure k = load_measure(fk), h = load_measure(fh);
    OrbitVerdict v = member_strong_closure(k, h);
    return em.finish(to_json(v), "k in strong closure of U(h): " + describe(v),
                     v.holds ? 0 : 1);
}

int cmd_delta(const Options& opt, const std::string& fa, const std::string& fb,
              const std::string& tol_str) {
    Emitter em(opt, "delta");
    ParsedOperator a = load(fa), b = load(fb);
    if (std::holds_alternative<NormalMatrix>(a) || std::holds_alternative<NormalMatrix>(b)) {
        NormalMatrix h = load_matrix(fa), k = load_matrix(fb);
        double d = delta_matrix(h, k);
        return em.finish(Json{{"delta_exact", d}},
                         "spectral distance (exact bottleneck): " + std::to_string(d), 0);
    }
    Rational tol = detail_io::parse_rational(tol_str, 0);
    SpectralMeasure h = std::get<SpectralMeasure>(a), k = std::get<SpectralMeasure>(b);
    PresentationDistance d = delta_presentation(h, k, tol, opt.seed);
    std::ostringstream text;
    text << "spectral distance bracket (sup metric): [" << d.lo.str() << ", " << d.hi.str()
         << "]";
    if (d.exact_zero) text << " (exactly 0: equal norm-closed orbits)";
    text << "\nEuclidean bracket: [" << d.euclid_lo << ", " << d.euclid_hi << "]";
    return em.finish(to_json(d), text.str(), 0);
}

int cmd_dist(const Options& opt, const std::string& fh, const std::string& fk, int restarts) {
    Emitter em(opt, "dist");
    NormalMatrix h = load_matrix(fh), k = load_matrix(fk);
    DistanceReport rep = dist_upper_bound(h, k, restarts, opt.seed);
    std::ostringstream text;
    text << "delta (bottleneck): " << rep.delta_exact << "\norbit distance upper bound: "
         << rep.dist_ub << "\niterations: " << rep.iterations << ", restarts: " << rep.restarts
         << ", seed: " << rep.seed;
    return em.finish(to_json(rep), text.str(), 0);
}

int cmd_essential(const Options& opt, const std::string& fh) {
    Emitter em(opt, "essential");
    SpectralMeasure h = load_measure(fh);
    SupportSet ess = h.essential_spectrum();
    return em.finish(to_json(ess), "essential spectrum: " + describe(ess), 0);
}

int cmd_small(const Options& opt, const std::string& fh) {
    Emitter em(opt, "small");
    SpectralMeasure h = load_measure(fh);
    SupportSet ess = h.essential_spectrum();
    std::optional<Box> frame = parse_frame(opt.frame);
    bool small = frame ? is_small(ess, *frame) : is_small(ess);
    bool agree = strongstar_eq_strong(h);
    Json body{{"essential_spectrum", to_json(ess)},
              {"small", small},
              {"strongstar_eq_strong", agree}};
    std::string text = "essential spectrum: " + describe(ess) +
                       "\nsmall: " + (small ? "yes" : "no") +
                       "\nstrong* closure equals strong closure: " + (agree ? "yes" : "no");
    return em.finish(body, text, small ? 0 : 1);
}

int cmd_closedness(const Options& opt, const std::string& fh) {
    Emitter em(opt, "closedness");
    SpectralMeasure h = load_measure(fh);
    ClosednessReport rep = orbit_norm_closed(h);
    std::ostringstream text;
    text << "unitary orbit norm-closed: " << (rep.closed ? "yes" : "no");
    if (!rep.closed) {
        if (rep.failing_point)
            text << "\nwitness point: " << rep.failing_point->str()
                 << ", radius: " << rep.radius->str();
        if (rep.offending_block) text << "\noffending block: " << rep.offending_block->str();
    }
    return em.finish(to_json(rep), text.str(), rep.closed ? 0 : 1);
}

int cmd_construct(const Options& opt, const std::string& fh, const std::string& fk,
                  double mesh) {
    Emitter em(opt, "construct");
    NormalMatrix h = load_matrix(fh), k = load_matrix(fk);
    try {
        GridUnitary g = construct_unitary_grid(h, k, mesh);
        Json body{{"achieved_norm", g.achieved_norm}, {"cell_side", g.cell_side}};
        Json rows = Json::array();
        for (Eigen::Index i = 0; i < g.unitary.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index j = 0; j < g.unitary.cols(); ++j)
                row.push_back(format_complex(g.unitary(i, j)));
            rows.push_back(row);
        }
        body["unitary"] = rows;
        std::ostringstream text;
        text << "achieved norm " << g.achieved_norm << " <= mesh " << mesh << "\nunitary:\n";
        for (Eigen::Index i = 0; i < g.unitary.rows(); ++i) {
            for (Eigen::Index j = 0; j < g.unitary.cols(); ++j)
                text << format_complex(g.unitary(i, j)) << (j + 1 < g.unitary.cols() ? " " : "");
            text << "\n";
        }
        return em.finish(body, text.str(), 0);
    } catch (const MultiplicityMismatchError& e) {
        Json body{{"error", "MultiplicityMismatch"},
                  {"cell", Json{e.cell_x, e.cell_y}},
                  {"cell_side", e.cell_side},
                  {"count_h", e.count_h},
                  {"count_k", e.count_k}};
        return em.finish(body, std::string("multiplicity mismatch: ") + e.what(), 1);
    }
}

int cmd_central_meet(const Options& opt, const std::string& fh) {
    Emitter em(opt, "central-meet");
    SpectralMeasure h = load_measure(fh);
    SupportSet cm = central_meet(h);
    return em.finish(to_json(cm),
                     "scalars in the strong-closed unitary orbit: " + describe(cm), 0);
}

int cmd_selftest(const Options& opt) {
    auto results = run_acceptance(opt.seed, &std::cout);
    bool all = true;
    for (const auto& r : results) all &= r.pass;
    if (opt.json) {
        Json arr = Json::array();
        for (const auto& r : results)
            arr.push_back(Json{{"id", r.id},
                               {"name", r.name},
                               {"pass", r.pass},
                               {"detail", r.detail},
                               {"seconds", r.seconds}});
        std::cout << make_report("selftest", arr, opt.seed, 0.0).dump(2) << "\n";
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbitlab: unitary orbit closures of normal operators from spectral data"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("ORBITLAB_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
    app.add_flag("--json", opt.json, "machine-readable JSON reports");
    app.add_option("--seed", opt.seed, "seed for randomized subroutines");
    app.add_option("--frame", opt.frame, "override frame: x0 y0 x1 y1")->expected(4);

    std::string file_a, file_b, topology = "norm", tol = "1/256";
    int restarts = 4;
    double mesh = 0.25;

    auto* compare = app.add_subcommand("compare", "same closed unitary orbit?");
    compare->add_option("--topology", topology, "norm | strongstar | strong")
        ->check(CLI::IsMember({"norm", "strongstar", "strong"}));
    compare->add_option("a_file", file_a, "operator file")->required();
    compare->add_option("b_file", file_b, "operator file")->required();

    auto* member = app.add_subcommand("member", "is k in the strong closure of U(h)?");
    member->add_option("k_file", file_a, "candidate operator file")->required();
    member->add_option("h_file", file_b, "orbit operator file")->required();

    auto* delta = app.add_subcommand("delta", "spectral distance");
    delta->add_option("a_file", file_a)->required();
    delta->add_option("b_file", file_b)->required();
    delta->add_option("--tol", tol, "bracket tolerance (dyadic rational)");

    auto* dist = app.add_subcommand("dist", "orbit distance upper bound (matrices)");
    dist->add_option("h_file", file_a)->required();
    dist->add_option("k_file", file_b)->required();
    dist->add_option("--restarts", restarts, "descent restarts");

    auto* essential = app.add_subcommand("essential", "essential spectrum");
    essential->add_option("h_file", file_a)->required();

    auto* small = app.add_subcommand("small", "is the essential spectrum small?");
    small->add_option("h_file", file_a)->required();

    auto* closedness = app.add_subcommand("closedness", "is the unitary orbit norm-closed?");
    closedness->add_option("h_file", file_a)->required();

    auto* construct = app.add_subcommand("construct", "grid-matching unitary (matrices)");
    construct->add_option("--mesh", mesh, "grid cell diameter")->required();
    construct->add_option("h_file", file_a)->required();
    construct->add_option("k_file", file_b)->required();

    auto* central = app.add_subcommand("central-meet", "scalars in the strong-closed orbit");
    central->add_option("h_file", file_a)->required();

    app.add_subcommand("selftest", "run the full acceptance corpus");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compare->parsed()) return cmd_compare(opt, topology, file_a, file_b);
        if (member->parsed()) return cmd_member(opt, file_a, file_b);
        if (delta->parsed()) return cmd_delta(opt, file_a, file_b, tol);
        if (dist->parsed()) return cmd_dist(opt, file_a, file_b, restarts);
        if (essential->parsed()) return cmd_essential(opt, file_a);
        if (small->parsed()) return cmd_small(opt, file_a);
        if (closedness->parsed()) return cmd_closedness(opt, file_a);
        if (construct->parsed()) return cmd_construct(opt, file_a, file_b, mesh);
        if (central->parsed()) return cmd_central_meet(opt, file_a);
        return cmd_selftest(opt);
    } catch (const NonSeparablePredualError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
