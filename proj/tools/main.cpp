#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "fmw/beta.hpp"
#include "fmw/io.hpp"
#include "fmw/sample.hpp"

using namespace fmw;

namespace {

struct run_config {
    int n = 2;
    int k = 3;
    uint64_t seed = 1;
    double rho0 = default_rho0;
    double tolerance = 1e-9;
    int trials = 200;
};

json read_input(const std::string& path) {
    try {
        if (path.empty() || path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text << "\n";
}

bool verbose_reports() {
    const char* v = std::getenv("FMW_VERBOSE");
    return v && *v && std::string(v) != "0";
}

// accumulates one named body of trials into a report
struct checker {
    json breakdown = json::object();
    long passed = 0, failed = 0;
    double max_error = 0;

    void add(const std::string& name, bool ok, double err) {
        if (std::isfinite(err)) max_error = std::max(max_error, err);
        auto& slot = breakdown[name];
        if (slot.is_null()) slot = json{{"passed", 0}, {"failed", 0}};
        if (ok) {
            ++passed;
            slot["passed"] = slot["passed"].get<long>() + 1;
        } else {
            ++failed;
            slot["failed"] = slot["failed"].get<long>() + 1;
        }
    }

    int report(const std::string& command, const run_config& rc) const {
        json r;
        r["command"] = command;
        r["n"] = rc.n;
        r["k"] = rc.k;
        r["seed"] = rc.seed;
        r["rho0"] = rc.rho0;
        r["tolerance"] = rc.tolerance;
        r["trials"] = passed + failed;
        r["passed"] = passed;
        r["failed"] = failed;
        r["max_error"] = max_error;
        if (verbose_reports()) r["checks"] = breakdown;
        std::cout << r.dump() << "\n";
        return failed == 0 ? 0 : 1;
    }
};

fm_point mixed_fm(rng& r, const run_config& rc, int k) {
    if (k < 3) return sample_fm(r, rc.n, k, rc.rho0, region::interior);
    switch (r.below(4)) {
        case 0: return sample_fm(r, rc.n, k, rc.rho0, region::interior);
        case 1: return sample_fm(r, rc.n, k, rc.rho0, region::collar);
        case 2: return sample_fm(r, rc.n, k, rc.rho0, region::boundary);
        default: return sample_fm_free(r, rc.n, k, rc.rho0);
    }
}

fm_point boundary_fm(rng& r, const run_config& rc, int k) {
    auto p = sample_fm_free(r, rc.n, k, rc.rho0);
    if (p.tree.num_edges() == 0) return sample_fm(r, rc.n, k, rc.rho0, region::boundary);
    if (!on_boundary(p)) p.edge_u[1 + r.below(p.tree.num_edges())] = 0.0;
    return p;
}

int cmd_roundtrip(const run_config& rc) {
    rng r(rc.seed);
    checker ck;
    for (int trial = 0; trial < rc.trials; ++trial) {
        auto p = mixed_fm(r, rc, rc.k);
        double e1 = approx_error(beta_inverse(beta(p)), p);
        ck.add("beta_then_inverse", e1 <= rc.tolerance, e1);

        auto w = sample_w(r, rc.n, rc.k, rc.rho0);
        double e2 = w_approx_error(beta(beta_inverse(w)), w);
        ck.add("inverse_then_beta", e2 <= rc.tolerance, e2);
    }
    return ck.report("roundtrip", rc);
}

int cmd_check_axioms(const run_config& rc) {
    rng r(rc.seed);
    checker ck;
    for (int trial = 0; trial < rc.trials; ++trial) {
        // collar: identity at 2, exact inversion, membership by min u
        auto x = boundary_fm(r, rc, rc.k);
        double e0 = approx_error(collar_apply(2.0, x), x);
        ck.add("collar_identity_at_2", e0 <= 1e-15, e0);

        double t = r.unif(0.0, 2.0);
        auto y = collar_apply(t, x);
        auto ci = collar_invert(y);
        if (!ci) {
            ck.add("collar_inversion", false, 0.0);
        } else {
            double e1 = std::max(std::abs(ci->t - t), approx_error(ci->base, x));
            ck.add("collar_inversion", e1 <= 1e-12, e1);
        }
        auto free_pt = sample_fm_free(r, rc.n, rc.k, rc.rho0);
        auto m = min_u(free_pt);
        bool member = m.has_value() && *m <= 0.5;
        ck.add("collar_membership", collar_invert(free_pt).has_value() == member, 0.0);

        // operadic composition laws
        int k1 = 2 + r.below(2), k2 = 2 + r.below(2);
        auto a = mixed_fm(r, rc, k1);
        auto b = mixed_fm(r, rc, k2);
        int leaf = 1 + r.below(k1);
        auto lhs = beta(compose_at(a, leaf, b));
        auto rhs = compose_at(beta(a), leaf, beta(b));
        double e2 = w_approx_error(lhs, rhs);
        ck.add("beta_operad_morphism", e2 <= 1e-10, e2);
        double ml = max_length(lhs).value_or(-1.0);
        ck.add("grafted_length_is_one", ml == 1.0, 0.0);

        // max-length law
        double tm = r.unif(1.0, 2.0);
        if (tm > 1.0) {
            auto out = beta(collar_apply(tm, x));
            double got = max_length(out).value_or(-1.0);
            double e3 = std::abs(got - (tm - 1.0));
            ck.add("max_length_law", e3 <= 1e-12, e3);
        }

        // two-stage composition agrees with one-shot composition
        auto tree = random_tree(r, rc.k, true);
        std::vector<fm_point> labels(tree.num_vertices());
        for (int v = 0; v < tree.num_vertices(); ++v)
            labels[v] = mixed_fm(r, rc, tree.valence(v));
        auto one_shot = fmw::compose(tree, labels);
        std::set<int> stage;
        for (int e = 1; e < tree.num_vertices(); ++e)
            if (r.below(2) == 0) stage.insert(e);
        if (!stage.empty() && (int)stage.size() < tree.num_edges()) {
            auto cut = cut_edges(tree, stage);
            std::vector<fm_point> outer(cut.skeleton.num_vertices());
            for (int s = 0; s < cut.skeleton.num_vertices(); ++s) {
                std::vector<fm_point> inner(cut.fragment[s].num_vertices());
                for (int xv = 0; xv < cut.fragment[s].num_vertices(); ++xv)
                    inner[xv] = labels[cut.fragment_vertex_map[s][xv]];
                outer[s] = fmw::compose(cut.fragment[s], inner);
            }
            double e4 = approx_error(one_shot, fmw::compose(cut.skeleton, outer));
            ck.add("composition_two_stage", e4 == 0.0, e4);
        }

        // chart round trip
        auto interior = sample_fm_chart(r, rc.n, rc.k, rc.rho0);
        double e5 = approx_error(decompose(rc.n, realize(interior).data(), rc.rho0), interior);
        ck.add("chart_roundtrip", e5 <= 1e-10, e5);
    }
    return ck.report("check-axioms", rc);
}

int cmd_check_equivariance(const run_config& rc) {
    rng r(rc.seed);
    checker ck;
    for (int trial = 0; trial < rc.trials; ++trial) {
        auto p = mixed_fm(r, rc, rc.k);
        auto g = random_group(r, rc.n, rc.k);

        double e1 = w_approx_error(beta(act(g, p)), act(g, beta(p)));
        ck.add("beta", e1 <= 1e-10, e1);

        auto w = sample_w(r, rc.n, rc.k, rc.rho0);
        double e2 = approx_error(beta_inverse(act(g, w)), act(g, beta_inverse(w)));
        ck.add("beta_inverse", e2 <= 1e-10, e2);

        auto x = boundary_fm(r, rc, rc.k);
        double t = r.unif(0.0, 2.0);
        double e3 = approx_error(collar_apply(t, act(g, x)), act(g, collar_apply(t, x)));
        ck.add("collar", e3 == 0.0, e3);

        // composition equivariance: act then compose vs compose then act
        auto tree = random_tree(r, rc.k, true);
        std::vector<fm_point> labels(tree.num_vertices());
        for (int v = 0; v < tree.num_vertices(); ++v)
            labels[v] = mixed_fm(r, rc, tree.valence(v));
        auto lhs = act(g, fmw::compose(tree, labels));
        auto rel = permute_leaves(g.sigma, tree);
        std::vector<fm_point> moved(tree.num_vertices());
        for (int v = 0; v < tree.num_vertices(); ++v)
            moved[rel.vertex_map[v]] = act({permutation(rel.slot_perm[v]), g.q}, labels[v]);
        double e4 = approx_error(lhs, fmw::compose(rel.tree, moved));
        ck.add("composition", e4 <= 1e-12, e4);

        // freeness
        auto sigma = r.perm(rc.k);
        if (!sigma.is_identity()) {
            group_element just_perm{sigma, ortho_matrix::identity(rc.n)};
            double e5 = approx_error(act(just_perm, p), p);
            ck.add("freeness", e5 > 1e-6, 0.0);
        }
    }
    return ck.report("check-equivariance", rc);
}

int cmd_check_seams(const run_config& rc) {
    rng r(rc.seed);
    checker ck;
    const double eps = 1e-6;
    for (int trial = 0; trial < rc.trials; ++trial) {
        auto w = boundary_fm(r, rc, rc.k);

        double e0 = w_approx_error(beta_scale_branch(0.0, w), w_single(collar_apply(0.0, w)));
        ck.add("seam_t0", e0 <= 1e-12, e0);

        double e1 = w_approx_error(beta_scale_branch(1.0, w), beta_graft_branch(1.0, w));
        ck.add("seam_t1", e1 <= 1e-12, e1);

        auto x = collar_apply(0.0, w);
        auto ci = collar_invert(x);
        double t = r.unif(1.0, 2.0);
        double e2 = ci ? w_approx_error(beta_fragment_plain(x),
                                        beta_fragment_scaled(ci->t, ci->base, t))
                       : std::numeric_limits<double>::infinity();
        ck.add("seam_s0", e2 <= 1e-12, e2);

        double e3 = w_approx_error(beta_fragment_scaled(1.0, w, t), beta_fragment_extended(1.0, w, t));
        ck.add("seam_s1", e3 <= 1e-12, e3);

        double e4 = w_approx_error(collar_extend(2.0, w), beta(collar_apply(1.0, w)));
        ck.add("seam_cprime", e4 <= 1e-12, e4);

        auto gap = [](const w_point& a, const w_point& b) {
            return config_dist(realize(beta_inverse(a)), realize(beta_inverse(b)));
        };
        double p1 = gap(beta(collar_apply(1.0 - eps, w)), beta(collar_apply(1.0 + eps, w)));
        ck.add("probe_t1", p1 < 1e-4, p1);

        auto inside = collar_apply(0.0, w);
        for (int e = 1; e < inside.tree.num_vertices(); ++e)
            inside.edge_u[e] = std::min(inside.edge_u[e] + eps, 1.0 - 1e-12);
        double p0 = gap(beta(collar_apply(eps, w)), beta(inside));
        ck.add("probe_t0", p0 < 1e-4, p0);
    }
    return ck.report("check-seams", rc);
}

int cmd_enumerate(int k) {
    auto trees = enumerate_trees(k);
    json by_codim = json::object();
    json listing = json::array();
    for (const auto& t : trees) {
        std::string c = std::to_string(t.num_edges());
        by_codim[c] = (by_codim.contains(c) ? by_codim[c].get<long>() : 0L) + 1;
        listing.push_back(json{{"tree", to_json(t)}, {"codim", t.num_edges()}});
    }
    json r;
    r["command"] = "enumerate-strata";
    r["k"] = k;
    r["total"] = trees.size();
    r["by_codim"] = by_codim;
    r["trees"] = std::move(listing);
    std::cout << r.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fulton-MacPherson operad, W-construction, and the isomorphism between them"};
    app.require_subcommand(1);

    run_config rc;
    std::string in_path, out_path, region_name = "interior", tree_text;
    std::vector<std::string> label_paths;
    int at_leaf = 0;
    double edge_length = 1.0;

    auto add_common = [&](CLI::App* cmd, bool with_trials) {
        cmd->add_option("--n", rc.n, "ambient dimension")->check(CLI::PositiveNumber);
        cmd->add_option("--k", rc.k, "arity")->check(CLI::Range(2, 6));
        cmd->add_option("--seed", rc.seed, "random seed");
        cmd->add_option("--rho0", rc.rho0, "cluster ratio");
        if (with_trials) {
            cmd->add_option("--trials", rc.trials, "trial count")->check(CLI::PositiveNumber);
            cmd->add_option("--tol", rc.tolerance, "tolerance")->check(CLI::PositiveNumber);
        }
    };

    auto* sample_cmd = app.add_subcommand("sample", "draw a seeded normal form");
    add_common(sample_cmd, false);
    sample_cmd->add_option("--region", region_name, "interior|collar|boundary");
    sample_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* compose_cmd = app.add_subcommand("compose", "operadic composition of stored points");
    compose_cmd->add_option("--tree", tree_text, "composition tree as JSON, e.g. [[1,2],3]");
    compose_cmd->add_option("--at", at_leaf, "compose two points at this leaf instead");
    compose_cmd->add_option("--length", edge_length, "edge length for W composition");
    compose_cmd->add_option("--out", out_path, "output file");
    compose_cmd->add_option("files", label_paths, "point files in vertex order");

    auto* beta_cmd = app.add_subcommand("beta", "apply the isomorphism");
    beta_cmd->add_option("--in", in_path, "input file (default stdin)");
    beta_cmd->add_option("--out", out_path, "output file");

    auto* betainv_cmd = app.add_subcommand("beta-inv", "apply the inverse isomorphism");
    betainv_cmd->add_option("--in", in_path, "input file (default stdin)");
    betainv_cmd->add_option("--out", out_path, "output file");

    auto* roundtrip_cmd = app.add_subcommand("roundtrip", "seeded round-trip sweep");
    add_common(roundtrip_cmd, true);

    auto* axioms_cmd = app.add_subcommand("check-axioms", "collar, composition, and length laws");
    add_common(axioms_cmd, true);

    auto* equiv_cmd = app.add_subcommand("check-equivariance", "group actions commute with everything");
    add_common(equiv_cmd, true);

    auto* seams_cmd = app.add_subcommand("check-seams", "piecewise definitions agree at the seams");
    add_common(seams_cmd, true);

    int enum_k = 3;
    auto* enum_cmd = app.add_subcommand("enumerate-strata", "list boundary strata by codimension");
    enum_cmd->add_option("--k", enum_k, "arity")->check(CLI::Range(2, 6))->required();

    auto* dot_cmd = app.add_subcommand("export-dot", "graphviz rendering of a stored object");
    dot_cmd->add_option("--in", in_path, "input file (default stdin)");
    dot_cmd->add_option("--out", out_path, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample_cmd->parsed()) {
            region reg = region_name == "interior" ? region::interior
                       : region_name == "collar"   ? region::collar
                       : region_name == "boundary" ? region::boundary
                                                   : throw std::invalid_argument(
                                                         "unknown region: " + region_name);
            auto p = sample_fm(rc.n, rc.k, rc.seed, reg, rc.rho0);
            write_output(out_path, to_json(p).dump());
            return 0;
        }
        if (compose_cmd->parsed()) {
            std::vector<json> inputs;
            for (const auto& path : label_paths) inputs.push_back(read_input(path));
            if (inputs.empty()) throw std::invalid_argument("compose: no input files");
            bool is_w = detect_kind(inputs[0]) == payload_kind::w;

            nested_tree t;
            if (at_leaf > 0) {
                if (inputs.size() != 2) throw std::invalid_argument("compose --at needs two points");
            } else if (!tree_text.empty()) {
                t = tree_from_json(json::parse(tree_text));
            } else {
                throw std::invalid_argument("compose: give --tree or --at");
            }

            if (is_w) {
                std::vector<w_point> parts;
                for (const auto& j : inputs) parts.push_back(w_from_json(j));
                auto out = at_leaf > 0 ? compose_at(parts[0], at_leaf, parts[1])
                                       : compose(t, parts, edge_length);
                write_output(out_path, to_json(out).dump());
            } else {
                std::vector<fm_point> labels;
                for (const auto& j : inputs) labels.push_back(fm_from_json(j));
                auto out = at_leaf > 0 ? compose_at(labels[0], at_leaf, labels[1])
                                       : fmw::compose(t, labels);
                write_output(out_path, to_json(out).dump());
            }
            return 0;
        }
        if (beta_cmd->parsed()) {
            auto p = fm_from_json(read_input(in_path));
            write_output(out_path, to_json(beta(p)).dump());
            return 0;
        }
        if (betainv_cmd->parsed()) {
            auto w = w_from_json(read_input(in_path));
            write_output(out_path, to_json(beta_inverse(w)).dump());
            return 0;
        }
        if (roundtrip_cmd->parsed()) return cmd_roundtrip(rc);
        if (axioms_cmd->parsed()) return cmd_check_axioms(rc);
        if (equiv_cmd->parsed()) return cmd_check_equivariance(rc);
        if (seams_cmd->parsed()) return cmd_check_seams(rc);
        if (enum_cmd->parsed()) return cmd_enumerate(enum_k);
        if (dot_cmd->parsed()) {
            auto j = read_input(in_path);
            switch (detect_kind(j)) {
                case payload_kind::tree: write_output(out_path, to_dot(tree_from_json(j))); break;
                case payload_kind::fm: write_output(out_path, to_dot(fm_from_json(j))); break;
                case payload_kind::w: write_output(out_path, to_dot(w_from_json(j))); break;
                case payload_kind::config:
                    throw std::invalid_argument("export-dot: configurations have no tree to draw");
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
