#include "fmw/io.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace fmw {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

json subtree_json(const nested_tree& t, int v) {
    json arr = json::array();
    for (const auto& c : t.children(v)) {
        if (c.is_leaf())
            arr.push_back(c.leaf);
        else
            arr.push_back(subtree_json(t, c.vertex));
    }
    return arr;
}

void stage_tree(tree_builder& tb, const json& j, int v) {
    if (!j.is_array()) fail("tree json: expected an array");
    for (const auto& c : j) {
        if (c.is_number_integer()) {
            tb.add_leaf(v, c.get<int>());
        } else if (c.is_array()) {
            int w = tb.add_vertex();
            tb.add_child(v, w);
            stage_tree(tb, c, w);
        } else {
            fail("tree json: children must be leaf labels or arrays");
        }
    }
}

double get_num(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number()) fail(std::string("json: missing number '") + field + "'");
    return j[field].get<double>();
}

} // namespace

json to_json(const nested_tree& t) {
    if (t.empty()) fail("to_json: empty tree");
    return subtree_json(t, nested_tree::root);
}

nested_tree tree_from_json(const json& j) {
    tree_builder tb;
    int r = tb.add_vertex();
    stage_tree(tb, j, r);
    return tb.build(r).tree;
}

json to_json(const normalized_config& x) {
    json j;
    j["n"] = x.dim();
    json pts = json::array();
    for (int i = 0; i < x.count(); ++i) {
        json p = json::array();
        for (double v : x.point(i)) p.push_back(v);
        pts.push_back(std::move(p));
    }
    j["points"] = std::move(pts);
    return j;
}

normalized_config config_from_json(const json& j) {
    int n = (int)get_num(j, "n");
    if (!j.contains("points") || !j["points"].is_array()) fail("config json: missing 'points'");
    std::vector<double> flat;
    for (const auto& p : j["points"]) {
        if (!p.is_array() || (int)p.size() != n) fail("config json: point of wrong dimension");
        for (const auto& v : p) flat.push_back(v.get<double>());
    }
    auto cfg = normalized_config::unchecked(n, std::move(flat));
    validate(cfg);
    return cfg;
}

json to_json(const fm_point& p) {
    json j;
    j["n"] = p.n;
    j["k"] = p.arity();
    j["rho0"] = p.rho0;
    j["tree"] = to_json(p.tree);
    json cfgs = json::object();
    for (int v = 0; v < p.tree.num_vertices(); ++v)
        cfgs[p.tree.subtree_key(v)] = to_json(p.vertex_config[v]);
    j["vertex_configs"] = std::move(cfgs);
    json us = json::object();
    for (int e = 1; e < p.tree.num_vertices(); ++e) us[p.tree.subtree_key(e)] = p.edge_u[e];
    j["edge_u"] = std::move(us);
    return j;
}

fm_point fm_from_json(const json& j) {
    fm_point p;
    p.n = (int)get_num(j, "n");
    p.rho0 = get_num(j, "rho0");
    if (!j.contains("tree")) fail("fm json: missing 'tree'");
    p.tree = tree_from_json(j["tree"]);
    if ((int)get_num(j, "k") != p.arity()) fail("fm json: 'k' disagrees with the tree");
    if (!j.contains("vertex_configs") || !j.contains("edge_u")) fail("fm json: missing components");
    p.vertex_config.resize(p.tree.num_vertices());
    p.edge_u.assign(p.tree.num_vertices(), 0.0);
    for (int v = 0; v < p.tree.num_vertices(); ++v) {
        std::string key = p.tree.subtree_key(v);
        if (!j["vertex_configs"].contains(key)) fail("fm json: missing config for vertex " + key);
        p.vertex_config[v] = config_from_json(j["vertex_configs"][key]);
    }
    for (int e = 1; e < p.tree.num_vertices(); ++e) {
        std::string key = p.tree.subtree_key(e);
        if (!j["edge_u"].contains(key)) fail("fm json: missing edge parameter for " + key);
        p.edge_u[e] = j["edge_u"][key].get<double>();
    }
    validate(p);
    return p;
}

json to_json(const w_point& w) {
    json j;
    j["n"] = w.n;
    j["k"] = w.arity();
    j["rho0"] = w.rho0;
    j["tree"] = to_json(w.tree);
    json labels = json::object();
    for (int v = 0; v < w.tree.num_vertices(); ++v)
        labels[w.tree.subtree_key(v)] = to_json(w.label[v]);
    j["labels"] = std::move(labels);
    json lens = json::object();
    for (int e = 1; e < w.tree.num_vertices(); ++e) lens[w.tree.subtree_key(e)] = w.length[e];
    j["lengths"] = std::move(lens);
    return j;
}

w_point w_from_json(const json& j) {
    w_point w;
    w.n = (int)get_num(j, "n");
    w.rho0 = get_num(j, "rho0");
    if (!j.contains("tree")) fail("w json: missing 'tree'");
    w.tree = tree_from_json(j["tree"]);
    if ((int)get_num(j, "k") != w.arity()) fail("w json: 'k' disagrees with the tree");
    if (!j.contains("labels") || !j.contains("lengths")) fail("w json: missing components");
    w.label.resize(w.tree.num_vertices());
    w.length.assign(w.tree.num_vertices(), 0.0);
    for (int v = 0; v < w.tree.num_vertices(); ++v) {
        std::string key = w.tree.subtree_key(v);
        if (!j["labels"].contains(key)) fail("w json: missing label for vertex " + key);
        w.label[v] = fm_from_json(j["labels"][key]);
    }
    for (int e = 1; e < w.tree.num_vertices(); ++e) {
        std::string key = w.tree.subtree_key(e);
        if (!j["lengths"].contains(key)) fail("w json: missing length for " + key);
        w.length[e] = j["lengths"][key].get<double>();
    }
    validate(w);
    return w;
}

payload_kind detect_kind(const json& j) {
    if (j.is_array()) return payload_kind::tree;
    if (j.is_object()) {
        if (j.contains("edge_u")) return payload_kind::fm;
        if (j.contains("lengths")) return payload_kind::w;
        if (j.contains("points")) return payload_kind::config;
    }
    fail("json: unrecognized payload");
}

namespace {

// leaves as boxes, vertices as circles; optional per-edge annotation
std::string tree_dot(const nested_tree& t, const std::function<std::string(int)>& edge_note) {
    std::ostringstream os;
    os << "digraph tree {\n  rankdir=BT;\n";
    for (int v = 0; v < t.num_vertices(); ++v)
        os << "  v" << v << " [shape=circle,label=\"\"];\n";
    for (int l = 1; l <= t.arity(); ++l)
        os << "  l" << l << " [shape=box,label=\"" << l << "\"];\n";
    for (int v = 0; v < t.num_vertices(); ++v) {
        for (const auto& c : t.children(v)) {
            if (c.is_leaf()) {
                os << "  l" << c.leaf << " -> v" << v << ";\n";
            } else {
                os << "  v" << c.vertex << " -> v" << v;
                std::string note = edge_note ? edge_note(c.vertex) : "";
                if (!note.empty()) os << " [label=\"" << note << "\"]";
                os << ";\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

std::string to_dot(const nested_tree& t) { return tree_dot(t, nullptr); }

std::string to_dot(const fm_point& p) {
    return tree_dot(p.tree, [&](int e) { return "u=" + fmt(p.edge_u[e]); });
}

std::string to_dot(const w_point& w) {
    return tree_dot(w.tree, [&](int e) { return "len=" + fmt(w.length[e]); });
}

} // namespace fmw
