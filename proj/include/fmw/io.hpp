#pragma once

#include <string>

#include "json.hpp"

#include "fmw/fm.hpp"
#include "fmw/w.hpp"

namespace fmw {

using json = nlohmann::ordered_json;

// trees serialize as nested arrays in canonical order, e.g. [[1,2],3]
json to_json(const nested_tree& t);
nested_tree tree_from_json(const json& j);

json to_json(const normalized_config& x);
normalized_config config_from_json(const json& j);

// {"n","k","rho0","tree","vertex_configs","edge_u"}; vertex configs and edge
// parameters are keyed by the canonical key of the subtree at the vertex
// (resp. below the edge)
json to_json(const fm_point& p);
fm_point fm_from_json(const json& j);

// {"n","k","rho0","tree","labels","lengths"}, keyed the same way
json to_json(const w_point& w);
w_point w_from_json(const json& j);

enum class payload_kind { tree, config, fm, w };
payload_kind detect_kind(const json& j);

std::string to_dot(const nested_tree& t);
std::string to_dot(const fm_point& p);
std::string to_dot(const w_point& w);

} // namespace fmw
