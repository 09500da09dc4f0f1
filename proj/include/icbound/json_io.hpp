#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "icbound/cliques.hpp"
#include "icbound/design.hpp"
#include "icbound/instance.hpp"

namespace icbound {

using ojson = nlohmann::ordered_json;

ojson field_to_json(const Field& f);
Field field_from_json(const nlohmann::json& j);

ojson matrix_to_json(const FqMatrix& m);
FqMatrix matrix_from_json(const nlohmann::json& j);

ojson digraph_to_json(const Digraph& g);
Digraph digraph_from_json(const nlohmann::json& j);

ojson hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

ojson icsi_to_json(const IcsiInstance& inst);
IcsiInstance icsi_from_json(const nlohmann::json& j);

ojson iccsi_to_json(const IccsiInstance& inst);
IccsiInstance iccsi_from_json(const nlohmann::json& j);

ojson design_to_json(const Design& d);
/// Validates on load; `t` is taken from the file ("t" key, default 2).
Design design_from_json(const nlohmann::json& j);

/// An instance file holds an ICSI instance, an ICCSI instance, or a bare
/// digraph ({"n":..,"arcs":..}); exactly one field is set.
struct LoadedInstance {
    std::optional<IcsiInstance> icsi;
    std::optional<IccsiInstance> iccsi;
    std::optional<Digraph> digraph;
};

LoadedInstance load_instance(const nlohmann::json& j);
LoadedInstance load_instance_file(const std::string& path);

nlohmann::json read_json_file(const std::string& path);

}  // namespace icbound
