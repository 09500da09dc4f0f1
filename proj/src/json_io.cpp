#include "icbound/json_io.hpp"

#include <fstream>

namespace icbound {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ParseError(what);
}

}  // namespace

ojson field_to_json(const Field& f) {
    ojson j;
    j["p"] = f.p();
    j["ell"] = f.ell();
    j["modulus"] = f.modulus();
    return j;
}

Field field_from_json(const nlohmann::json& j) {
    require(j.contains("p") && j.contains("ell"), "field needs p and ell");
    std::optional<std::vector<int>> modulus;
    if (j.contains("modulus")) modulus = j["modulus"].get<std::vector<int>>();
    return Field::make(j["p"].get<long>(), j["ell"].get<int>(), modulus);
}

ojson matrix_to_json(const FqMatrix& m) {
    ojson j = field_to_json(m.field());
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<long> entries(m.entries().begin(), m.entries().end());
    j["entries"] = entries;
    return j;
}

FqMatrix matrix_from_json(const nlohmann::json& j) {
    Field f = field_from_json(j);
    require(j.contains("rows") && j.contains("cols") && j.contains("entries"),
            "matrix needs rows, cols, entries");
    auto raw = j["entries"].get<std::vector<long>>();
    std::vector<felem> entries;
    for (long v : raw) {
        require(v >= 0 && v < f.q(), "matrix entry out of field range");
        entries.push_back(static_cast<felem>(v));
    }
    return FqMatrix(f, j["rows"].get<int>(), j["cols"].get<int>(), std::move(entries));
}

ojson digraph_to_json(const Digraph& g) {
    ojson j;
    j["n"] = g.n;
    std::vector<std::vector<int>> arcs;
    for (const auto& [u, v] : g.arcs) arcs.push_back({u, v});
    j["arcs"] = arcs;
    return j;
}

Digraph digraph_from_json(const nlohmann::json& j) {
    require(j.contains("n") && j.contains("arcs"), "digraph needs n and arcs");
    std::set<std::pair<int, int>> arcs;
    for (const auto& a : j["arcs"]) {
        require(a.is_array() && a.size() == 2, "arc must be a pair");
        arcs.insert({a[0].get<int>(), a[1].get<int>()});
    }
    return Digraph(j["n"].get<int>(), std::move(arcs));
}

ojson hypergraph_to_json(const Hypergraph& h) {
    ojson j;
    j["n"] = h.n;
    ojson arcs = ojson::array();
    for (const auto& [tail, head] : h.hyperarcs) {
        ojson e;
        e["tail"] = tail;
        e["head"] = head;
        arcs.push_back(e);
    }
    j["hyperarcs"] = arcs;
    return j;
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
    require(j.contains("n") && j.contains("hyperarcs"), "hypergraph needs n and hyperarcs");
    std::vector<std::pair<int, std::vector<int>>> arcs;
    for (const auto& e : j["hyperarcs"])
        arcs.push_back({e.at("tail").get<int>(), e.at("head").get<std::vector<int>>()});
    return Hypergraph(j["n"].get<int>(), std::move(arcs));
}

ojson icsi_to_json(const IcsiInstance& inst) {
    ojson j;
    j["type"] = "icsi";
    j["n"] = inst.n;
    j["m"] = inst.m;
    j["t"] = inst.t;
    j["f"] = inst.f;
    j["side_info"] = inst.side_info;
    return j;
}

IcsiInstance icsi_from_json(const nlohmann::json& j) {
    return IcsiInstance(j.at("n").get<int>(), j.at("m").get<int>(),
                        j.value("t", 1), j.at("f").get<std::vector<int>>(),
                        j.at("side_info").get<std::vector<std::vector<int>>>());
}

ojson iccsi_to_json(const IccsiInstance& inst) {
    ojson j;
    j["type"] = "iccsi";
    j["field"] = field_to_json(inst.field);
    j["n"] = inst.n;
    j["m"] = inst.m;
    j["t"] = inst.t;
    j["VS"] = matrix_to_json(inst.VS);
    ojson v = ojson::array();
    for (const auto& vi : inst.V) v.push_back(matrix_to_json(vi));
    j["V"] = v;
    j["R"] = matrix_to_json(inst.R);
    return j;
}

IccsiInstance iccsi_from_json(const nlohmann::json& j) {
    Field f = field_from_json(j.at("field"));
    std::vector<FqMatrix> v;
    for (const auto& vj : j.at("V")) {
        FqMatrix m = matrix_from_json(vj);
        require(m.field() == f, "V^(i) field differs from the instance field");
        v.push_back(std::move(m));
    }
    FqMatrix vs = matrix_from_json(j.at("VS"));
    FqMatrix r = matrix_from_json(j.at("R"));
    require(vs.field() == f && r.field() == f, "matrix fields must agree");
    return IccsiInstance(f, j.at("n").get<int>(), j.at("m").get<int>(), j.value("t", 1),
                         std::move(vs), std::move(v), std::move(r));
}

ojson design_to_json(const Design& d) {
    ojson j;
    j["v"] = d.v;
    j["blocks"] = d.blocks;
    j["t"] = d.t;
    j["k"] = d.k;
    j["lambda"] = d.lambda;
    j["r"] = d.r;
    j["order"] = d.order;
    return j;
}

Design design_from_json(const nlohmann::json& j) {
    require(j.contains("v") && j.contains("blocks"), "design needs v and blocks");
    return validate_design(j["v"].get<int>(),
                           j["blocks"].get<std::vector<std::vector<int>>>(),
                           j.value("t", 2));
}

LoadedInstance load_instance(const nlohmann::json& j) {
    LoadedInstance out;
    if (j.contains("type")) {
        std::string type = j["type"].get<std::string>();
        if (type == "icsi")
            out.icsi = icsi_from_json(j);
        else if (type == "iccsi")
            out.iccsi = iccsi_from_json(j);
        else
            throw ParseError("unknown instance type: " + type);
    } else if (j.contains("arcs")) {
        out.digraph = digraph_from_json(j);
    } else {
        throw ParseError("instance file needs a type (icsi/iccsi) or arcs");
    }
    return out;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

LoadedInstance load_instance_file(const std::string& path) {
    return load_instance(read_json_file(path));
}

}  // namespace icbound
