#include "cellplan/map_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace cellplan {

using nlohmann::json;

PlanningMap::PlanningMap(std::vector<NodeRecord> nodes, std::vector<StreetRecord> streets,
                         double area_m2)
    : nodes_(std::move(nodes)), streets_(std::move(streets)), area_m2_(area_m2) {
    if (nodes_.empty()) {
        throw MapFormatError("map has no nodes");
    }
    if (!(area_m2_ > 0.0) || !std::isfinite(area_m2_)) {
        throw MapFormatError("area_m2 must be positive and finite");
    }
    std::sort(nodes_.begin(), nodes_.end(),
              [](const NodeRecord& a, const NodeRecord& b) { return a.id < b.id; });
    std::sort(streets_.begin(), streets_.end(),
              [](const StreetRecord& a, const StreetRecord& b) { return a.id < b.id; });

    std::unordered_set<std::int64_t> node_ids;
    for (const auto& n : nodes_) {
        if (n.id < 0) throw MapFormatError("negative node id=" + std::to_string(n.id));
        if (!node_ids.insert(n.id).second)
            throw MapFormatError("duplicate node id=" + std::to_string(n.id));
        if (!std::isfinite(n.x) || !std::isfinite(n.y))
            throw MapFormatError("non-finite coordinates, node id=" + std::to_string(n.id));
        if (n.load < 0) throw MapFormatError("negative load, node id=" + std::to_string(n.id));
    }
    std::unordered_set<std::int64_t> street_ids;
    for (const auto& s : streets_) {
        if (s.id < 0) throw MapFormatError("negative street id=" + std::to_string(s.id));
        if (!street_ids.insert(s.id).second)
            throw MapFormatError("duplicate street id=" + std::to_string(s.id));
        if (s.load < 0) throw MapFormatError("negative load, street id=" + std::to_string(s.id));
        if (s.from == s.to)
            throw MapFormatError("street endpoints coincide, street id=" + std::to_string(s.id));
        if (!node_ids.count(s.from) || !node_ids.count(s.to))
            throw MapFormatError("dangling endpoint, street id=" + std::to_string(s.id));
    }
    effective_load_ = distribute_street_loads(nodes_, streets_);
}

std::size_t PlanningMap::index_of(std::int64_t node_id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node_id,
                               [](const NodeRecord& n, std::int64_t id) { return n.id < id; });
    if (it == nodes_.end() || it->id != node_id)
        throw MapFormatError("unknown node id=" + std::to_string(node_id));
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::vector<std::int64_t> distribute_street_loads(const std::vector<NodeRecord>& nodes,
                                                  const std::vector<StreetRecord>& streets) {
    std::unordered_map<std::int64_t, std::size_t> index;
    index.reserve(nodes.size());
    std::vector<std::int64_t> eff(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        index[nodes[i].id] = i;
        eff[i] = nodes[i].load;
    }
    for (const auto& s : streets) {
        const std::int64_t half = s.load / 2;
        const std::int64_t extra = s.load % 2;
        const std::int64_t lo = std::min(s.from, s.to);
        const std::int64_t hi = std::max(s.from, s.to);
        eff[index.at(lo)] += half + extra;
        eff[index.at(hi)] += half;
    }
    return eff;
}

std::int64_t total_load(const PlanningMap& map) {
    std::int64_t sum = 0;
    for (std::int64_t l : map.effective_load()) sum += l;
    return sum;
}

namespace {

std::int64_t require_int(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw MapFormatError("missing or non-integer '" + std::string(key) + "' in " + where);
    return j[key].get<std::int64_t>();
}

double require_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw MapFormatError("missing or non-numeric '" + std::string(key) + "' in " + where);
    return j[key].get<double>();
}

}  // namespace

PlanningMap parse_map(const std::string& content) {
    json doc;
    try {
        doc = json::parse(content);
    } catch (const json::parse_error& e) {
        throw MapFormatError(std::string("malformed map JSON: ") + e.what());
    }
    if (!doc.is_object()) throw MapFormatError("map document must be a JSON object");
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
        throw MapFormatError("missing 'nodes' array");

    std::vector<NodeRecord> nodes;
    for (const auto& jn : doc["nodes"]) {
        NodeRecord n;
        n.id = require_int(jn, "id", "node record");
        const std::string where = "node id=" + std::to_string(n.id);
        n.x = require_number(jn, "x", where);
        n.y = require_number(jn, "y", where);
        n.load = require_int(jn, "load", where);
        if (jn.contains("name")) n.name = jn["name"].get<std::string>();
        // "capacity" on intersection nodes is accepted and ignored.
        nodes.push_back(std::move(n));
    }
    std::vector<StreetRecord> streets;
    if (doc.contains("streets")) {
        if (!doc["streets"].is_array()) throw MapFormatError("'streets' must be an array");
        for (const auto& js : doc["streets"]) {
            StreetRecord s;
            s.id = require_int(js, "id", "street record");
            const std::string where = "street id=" + std::to_string(s.id);
            s.from = require_int(js, "from", where);
            s.to = require_int(js, "to", where);
            s.load = require_int(js, "load", where);
            if (js.contains("name")) s.name = js["name"].get<std::string>();
            streets.push_back(std::move(s));
        }
    }
    const double area = require_number(doc, "area_m2", "map document");
    return PlanningMap(std::move(nodes), std::move(streets), area);
}

PlanningMap load_map_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MapFormatError("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_map(buf.str());
}

std::string emit_map(const PlanningMap& map) {
    json doc = json::object();
    doc["area_m2"] = map.area_m2();
    json nodes = json::array();
    for (const auto& n : map.nodes()) {
        json jn = json::object();
        jn["id"] = n.id;
        jn["x"] = n.x;
        jn["y"] = n.y;
        jn["load"] = n.load;
        if (n.name) jn["name"] = *n.name;
        nodes.push_back(std::move(jn));
    }
    doc["nodes"] = std::move(nodes);
    json streets = json::array();
    for (const auto& s : map.streets()) {
        json js = json::object();
        js["id"] = s.id;
        js["from"] = s.from;
        js["to"] = s.to;
        js["load"] = s.load;
        if (s.name) js["name"] = *s.name;
        streets.push_back(std::move(js));
    }
    doc["streets"] = std::move(streets);
    return doc.dump();
}

}  // namespace cellplan
