#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellplan {

// Raised on malformed or inconsistent map input; message names the record id.
class MapFormatError : public std::runtime_error {
public:
    explicit MapFormatError(const std::string& what) : std::runtime_error(what) {}
};

struct NodeRecord {
    std::int64_t id = 0;
    double x = 0.0;  // map-local Cartesian meters
    double y = 0.0;
    std::int64_t load = 0;  // subscribers
    std::optional<std::string> name;
};

struct StreetRecord {
    std::int64_t id = 0;
    std::int64_t from = 0;
    std::int64_t to = 0;
    std::int64_t load = 0;
    std::optional<std::string> name;
};

// Immutable after construction. Nodes are kept sorted by id, so vector index
// order is id order everywhere downstream.
class PlanningMap {
public:
    PlanningMap(std::vector<NodeRecord> nodes, std::vector<StreetRecord> streets,
                double area_m2);

    const std::vector<NodeRecord>& nodes() const { return nodes_; }
    const std::vector<StreetRecord>& streets() const { return streets_; }
    double area_m2() const { return area_m2_; }

    // Node's own load plus its share of incident street loads, indexed like nodes().
    const std::vector<std::int64_t>& effective_load() const { return effective_load_; }

    std::size_t node_count() const { return nodes_.size(); }
    // Index into nodes() for a node id; throws MapFormatError if unknown.
    std::size_t index_of(std::int64_t node_id) const;

private:
    std::vector<NodeRecord> nodes_;
    std::vector<StreetRecord> streets_;
    double area_m2_;
    std::vector<std::int64_t> effective_load_;
};

// Each street's load is split equally between its endpoints; an odd remainder
// goes to the lower node id. Node's own load is always included.
std::vector<std::int64_t> distribute_street_loads(const std::vector<NodeRecord>& nodes,
                                                  const std::vector<StreetRecord>& streets);

std::int64_t total_load(const PlanningMap& map);

// Map interchange format: UTF-8 JSON, keys area_m2 / nodes / streets.
PlanningMap parse_map(const std::string& content);
PlanningMap load_map_file(const std::string& path);

// Canonical emission: keys sorted, arrays sorted by id, stable byte output.
std::string emit_map(const PlanningMap& map);

}  // namespace cellplan
