#ifndef CELLPLAN_GEO_MAP_HPP
#define CELLPLAN_GEO_MAP_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cellplan {

using NodeId = std::int64_t;

/// Intersection node of the digital map. `subscribers` is the effective
/// load after street loads have been distributed onto the endpoints.
struct Node
{
	NodeId id = 0;
	std::string name;
	double x_m = 0.0;
	double y_m = 0.0;
	double subscribers = 0.0;

	bool operator==(const Node&) const = default;
};

struct Street
{
	std::int64_t id = 0;
	std::string name;
	NodeId from_node = 0;
	NodeId to_node = 0;
	double load = 0.0;

	bool operator==(const Street&) const = default;
};

struct DigitalMap
{
	std::string name;
	std::optional<double> declared_area_m2;
	std::vector<Node> nodes;
	std::vector<Street> streets;

	/// Index of the node with the given id, or nullopt.
	std::optional<std::size_t> index_of(NodeId id) const;
};

/// Raised for malformed or inconsistent map documents. The message names
/// the offending element.
class MapError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/**
 * Parse a map JSON document.
 *
 * Street loads are split half to each endpoint and added to the node
 * subscriber counts; the returned streets keep their raw loads. Unknown
 * keys, duplicate node ids, unknown street endpoints, self-loops and
 * negative loads raise MapError.
 */
DigitalMap load_map(std::istream& source);
DigitalMap load_map_string(std::string_view text);
DigitalMap load_map_file(const std::string& path);

/// Serialize a map. Node subscriber counts are written as stored; streets
/// are omitted by default since their loads are already folded into the
/// nodes of a loaded map.
std::string map_to_json(const DigitalMap& map, bool include_streets = false);

double distance(const Node& a, const Node& b);

/// Area of the convex hull of the node coordinates (shoelace formula).
/// Zero when fewer than three non-collinear points are given.
double region_area(std::span<const Node> nodes);

double total_subscribers(std::span<const Node> nodes);

/// Declared area when present, otherwise the hull area of all nodes.
double map_area(const DigitalMap& map);

struct Point
{
	double x = 0.0;
	double y = 0.0;
};

/// Convex hull in counter-clockwise order without collinear points
/// (Andrew's monotone chain). Returns fewer than three points when the
/// input is degenerate.
std::vector<Point> convex_hull(std::vector<Point> points);

} // namespace cellplan

#endif
