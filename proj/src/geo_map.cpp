#include "cellplan/geo_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace cellplan {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where)
{
	for (const auto& [key, value] : obj.items())
	{
		if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
			throw MapError(where + ": unknown key \"" + key + "\"");
	}
}

const json& require(const json& obj, const char* key, const std::string& where)
{
	auto it = obj.find(key);
	if (it == obj.end())
		throw MapError(where + ": missing \"" + key + "\"");
	return *it;
}

double number_field(const json& obj, const char* key, const std::string& where)
{
	const json& v = require(obj, key, where);
	if (!v.is_number())
		throw MapError(where + ": \"" + key + "\" must be a number");
	double d = v.get<double>();
	if (!std::isfinite(d))
		throw MapError(where + ": \"" + key + "\" must be finite");
	return d;
}

std::int64_t integer_field(const json& obj, const char* key, const std::string& where)
{
	const json& v = require(obj, key, where);
	if (!v.is_number_integer())
		throw MapError(where + ": \"" + key + "\" must be an integer");
	return v.get<std::int64_t>();
}

std::string string_field(const json& obj, const char* key, const std::string& where)
{
	const json& v = require(obj, key, where);
	if (!v.is_string())
		throw MapError(where + ": \"" + key + "\" must be a string");
	return v.get<std::string>();
}

DigitalMap map_from_json(const json& doc)
{
	if (!doc.is_object())
		throw MapError("map: top level must be an object");
	reject_unknown_keys(doc, {"name", "declared_area_m2", "nodes", "streets"}, "map");

	DigitalMap map;
	map.name = string_field(doc, "name", "map");
	if (doc.contains("declared_area_m2"))
	{
		double area = number_field(doc, "declared_area_m2", "map");
		if (area <= 0.0)
			throw MapError("map: declared_area_m2 must be positive");
		map.declared_area_m2 = area;
	}

	const json& nodes = require(doc, "nodes", "map");
	if (!nodes.is_array() || nodes.empty())
		throw MapError("map: \"nodes\" must be a non-empty array");

	std::unordered_map<NodeId, std::size_t> index;
	for (std::size_t i = 0; i < nodes.size(); ++i)
	{
		const json& jn = nodes[i];
		std::string where = "node[" + std::to_string(i) + "]";
		if (!jn.is_object())
			throw MapError(where + ": must be an object");
		reject_unknown_keys(jn, {"id", "name", "x_m", "y_m", "subscribers"}, where);

		Node n;
		n.id = integer_field(jn, "id", where);
		where = "node " + std::to_string(n.id);
		if (n.id <= 0)
			throw MapError(where + ": id must be positive");
		n.name = string_field(jn, "name", where);
		n.x_m = number_field(jn, "x_m", where);
		n.y_m = number_field(jn, "y_m", where);
		n.subscribers = number_field(jn, "subscribers", where);
		if (n.subscribers < 0.0)
			throw MapError(where + ": negative subscribers");
		if (!index.emplace(n.id, map.nodes.size()).second)
			throw MapError("duplicate node id " + std::to_string(n.id));
		map.nodes.push_back(std::move(n));
	}

	if (auto it = doc.find("streets"); it != doc.end())
	{
		if (!it->is_array())
			throw MapError("map: \"streets\" must be an array");
		for (std::size_t i = 0; i < it->size(); ++i)
		{
			const json& js = (*it)[i];
			std::string where = "street[" + std::to_string(i) + "]";
			if (!js.is_object())
				throw MapError(where + ": must be an object");
			reject_unknown_keys(js, {"id", "name", "from", "to", "load"}, where);

			Street s;
			s.id = integer_field(js, "id", where);
			where = "street " + std::to_string(s.id);
			if (s.id <= 0)
				throw MapError(where + ": id must be positive");
			s.name = string_field(js, "name", where);
			s.from_node = integer_field(js, "from", where);
			s.to_node = integer_field(js, "to", where);
			s.load = number_field(js, "load", where);
			if (s.load < 0.0)
				throw MapError(where + ": negative load");
			auto from = index.find(s.from_node);
			if (from == index.end())
				throw MapError(where + ": unknown endpoint " + std::to_string(s.from_node));
			auto to = index.find(s.to_node);
			if (to == index.end())
				throw MapError(where + ": unknown endpoint " + std::to_string(s.to_node));
			if (s.from_node == s.to_node)
				throw MapError(where + ": self-loop on node " + std::to_string(s.from_node));

			map.nodes[from->second].subscribers += 0.5 * s.load;
			map.nodes[to->second].subscribers += 0.5 * s.load;
			map.streets.push_back(std::move(s));
		}
	}
	return map;
}

double cross(const Point& o, const Point& a, const Point& b)
{
	return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

} // namespace

std::optional<std::size_t> DigitalMap::index_of(NodeId id) const
{
	for (std::size_t i = 0; i < nodes.size(); ++i)
	{
		if (nodes[i].id == id)
			return i;
	}
	return std::nullopt;
}

DigitalMap load_map(std::istream& source)
{
	json doc;
	try
	{
		doc = json::parse(source);
	}
	catch (const json::parse_error& e)
	{
		throw MapError(std::string("map: parse error: ") + e.what());
	}
	return map_from_json(doc);
}

DigitalMap load_map_string(std::string_view text)
{
	std::istringstream in{std::string(text)};
	return load_map(in);
}

DigitalMap load_map_file(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw MapError("map: cannot open " + path);
	return load_map(in);
}

std::string map_to_json(const DigitalMap& map, bool include_streets)
{
	nlohmann::ordered_json doc = nlohmann::ordered_json::object();
	doc["name"] = map.name;
	if (map.declared_area_m2)
		doc["declared_area_m2"] = *map.declared_area_m2;
	nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
	for (const Node& n : map.nodes)
		nodes.push_back({{"id", n.id}, {"name", n.name}, {"x_m", n.x_m}, {"y_m", n.y_m}, {"subscribers", n.subscribers}});
	doc["nodes"] = std::move(nodes);
	if (include_streets)
	{
		nlohmann::ordered_json streets = nlohmann::ordered_json::array();
		for (const Street& s : map.streets)
			streets.push_back({{"id", s.id}, {"name", s.name}, {"from", s.from_node}, {"to", s.to_node}, {"load", s.load}});
		doc["streets"] = std::move(streets);
	}
	return doc.dump(2) + "\n";
}

double distance(const Node& a, const Node& b)
{
	return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

std::vector<Point> convex_hull(std::vector<Point> pts)
{
	std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
		return a.x < b.x || (a.x == b.x && a.y < b.y);
	});
	pts.erase(std::unique(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
		return a.x == b.x && a.y == b.y;
	}), pts.end());
	if (pts.size() < 3)
		return pts;

	std::vector<Point> hull(2 * pts.size());
	std::size_t k = 0;
	for (const Point& p : pts)
	{
		while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0)
			--k;
		hull[k++] = p;
	}
	for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;)
	{
		while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0)
			--k;
		hull[k++] = pts[i];
	}
	hull.resize(k - 1);
	return hull;
}

double region_area(std::span<const Node> nodes)
{
	std::vector<Point> pts;
	pts.reserve(nodes.size());
	for (const Node& n : nodes)
		pts.push_back({n.x_m, n.y_m});
	std::vector<Point> hull = convex_hull(std::move(pts));
	if (hull.size() < 3)
		return 0.0;

	// Shoelace relative to the first vertex keeps large offsets exact-ish.
	const Point& origin = hull.front();
	double twice = 0.0;
	for (std::size_t i = 1; i + 1 < hull.size(); ++i)
		twice += cross(origin, hull[i], hull[i + 1]);
	return 0.5 * std::abs(twice);
}

double total_subscribers(std::span<const Node> nodes)
{
	return std::accumulate(nodes.begin(), nodes.end(), 0.0,
		[](double acc, const Node& n) { return acc + n.subscribers; });
}

double map_area(const DigitalMap& map)
{
	if (map.declared_area_m2)
		return *map.declared_area_m2;
	return region_area(map.nodes);
}

} // namespace cellplan
