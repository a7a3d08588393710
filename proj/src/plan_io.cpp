#include "cellplan/plan_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cellplan {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

bool close(double a, double b, double rel_tol)
{
	return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

template <typename T>
T field(const json& obj, const char* key)
{
	auto it = obj.find(key);
	if (it == obj.end())
		throw PlanFormatError(std::string("plan: missing \"") + key + "\"");
	try
	{
		return it->get<T>();
	}
	catch (const json::exception&)
	{
		throw PlanFormatError(std::string("plan: bad value for \"") + key + "\"");
	}
}

} // namespace

std::string plan_to_json(const PlanDocument& doc, const DigitalMap& map)
{
	const PlanResult& r = doc.result;
	ordered_json j = ordered_json::object();
	j["map"] = doc.map_name;
	j["method"] = to_string(r.method);
	j["feasible"] = r.feasible;
	j["initial_k"] = r.initial_k;
	j["final_k"] = r.final_k;
	j["elapsed_ms"] = r.elapsed_ms;

	j["coverage"] = {
		{"eirp_dbm", doc.coverage.eirp_dbm},
		{"total_margin_db", doc.coverage.total_margin_db},
		{"max_path_loss_db", doc.coverage.max_path_loss_db},
		{"cell_range_km", doc.coverage.cell_range_km},
		{"cell_area_m2", doc.coverage.cell_area_m2},
		{"geometry", to_string(doc.coverage.geometry)},
		{"range_overridden", doc.coverage.range_overridden},
	};
	j["capacity"] = {
		{"traffic_per_subscriber_e", doc.capacity.traffic_per_subscriber_e},
		{"frequencies_per_cell", doc.capacity.frequencies_per_cell},
		{"traffic_channels_per_cell", doc.capacity.traffic_channels_per_cell},
		{"traffic_per_cell_e", doc.capacity.traffic_per_cell_e},
		{"subscribers_per_cell", doc.capacity.subscribers_per_cell},
	};

	ordered_json clusters = ordered_json::array();
	for (const ClusterReport& c : r.clusters)
	{
		ordered_json jc = {
			{"medoid_id", c.medoid_id},
			{"member_ids", c.member_ids},
			{"hull_area_m2", c.hull_area_m2},
			{"subscribers", c.subscribers},
			{"cells_coverage_ratio", c.cells_coverage_ratio},
			{"cells_capacity_ratio", c.cells_capacity_ratio},
			{"satisfied", c.satisfied},
			{"cost_m", c.cost_m},
		};
		if (auto i = map.index_of(c.medoid_id))
		{
			jc["x_m"] = map.nodes[*i].x_m;
			jc["y_m"] = map.nodes[*i].y_m;
		}
		clusters.push_back(std::move(jc));
	}
	j["clusters"] = std::move(clusters);

	ordered_json iterations = ordered_json::array();
	for (const IterationSnapshot& s : r.iterations)
		iterations.push_back({{"k", s.k}, {"violating", s.violating}, {"total_cost_m", s.total_cost_m}});
	j["iterations"] = std::move(iterations);
	j["warnings"] = r.warnings;
	j["diagnostics"] = r.diagnostics;
	return j.dump(2) + "\n";
}

PlanDocument plan_from_json(std::string_view text)
{
	json j;
	try
	{
		j = json::parse(text);
	}
	catch (const json::parse_error& e)
	{
		throw PlanFormatError(std::string("plan: parse error: ") + e.what());
	}
	if (!j.is_object())
		throw PlanFormatError("plan: top level must be an object");

	PlanDocument doc;
	doc.map_name = field<std::string>(j, "map");
	PlanResult& r = doc.result;
	auto method = parse_method(field<std::string>(j, "method"));
	if (!method)
		throw PlanFormatError("plan: unknown method");
	r.method = *method;
	r.feasible = field<bool>(j, "feasible");
	r.initial_k = field<int>(j, "initial_k");
	r.final_k = field<int>(j, "final_k");
	r.elapsed_ms = field<double>(j, "elapsed_ms");

	const json cov = field<json>(j, "coverage");
	doc.coverage.eirp_dbm = field<double>(cov, "eirp_dbm");
	doc.coverage.total_margin_db = field<double>(cov, "total_margin_db");
	doc.coverage.max_path_loss_db = field<double>(cov, "max_path_loss_db");
	doc.coverage.cell_range_km = field<double>(cov, "cell_range_km");
	doc.coverage.cell_area_m2 = field<double>(cov, "cell_area_m2");
	doc.coverage.range_overridden = field<bool>(cov, "range_overridden");
	auto geometry = parse_geometry(field<std::string>(cov, "geometry"));
	if (!geometry)
		throw PlanFormatError("plan: unknown geometry");
	doc.coverage.geometry = *geometry;

	const json cap = field<json>(j, "capacity");
	doc.capacity.traffic_per_subscriber_e = field<double>(cap, "traffic_per_subscriber_e");
	doc.capacity.frequencies_per_cell = field<int>(cap, "frequencies_per_cell");
	doc.capacity.traffic_channels_per_cell = field<int>(cap, "traffic_channels_per_cell");
	doc.capacity.traffic_per_cell_e = field<double>(cap, "traffic_per_cell_e");
	doc.capacity.subscribers_per_cell = field<double>(cap, "subscribers_per_cell");

	for (const json& jc : field<json>(j, "clusters"))
	{
		ClusterReport c;
		c.medoid_id = field<NodeId>(jc, "medoid_id");
		c.member_ids = field<std::vector<NodeId>>(jc, "member_ids");
		c.hull_area_m2 = field<double>(jc, "hull_area_m2");
		c.subscribers = field<double>(jc, "subscribers");
		c.cells_coverage_ratio = field<double>(jc, "cells_coverage_ratio");
		c.cells_capacity_ratio = field<double>(jc, "cells_capacity_ratio");
		c.satisfied = field<bool>(jc, "satisfied");
		c.cost_m = field<double>(jc, "cost_m");
		r.clusters.push_back(std::move(c));
	}
	for (const json& js : field<json>(j, "iterations"))
	{
		IterationSnapshot s;
		s.k = field<int>(js, "k");
		s.violating = field<int>(js, "violating");
		s.total_cost_m = field<double>(js, "total_cost_m");
		r.iterations.push_back(std::move(s));
	}
	r.warnings = field<std::vector<std::string>>(j, "warnings");
	r.diagnostics = field<std::vector<std::string>>(j, "diagnostics");
	return doc;
}

PlanDocument load_plan_file(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw PlanFormatError("plan: cannot open " + path);
	std::stringstream buf;
	buf << in.rdbuf();
	return plan_from_json(buf.str());
}

std::vector<std::string> validate_plan(const PlanDocument& doc, const DigitalMap& map, double rel_tol)
{
	std::vector<std::string> problems;
	const PlanResult& r = doc.result;

	if (r.final_k != static_cast<int>(r.clusters.size()))
		problems.push_back("final_k " + std::to_string(r.final_k) + " != cluster count "
			+ std::to_string(r.clusters.size()));

	std::map<NodeId, int> seen;
	for (const Node& n : map.nodes)
		seen.emplace(n.id, 0);

	bool all_satisfied = true;
	for (const ClusterReport& c : r.clusters)
	{
		const std::string tag = "cluster " + std::to_string(c.medoid_id);
		std::vector<Node> members;
		for (NodeId id : c.member_ids)
		{
			auto it = seen.find(id);
			if (it == seen.end())
			{
				problems.push_back(tag + ": unknown node " + std::to_string(id));
				continue;
			}
			++it->second;
			members.push_back(map.nodes[*map.index_of(id)]);
		}
		if (std::find(c.member_ids.begin(), c.member_ids.end(), c.medoid_id) == c.member_ids.end())
			problems.push_back(tag + ": medoid is not a member");
		if (members.empty())
		{
			problems.push_back(tag + ": no members");
			continue;
		}

		const ClusterReport again = check_cluster(members, c.medoid_id, doc.coverage, doc.capacity);
		if (!close(again.hull_area_m2, c.hull_area_m2, rel_tol))
			problems.push_back(tag + ": hull area mismatch");
		if (!close(again.subscribers, c.subscribers, rel_tol))
			problems.push_back(tag + ": subscriber mismatch");
		if (!close(again.cells_coverage_ratio, c.cells_coverage_ratio, rel_tol))
			problems.push_back(tag + ": coverage ratio mismatch");
		if (!close(again.cells_capacity_ratio, c.cells_capacity_ratio, rel_tol))
			problems.push_back(tag + ": capacity ratio mismatch");
		if (again.satisfied != c.satisfied)
			problems.push_back(tag + ": satisfied flag mismatch");
		all_satisfied = all_satisfied && again.satisfied;
	}

	for (const auto& [id, count] : seen)
	{
		if (count != 1)
			problems.push_back("node " + std::to_string(id) + " appears in " + std::to_string(count) + " clusters");
	}
	if (r.feasible && !all_satisfied)
		problems.push_back("plan marked feasible with a violated cluster");
	return problems;
}

} // namespace cellplan
