#include "cellplan/svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

namespace cellplan {

namespace {

constexpr double canvas = 800.0;
constexpr double margin = 30.0;
constexpr double legend_width = 300.0;

constexpr const char* palette[] = {
	"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
	"#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
};
constexpr std::size_t palette_size = std::size(palette);

std::string hsl_hex(double h, double s, double l)
{
	const double c = (1.0 - std::abs(2.0 * l - 1.0)) * s;
	const double hp = h / 60.0;
	const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
	double r = 0, g = 0, b = 0;
	if (hp < 1) { r = c; g = x; }
	else if (hp < 2) { r = x; g = c; }
	else if (hp < 3) { g = c; b = x; }
	else if (hp < 4) { g = x; b = c; }
	else if (hp < 5) { r = x; b = c; }
	else { r = c; b = x; }
	const double m = l - c / 2.0;
	auto byte = [m](double v) { return static_cast<int>(std::lround((v + m) * 255.0)); };
	return fmt::format("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b));
}

std::string escape(const std::string& text)
{
	std::string out;
	for (char ch : text)
	{
		switch (ch)
		{
		case '&': out += "&amp;"; break;
		case '<': out += "&lt;"; break;
		case '>': out += "&gt;"; break;
		case '"': out += "&quot;"; break;
		default: out += ch;
		}
	}
	return out;
}

struct Frame
{
	double min_x = 0, min_y = 0, scale = 1;

	double sx(double x) const { return margin + (x - min_x) * scale; }
	double sy(double y) const { return canvas - margin - (y - min_y) * scale; }
};

Frame frame_for(const DigitalMap& map)
{
	Frame f;
	if (map.nodes.empty())
		return f;
	double max_x = map.nodes.front().x_m, max_y = map.nodes.front().y_m;
	f.min_x = max_x;
	f.min_y = max_y;
	for (const Node& n : map.nodes)
	{
		f.min_x = std::min(f.min_x, n.x_m);
		f.min_y = std::min(f.min_y, n.y_m);
		max_x = std::max(max_x, n.x_m);
		max_y = std::max(max_y, n.y_m);
	}
	const double span = std::max(max_x - f.min_x, max_y - f.min_y);
	f.scale = span > 0.0 ? (canvas - 2.0 * margin) / span : 1.0;
	return f;
}

} // namespace

std::string cluster_color(std::size_t index)
{
	if (index < palette_size)
		return palette[index];
	const double hue = std::fmod(static_cast<double>(index) * 137.50776405, 360.0);
	const double light = 0.35 + 0.1 * static_cast<double>(index % 3);
	return hsl_hex(hue, 0.65, light);
}

std::string render_svg(const PlanResult& plan, const DigitalMap& map)
{
	const Frame f = frame_for(map);
	const double height = std::max(canvas, 60.0 + 18.0 * static_cast<double>(plan.clusters.size()));

	std::unordered_map<NodeId, std::size_t> node_at;
	for (std::size_t i = 0; i < map.nodes.size(); ++i)
		node_at.emplace(map.nodes[i].id, i);
	double max_load = 0.0;
	for (const Node& n : map.nodes)
		max_load = std::max(max_load, n.subscribers);

	std::string out;
	out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
	out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0f}\" height=\"{:.0f}\" "
		"viewBox=\"0 0 {:.0f} {:.0f}\">\n", canvas + legend_width, height, canvas + legend_width, height);
	out += fmt::format("<title>{}</title>\n", escape(map.name));
	out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"#ffffff\"/>\n",
		canvas + legend_width, height);

	out += "<g id=\"clusters\">\n";
	for (std::size_t ci = 0; ci < plan.clusters.size(); ++ci)
	{
		const ClusterReport& c = plan.clusters[ci];
		const std::string color = cluster_color(ci);
		std::vector<Point> pts;
		for (NodeId id : c.member_ids)
		{
			if (auto it = node_at.find(id); it != node_at.end())
				pts.push_back({map.nodes[it->second].x_m, map.nodes[it->second].y_m});
		}
		const std::vector<Point> hull = convex_hull(std::move(pts));
		std::string coords;
		for (const Point& p : hull)
			coords += fmt::format("{}{:.2f},{:.2f}", coords.empty() ? "" : " ", f.sx(p.x), f.sy(p.y));

		if (hull.size() >= 3)
			out += fmt::format("<polygon class=\"hull\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.25\" "
				"stroke=\"{}\" stroke-width=\"1.5\"/>\n", coords, color, color);
		else if (hull.size() == 2)
			out += fmt::format("<polyline class=\"hull\" points=\"{}\" fill=\"none\" stroke=\"{}\" "
				"stroke-width=\"3\"/>\n", coords, color);
	}
	out += "</g>\n<g id=\"nodes\">\n";

	for (std::size_t ci = 0; ci < plan.clusters.size(); ++ci)
	{
		const std::string color = cluster_color(ci);
		for (NodeId id : plan.clusters[ci].member_ids)
		{
			auto it = node_at.find(id);
			if (it == node_at.end())
				continue;
			const Node& n = map.nodes[it->second];
			const double r = 2.0 + (max_load > 0.0 ? 6.0 * std::sqrt(n.subscribers / max_load) : 0.0);
			out += fmt::format("<circle class=\"node\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"{}\"/>\n",
				f.sx(n.x_m), f.sy(n.y_m), r, color);
		}
	}
	out += "</g>\n<g id=\"medoids\">\n";

	for (std::size_t ci = 0; ci < plan.clusters.size(); ++ci)
	{
		auto it = node_at.find(plan.clusters[ci].medoid_id);
		if (it == node_at.end())
			continue;
		const Node& n = map.nodes[it->second];
		out += fmt::format("<rect class=\"medoid\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"10\" height=\"10\" "
			"fill=\"{}\" stroke=\"#000000\" stroke-width=\"2\"/>\n",
			f.sx(n.x_m) - 5.0, f.sy(n.y_m) - 5.0, cluster_color(ci));
	}
	out += "</g>\n<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";

	const double lx = canvas + 10.0;
	out += fmt::format("<text x=\"{:.0f}\" y=\"24\" font-weight=\"bold\">k = {} ({}, {})</text>\n",
		lx, plan.final_k, to_string(plan.method), plan.feasible ? "feasible" : "infeasible");
	for (std::size_t ci = 0; ci < plan.clusters.size(); ++ci)
	{
		const ClusterReport& c = plan.clusters[ci];
		const double y = 48.0 + 18.0 * static_cast<double>(ci);
		out += fmt::format("<rect x=\"{:.0f}\" y=\"{:.0f}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n",
			lx, y - 10.0, cluster_color(ci));
		out += fmt::format("<text x=\"{:.0f}\" y=\"{:.0f}\">BS {}: coverage {:.3f}, capacity {:.3f}{}</text>\n",
			lx + 16.0, y, c.medoid_id, c.cells_coverage_ratio, c.cells_capacity_ratio, c.satisfied ? "" : " !");
	}
	out += "</g>\n</svg>\n";
	return out;
}

} // namespace cellplan
