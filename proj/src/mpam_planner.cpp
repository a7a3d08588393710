#include "cellplan/mpam_planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

namespace cellplan {

namespace {

using Clock = std::chrono::steady_clock;

struct Cluster
{
	NodeId medoid = 0;
	std::vector<std::size_t> members; // indices into the map's nodes
};

std::vector<Node> gather(const std::vector<Node>& nodes, const std::vector<std::size_t>& members)
{
	std::vector<Node> out;
	out.reserve(members.size());
	for (std::size_t i : members)
		out.push_back(nodes[i]);
	return out;
}

std::vector<Cluster> clusters_from(const Clustering& c, const std::unordered_map<NodeId, std::size_t>& index)
{
	std::vector<Cluster> out;
	std::unordered_map<NodeId, std::size_t> slot;
	for (NodeId m : c.medoid_ids)
	{
		slot.emplace(m, out.size());
		out.push_back({m, {}});
	}
	for (const auto& [node, medoid] : c.assignment)
		out[slot.at(medoid)].members.push_back(index.at(node));
	for (Cluster& cl : out)
		std::sort(cl.members.begin(), cl.members.end());
	return out;
}

IterationSnapshot snapshot(const std::vector<Cluster>& clusters, const std::vector<Node>& nodes,
	const CoverageResult& coverage, const CapacityResult& capacity)
{
	IterationSnapshot s;
	s.k = static_cast<int>(clusters.size());
	for (const Cluster& cl : clusters)
	{
		ClusterReport r = check_cluster(gather(nodes, cl.members), cl.medoid, coverage, capacity);
		s.violating += r.satisfied ? 0 : 1;
		s.clusters.push_back(std::move(r));
	}
	std::sort(s.clusters.begin(), s.clusters.end(),
		[](const ClusterReport& a, const ClusterReport& b) { return a.medoid_id < b.medoid_id; });
	for (const ClusterReport& r : s.clusters)
		s.total_cost_m += r.cost_m;
	return s;
}

std::unordered_map<NodeId, std::size_t> node_index(std::span<const Node> nodes)
{
	std::unordered_map<NodeId, std::size_t> index;
	for (std::size_t i = 0; i < nodes.size(); ++i)
		index.emplace(nodes[i].id, i);
	return index;
}

PlanResult start(const PlanningContext& ctx, Method method, int& k)
{
	ctx.validate();
	PlanResult r;
	r.method = method;
	r.warnings = ctx.coverage.warnings;
	InitialK init = initial_k(ctx.map, ctx.coverage, ctx.capacity);
	if (init.warning)
		r.warnings.push_back(*init.warning);
	k = std::min(init.k, ctx.cluster_cap());
	r.initial_k = k;
	return r;
}

void finish(PlanResult& r, Clock::time_point t0)
{
	const IterationSnapshot& last = r.iterations.back();
	r.clusters = last.clusters;
	r.final_k = last.k;
	r.feasible = last.violating == 0;
	r.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

} // namespace

std::string to_string(Method method)
{
	return method == Method::method1 ? "method1" : "method2";
}

std::optional<Method> parse_method(std::string_view text)
{
	if (text == "1" || text == "method1")
		return Method::method1;
	if (text == "2" || text == "method2")
		return Method::method2;
	return std::nullopt;
}

int PlanningContext::cluster_cap() const
{
	return max_total_clusters.value_or(static_cast<int>(map.nodes.size()));
}

void PlanningContext::validate() const
{
	if (map.nodes.empty())
		throw std::invalid_argument("planning context: map has no nodes");
	const int cap = cluster_cap();
	if (cap < 1 || static_cast<std::size_t>(cap) > map.nodes.size())
		throw std::invalid_argument("planning context: max_total_clusters must be in [1, node count]");
	if (!(coverage.cell_area_m2 > 0.0))
		throw std::invalid_argument("planning context: cell area must be positive");
	if (!(capacity.subscribers_per_cell > 0.0))
		throw std::invalid_argument("planning context: subscribers per cell must be positive");
	pam_cfg.validate();
}

InitialK initial_k(const DigitalMap& map, const CoverageResult& coverage, const CapacityResult& capacity)
{
	InitialK r;
	r.coverage_cells = cells_by_coverage(map_area(map), coverage.cell_area_m2);
	r.capacity_cells = cells_by_capacity(total_subscribers(map.nodes), capacity.subscribers_per_cell);
	const double wanted = std::max({1.0, std::ceil(r.coverage_cells), std::ceil(r.capacity_cells)});
	const double n = static_cast<double>(map.nodes.size());
	if (wanted > n)
	{
		r.capped = true;
		r.k = static_cast<int>(map.nodes.size());
		r.warning = "initial k " + std::to_string(static_cast<long long>(wanted))
			+ " capped at the node count " + std::to_string(map.nodes.size());
	}
	else
	{
		r.k = static_cast<int>(wanted);
	}
	return r;
}

ClusterReport check_cluster(std::span<const Node> members, NodeId medoid_id,
	const CoverageResult& coverage, const CapacityResult& capacity)
{
	ClusterReport r;
	r.medoid_id = medoid_id;
	const Node* medoid = nullptr;
	for (const Node& n : members)
	{
		r.member_ids.push_back(n.id);
		if (n.id == medoid_id)
			medoid = &n;
	}
	std::sort(r.member_ids.begin(), r.member_ids.end());
	if (medoid)
	{
		for (const Node& n : members)
			r.cost_m += distance(n, *medoid);
	}
	r.hull_area_m2 = region_area(members);
	r.subscribers = total_subscribers(members);
	r.cells_coverage_ratio = cells_by_coverage(r.hull_area_m2, coverage.cell_area_m2);
	r.cells_capacity_ratio = cells_by_capacity(r.subscribers, capacity.subscribers_per_cell);
	r.satisfied = r.cells_coverage_ratio <= 1.0 && r.cells_capacity_ratio <= 1.0;
	return r;
}

PlanResult plan_method1(const PlanningContext& ctx)
{
	const auto t0 = Clock::now();
	int k = 0;
	PlanResult r = start(ctx, Method::method1, k);
	const auto index = node_index(ctx.map.nodes);
	const int cap = ctx.cluster_cap();

	for (;;)
	{
		PamResult pr = pam(ctx.map.nodes, k, ctx.pam_cfg);
		r.iterations.push_back(snapshot(clusters_from(pr.clustering, index), ctx.map.nodes,
			ctx.coverage, ctx.capacity));
		const int violating = r.iterations.back().violating;
		if (violating == 0)
			break;
		if (k + 1 > cap)
		{
			r.diagnostics.push_back("cluster cap " + std::to_string(cap) + " reached with "
				+ std::to_string(violating) + " violating cluster(s)");
			break;
		}
		++k;
	}
	finish(r, t0);
	return r;
}

PlanResult plan_method2(const PlanningContext& ctx)
{
	const auto t0 = Clock::now();
	int k = 0;
	PlanResult r = start(ctx, Method::method2, k);
	const auto index = node_index(ctx.map.nodes);
	const int cap = ctx.cluster_cap();
	const std::vector<Node>& nodes = ctx.map.nodes;

	std::vector<Cluster> clusters = clusters_from(pam(nodes, k, ctx.pam_cfg).clustering, index);
	for (;;)
	{
		IterationSnapshot snap = snapshot(clusters, nodes, ctx.coverage, ctx.capacity);
		const bool done = snap.violating == 0;
		r.iterations.push_back(std::move(snap));
		if (done)
			break;

		std::vector<Cluster> next;
		int total = static_cast<int>(clusters.size());
		bool split_any = false;
		bool cap_hit = false;
		for (Cluster& cl : clusters)
		{
			std::vector<Node> members = gather(nodes, cl.members);
			const ClusterReport rep = check_cluster(members, cl.medoid, ctx.coverage, ctx.capacity);
			if (rep.satisfied)
			{
				next.push_back(std::move(cl));
				continue;
			}
			if (members.size() < 2)
			{
				r.diagnostics.push_back("cluster " + std::to_string(cl.medoid)
					+ " is a single node that exceeds one cell and cannot be split");
				next.push_back(std::move(cl));
				continue;
			}

			int sub_k = 2;
			if (ctx.split_by_ratio)
			{
				const double need = std::ceil(std::max(rep.cells_coverage_ratio, rep.cells_capacity_ratio));
				sub_k = static_cast<int>(std::clamp(need, 2.0, static_cast<double>(members.size())));
			}
			sub_k = std::min(sub_k, cap - total + 1);
			if (sub_k < 2)
			{
				cap_hit = true;
				next.push_back(std::move(cl));
				continue;
			}

			PamResult sub = pam(members, sub_k, ctx.pam_cfg);
			for (Cluster& part : clusters_from(sub.clustering, node_index(members)))
			{
				for (std::size_t& m : part.members)
					m = cl.members[m];
				next.push_back(std::move(part));
			}
			total += sub_k - 1;
			split_any = true;
		}
		clusters = std::move(next);

		if (!split_any)
		{
			if (cap_hit)
				r.diagnostics.push_back("cluster cap " + std::to_string(cap) + " reached with "
					+ std::to_string(r.iterations.back().violating) + " violating cluster(s)");
			break;
		}
	}

	// The loop exits either on a satisfied snapshot or after a pass that
	// changed nothing, so the last snapshot describes `clusters`.
	finish(r, t0);
	return r;
}

PlanResult plan(const PlanningContext& ctx)
{
	return ctx.method == Method::method1 ? plan_method1(ctx) : plan_method2(ctx);
}

} // namespace cellplan
