#include "cellplan/compare.hpp"

#include <algorithm>
#include <chrono>
#include <future>

#include <fmt/format.h>

#include "cellplan/mpam_planner.hpp"

namespace cellplan {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v)
{
	std::sort(v.begin(), v.end());
	const std::size_t n = v.size();
	return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <typename F>
auto timed(int repeat, F&& f, double& ms)
{
	std::vector<double> times;
	auto t0 = Clock::now();
	auto first = f();
	times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
	for (int i = 1; i < repeat; ++i)
	{
		t0 = Clock::now();
		(void)f();
		times.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
	}
	ms = median(std::move(times));
	return first;
}

ComparisonRow compare_one(const DigitalMap& map, double range_km, const RunConfig& cfg, const CompareOptions& opts)
{
	ComparisonRow row;
	row.dataset = map.name;
	row.nodes = map.nodes.size();
	row.subscribers = total_subscribers(map.nodes);
	row.cell_range_km = range_km;
	try
	{
		PlanningContext ctx;
		ctx.map = map;
		ctx.coverage = coverage_for(cfg.radio, range_km);
		ctx.capacity = capacity_plan(cfg.traffic);
		ctx.pam_cfg = cfg.pam;
		ctx.max_total_clusters = cfg.planner.max_total_clusters;
		ctx.split_by_ratio = cfg.planner.split_by_ratio;
		if (ctx.max_total_clusters)
			ctx.max_total_clusters = std::min<int>(*ctx.max_total_clusters, static_cast<int>(map.nodes.size()));

		const int repeat = std::max(1, opts.repeat);
		const PlanResult m1 = timed(repeat, [&] { return plan_method1(ctx); }, row.method1_ms);
		const PlanResult m2 = timed(repeat, [&] { return plan_method2(ctx); }, row.method2_ms);
		row.method1_bs = m1.final_k;
		row.method2_bs = m2.final_k;

		int k = opts.baseline_k.value_or(initial_k(map, ctx.coverage, ctx.capacity).k);
		k = std::clamp(k, 1, static_cast<int>(map.nodes.size()));
		const PamResult base = timed(repeat, [&] { return pam(map.nodes, k, ctx.pam_cfg); }, row.pam_ms);
		row.pam_bs = static_cast<int>(base.clustering.medoid_ids.size());
		row.status = m1.feasible && m2.feasible ? "ok" : "infeasible";
	}
	catch (const std::exception& e)
	{
		row.status = std::string("error: ") + e.what();
	}
	return row;
}

std::string csv_field(const std::string& s)
{
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string out = "\"";
	for (char ch : s)
	{
		if (ch == '"')
			out += '"';
		out += ch;
	}
	return out + "\"";
}

} // namespace

std::vector<ComparisonRow> run_comparison(const std::vector<DigitalMap>& maps, const RunConfig& cfg,
	const CompareOptions& opts)
{
	std::vector<ComparisonRow> rows;
	if (!opts.parallel)
	{
		for (const DigitalMap& map : maps)
			for (double range : opts.cell_ranges_km)
				rows.push_back(compare_one(map, range, cfg, opts));
		return rows;
	}

	std::vector<std::future<ComparisonRow>> pending;
	for (const DigitalMap& map : maps)
		for (double range : opts.cell_ranges_km)
			pending.push_back(std::async(std::launch::async, compare_one, std::cref(map), range, std::cref(cfg),
				std::cref(opts)));
	for (auto& f : pending)
		rows.push_back(f.get());
	return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows)
{
	std::string out = std::string(comparison_csv_header) + "\n";
	for (const ComparisonRow& r : rows)
	{
		out += fmt::format("{},{},{},{},{},{},{},{:.3f},{:.3f},{:.3f},{}\n", csv_field(r.dataset), r.nodes,
			r.subscribers, r.cell_range_km, r.method1_bs, r.method2_bs, r.pam_bs, r.method1_ms, r.method2_ms,
			r.pam_ms, csv_field(r.status));
	}
	return out;
}

} // namespace cellplan
