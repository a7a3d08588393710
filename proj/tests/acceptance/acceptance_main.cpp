// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <json.hpp>

#include "cellplan/cli.hpp"
#include "cellplan/map_gen.hpp"
#include "cellplan/mpam_planner.hpp"
#include "cellplan/pam.hpp"
#include "cellplan/plan_io.hpp"
#include "cellplan/radio_coverage.hpp"
#include "cellplan/traffic_capacity.hpp"
#include "oracles.hpp"

using namespace cellplan;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
	bool pass = true;
	std::string detail;

	void fail(const std::string& why)
	{
		if (pass)
			detail = why;
		pass = false;
	}
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
	return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const fs::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::stringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

int invoke(const std::vector<std::string>& args, std::string* err_text = nullptr)
{
	std::ostringstream out, err;
	const int code = cli::run(args, out, err);
	if (err_text)
		*err_text = err.str();
	return code;
}

double rel_err(double a, double b)
{
	return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

PlanningContext context(const DigitalMap& map, double range_km, Method method)
{
	PlanningContext ctx;
	ctx.map = map;
	ctx.coverage = coverage_for_range(range_km, CellGeometry::circle);
	ctx.capacity = capacity_plan(TrafficModel{});
	ctx.method = method;
	return ctx;
}

double median(std::vector<int> v)
{
	std::sort(v.begin(), v.end());
	const std::size_t n = v.size();
	return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Shape
{
	int nodes;
	double area_m2;
	std::int64_t subscribers;
};

const Shape shapes[] = {{50, 230850, 3139}, {70, 335478, 3500}, {101, 337800, 4000}, {150, 345663, 4488},
	{300, 394284, 10159}};

Outcome erlang(double& elapsed)
{
	const auto t0 = Clock::now();
	Outcome o;
	double worst = 0.0;
	for (int m = 1; m <= 30; ++m)
		for (double a = 0.01; a <= 50.0; a += 0.37)
		{
			const double direct = static_cast<double>(oracle::erlang_b_direct(a, m));
			worst = std::max(worst, rel_err(erlang_b(a, m), direct));
		}
	if (worst > 1e-12)
		o.fail(fmt::format("recursion vs direct rel err {:.3g}", worst));

	double worst_inv = 0.0;
	for (int m = 1; m <= 60; ++m)
		for (double g : {0.005, 0.01, 0.02, 0.05})
			worst_inv = std::max(worst_inv, std::abs(erlang_b(erlang_b_inverse(m, g), m) - g));
	if (worst_inv > 1e-9)
		o.fail(fmt::format("inverse round trip err {:.3g}", worst_inv));

	double worst_closed = 0.0;
	for (double g : {0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.3})
	{
		const double one = g / (1.0 - g);
		const double two = (g + std::sqrt(g * g + 2.0 * g * (1.0 - g))) / (1.0 - g);
		worst_closed = std::max(worst_closed, std::abs(erlang_b_inverse(1, g) - one));
		worst_closed = std::max(worst_closed, std::abs(erlang_b_inverse(2, g) - two));
	}
	if (worst_closed > 1e-9)
		o.fail(fmt::format("closed form err {:.3g}", worst_closed));

	elapsed = seconds_since(t0);
	if (elapsed >= 1.0)
		o.fail("too slow");
	if (o.pass)
		o.detail = fmt::format("direct {:.2g}, inverse {:.2g}, closed form {:.2g}", worst, worst_inv, worst_closed);
	return o;
}

Outcome hata(double& elapsed)
{
	const auto t0 = Clock::now();
	Outcome o;
	std::mt19937_64 rng(2024);
	std::uniform_real_distribution<double> loss(40.0, 180.0);
	double worst = 0.0;
	for (Band band : {Band::gsm900, Band::gsm1800})
	{
		const HataParams h = hata_params_for(band);
		for (int i = 0; i < 1000; ++i)
		{
			const double l = loss(rng);
			worst = std::max(worst, std::abs(hata_path_loss(h, hata_max_range(h, l).range_km) - l));
		}
	}
	if (worst > 1e-9)
		o.fail(fmt::format("round trip err {:.3g} dB", worst));
	elapsed = seconds_since(t0);
	if (elapsed >= 1.0)
		o.fail("too slow");
	if (o.pass)
		o.detail = fmt::format("2000 samples, max err {:.2g} dB", worst);
	return o;
}

Outcome pam_quality(double& elapsed)
{
	const auto t0 = Clock::now();
	Outcome o;
	std::mt19937_64 rng(99);
	int exact = 0;
	double worst_gap = 0.0;
	const int instances = 200;
	for (int t = 0; t < instances; ++t)
	{
		const int k = 1 + static_cast<int>(rng() % 3);
		const std::size_t n = static_cast<std::size_t>(k) + 1 + rng() % (10 - k);
		const auto nodes = oracle::random_nodes(rng, n);
		PamConfig cfg;
		cfg.seed = rng();
		const PamResult r = pam(nodes, k, cfg);
		const double cost = r.clustering.total_cost_m;

		for (std::size_t i = 1; i < r.sweep_costs.size(); ++i)
			if (r.sweep_costs[i] > r.sweep_costs[i - 1])
				o.fail(fmt::format("instance {}: cost rose at sweep {}", t, i));

		for (NodeId out : r.clustering.medoid_ids)
			for (const Node& cand : nodes)
			{
				if (std::binary_search(r.clustering.medoid_ids.begin(), r.clustering.medoid_ids.end(), cand.id))
					continue;
				if (swap_cost(nodes, r.clustering, out, cand.id) < -1e-9 * std::max(cost, 1.0))
					o.fail(fmt::format("instance {}: improving swap {} -> {} left", t, out, cand.id));
			}

		const double best = oracle::best_medoid_cost(nodes, k);
		const double gap = best > 0.0 ? (cost - best) / best : cost;
		if (gap <= 1e-9)
			++exact;
		worst_gap = std::max(worst_gap, gap);
	}
	const double share = static_cast<double>(exact) / instances;
	if (share < 0.7)
		o.fail(fmt::format("optimal on only {:.0f}%", 100 * share));
	if (worst_gap > 0.25)
		o.fail(fmt::format("worst gap {:.1f}%", 100 * worst_gap));
	elapsed = seconds_since(t0);
	if (elapsed >= 30.0)
		o.fail("too slow");
	if (o.pass)
		o.detail = fmt::format("optimal on {}/{}, worst gap {:.2f}%", exact, instances, 100 * worst_gap);
	return o;
}

// Recomputes every ratio from the raw map instead of trusting the report.
void audit(const PlanResult& r, const PlanningContext& ctx, Outcome& o, const std::string& tag)
{
	std::vector<int> seen(ctx.map.nodes.size(), 0);
	for (const ClusterReport& c : r.clusters)
	{
		std::vector<Point> pts;
		double subs = 0.0;
		for (NodeId id : c.member_ids)
		{
			const auto idx = ctx.map.index_of(id);
			if (!idx)
			{
				o.fail(tag + ": unknown member");
				return;
			}
			++seen[*idx];
			const Node& n = ctx.map.nodes[*idx];
			pts.push_back({n.x_m, n.y_m});
			subs += n.subscribers;
		}
		const double cov = oracle::hull_area_bruteforce(pts) / ctx.coverage.cell_area_m2;
		const double cap = subs / ctx.capacity.subscribers_per_cell;
		if (cov > 1.0 + 1e-9 || cap > 1.0 + 1e-9)
			o.fail(fmt::format("{}: cluster {} ratios {:.6f}/{:.6f}", tag, c.medoid_id, cov, cap));
	}
	if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; }))
		o.fail(tag + ": clusters do not partition the map");
}

Outcome feasibility(double& elapsed)
{
	const auto t0 = Clock::now();
	Outcome o;
	const double ranges[] = {0.5, 1.5, 5.0};
	int feasible = 0;
	int capped = 0;
	int runs = 0;
	for (int i = 0; i < 50; ++i)
	{
		const Shape& s = shapes[i % 5];
		MapGenOptions g;
		g.nodes = s.nodes;
		g.area_m2 = s.area_m2;
		g.subscribers = s.subscribers;
		g.seed = 1000 + i;
		g.clumps = (i / 5) % 3 == 2 ? 4 : 0;
		const DigitalMap map = generate_map(g);
		for (Method method : {Method::method1, Method::method2})
		{
			const PlanningContext ctx = context(map, ranges[i % 3], method);
			const PlanResult r = plan(ctx);
			const std::string tag = fmt::format("{} {}", map.name, to_string(method));
			++runs;
			if (r.feasible)
			{
				++feasible;
				audit(r, ctx, o, tag);
			}
			else if (r.final_k >= ctx.cluster_cap())
				++capped;
			else
				o.fail(tag + ": stopped infeasible below the cap");
		}
	}
	elapsed = seconds_since(t0);
	if (elapsed >= 120.0)
		o.fail("too slow");
	if (o.pass)
		o.detail = fmt::format("{} runs, {} feasible, {} at cap", runs, feasible, capped);
	return o;
}

Outcome dominance(double& elapsed, const fs::path& csv_path)
{
	const auto t0 = Clock::now();
	Outcome o;
	std::ofstream csv(csv_path);
	csv << "dataset,nodes,subscribers,initial_k,method1_k,method2_k,method1_feasible,method2_feasible\n";
	std::vector<int> k1s, k2s;
	int wins_or_ties = 0;
	const int instances = 20;
	for (int i = 0; i < instances; ++i)
	{
		MapGenOptions g;
		g.nodes = 120 + 20 * (i % 5);
		g.area_m2 = 345663;
		g.subscribers = 15000 + 1000 * (i % 7);
		g.seed = 5000 + i;
		g.clumps = 3 + i % 4;
		const DigitalMap map = generate_map(g);
		const PlanResult m1 = plan(context(map, 0.5, Method::method1));
		const PlanResult m2 = plan(context(map, 0.5, Method::method2));
		k1s.push_back(m1.final_k);
		k2s.push_back(m2.final_k);
		if (m2.final_k <= m1.final_k)
			++wins_or_ties;
		if (!m1.feasible || !m2.feasible)
			o.fail(map.name + ": infeasible plan");
		csv << fmt::format("{},{},{},{},{},{},{},{}\n", map.name, g.nodes, g.subscribers, m1.initial_k,
			m1.final_k, m2.final_k, m1.feasible, m2.feasible);
	}
	const double med1 = median(k1s);
	const double med2 = median(k2s);
	if (med2 > med1)
		o.fail(fmt::format("median k method II {} > method I {}", med2, med1));
	if (wins_or_ties < 0.6 * instances)
		o.fail(fmt::format("method II wins or ties on only {}/{}", wins_or_ties, instances));
	elapsed = seconds_since(t0);
	if (elapsed >= 120.0)
		o.fail("too slow");
	if (o.pass)
		o.detail = fmt::format("median k {} vs {}, method II wins or ties {}/{}, csv {}", med2, med1, wins_or_ties,
			instances, csv_path.string());
	return o;
}

Outcome table_compare(double& elapsed, const fs::path& dir)
{
	const auto t0 = Clock::now();
	Outcome o;
	std::string maps;
	std::vector<DigitalMap> loaded;
	for (std::size_t i = 0; i < std::size(shapes); ++i)
	{
		const Shape& s = shapes[i];
		const fs::path p = dir / fmt::format("dataset{}.json", i + 1);
		std::string err;
		if (invoke({"gen-map", "--nodes", std::to_string(s.nodes), "--area-m2", fmt::format("{}", s.area_m2),
				"--subscribers", std::to_string(s.subscribers), "--seed", std::to_string(i + 1), "--name",
				fmt::format("dataset{}", i + 1), "--out", p.string()}, &err) != 0)
		{
			o.fail("gen-map failed: " + err);
			return o;
		}
		maps += (maps.empty() ? "" : ",") + p.string();
		loaded.push_back(load_map_file(p.string()));
	}
	const fs::path cfg = dir / "config.json";
	std::ofstream(cfg) << "{}\n";
	const fs::path csv = dir / "table.csv";
	std::string err;
	if (invoke({"compare", "--maps", maps, "--config", cfg.string(), "--cell-ranges", "0.5,1.5,5", "--out",
			csv.string()}, &err) != 0)
	{
		o.fail("compare failed: " + err);
		return o;
	}

	std::istringstream lines(slurp(csv));
	std::string line;
	std::getline(lines, line);
	int rows = 0;
	while (std::getline(lines, line))
	{
		++rows;
		if (line.substr(line.rfind(',') + 1) != "ok")
			o.fail("row not ok: " + line);
	}
	if (rows != 15)
		o.fail(fmt::format("{} rows", rows));

	for (const DigitalMap& map : loaded)
		for (Method method : {Method::method1, Method::method2})
		{
			const PlanningContext ctx = context(map, 5.0, method);
			const PlanResult r = plan(ctx);
			const InitialK k0 = initial_k(map, ctx.coverage, ctx.capacity);
			if (k0.coverage_cells > k0.capacity_cells)
				o.fail(map.name + ": coverage dominates at 5 km");
			for (const IterationSnapshot& it : r.iterations)
				for (const ClusterReport& c : it.clusters)
					if (c.cells_coverage_ratio > 1.0)
						o.fail(map.name + ": coverage violation at 5 km");
		}

	elapsed = seconds_since(t0);
	if (elapsed >= 120.0)
		o.fail("too slow");
	if (o.pass)
		o.detail = fmt::format("{} rows ok, capacity-limited at 5 km", rows);
	return o;
}

std::string without_elapsed(const std::string& plan_json)
{
	auto j = nlohmann::ordered_json::parse(plan_json);
	j.erase("elapsed_ms");
	return j.dump();
}

Outcome determinism(double& elapsed, const fs::path& dir)
{
	const auto t0 = Clock::now();
	Outcome o;
	const fs::path cfg = dir / "config.json";
	std::ofstream(cfg) << R"({"radio": {"coeff_c": 40}, "pam": {"seed": 11}})" << "\n";
	for (int run = 0; run < 2; ++run)
	{
		const fs::path d = dir / fmt::format("run{}", run);
		fs::create_directories(d);
		const std::string map = (d / "map.json").string();
		invoke({"gen-map", "--nodes", "150", "--area-m2", "345663", "--subscribers", "4488", "--seed", "3",
			"--clumps", "3", "--out", map});
		for (const char* method : {"1", "2"})
		{
			const std::string stem = (d / fmt::format("plan{}", method)).string();
			invoke({"plan", "--map", map, "--config", cfg.string(), "--method", method, "--cell-range-km", "0.5",
				"--out", stem + ".json", "--svg", stem + ".svg"});
			invoke({"render", "--plan", stem + ".json", "--map", map, "--out", stem + "-render.svg"});
		}
	}
	const fs::path a = dir / "run0";
	const fs::path b = dir / "run1";
	if (slurp(a / "map.json").empty() || slurp(a / "map.json") != slurp(b / "map.json"))
		o.fail("map.json differs");
	for (const char* name : {"plan1", "plan2"})
	{
		const std::string pa = slurp(a / fmt::format("{}.json", name));
		const std::string pb = slurp(b / fmt::format("{}.json", name));
		if (pa.empty() || without_elapsed(pa) != without_elapsed(pb))
			o.fail(fmt::format("{}.json differs", name));
		for (const char* svg : {".svg", "-render.svg"})
		{
			const std::string sa = slurp(a / fmt::format("{}{}", name, svg));
			if (sa.empty() || sa != slurp(b / fmt::format("{}{}", name, svg)))
				o.fail(fmt::format("{}{} differs", name, svg));
		}
		if (slurp(a / fmt::format("{}.svg", name)) != slurp(a / fmt::format("{}-render.svg", name)))
			o.fail(fmt::format("{}: render differs from plan --svg", name));
	}
	elapsed = seconds_since(t0);
	if (elapsed >= 30.0)
		o.fail("too slow");
	if (o.pass)
		o.detail = "map, plans and svgs byte-identical";
	return o;
}

} // namespace

int main(int argc, char** argv)
{
	const fs::path csv_dir = argc > 1 ? fs::path(argv[1]) : fs::current_path();
	const fs::path work = fs::temp_directory_path() / fmt::format("cellplan-acceptance-{}", ::getpid());
	fs::create_directories(work / "compare");
	fs::create_directories(work / "determinism");

	struct Criterion
	{
		const char* name;
		std::function<Outcome(double&)> run;
	};
	const std::vector<Criterion> criteria{
		{"erlang-b oracle equivalence", erlang},
		{"hata round trip", hata},
		{"pam local optimality and gap", pam_quality},
		{"m-pam feasibility contract", feasibility},
		{"method II dominance under heavy load",
			[&](double& t) { return dominance(t, csv_dir / "method_dominance.csv"); }},
		{"five-dataset compare run", [&](double& t) { return table_compare(t, work / "compare"); }},
		{"determinism", [&](double& t) { return determinism(t, work / "determinism"); }},
	};

	int failed = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i)
	{
		double elapsed = 0.0;
		Outcome o;
		try
		{
			o = criteria[i].run(elapsed);
		}
		catch (const std::exception& e)
		{
			o.fail(std::string("exception: ") + e.what());
		}
		failed += !o.pass;
		std::cout << fmt::format("[{}] {} {} ({:.2f} s): {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
			elapsed, o.detail);
	}
	fs::remove_all(work);
	std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
	return failed == 0 ? 0 : 1;
}
