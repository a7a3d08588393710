#include "cellplan/cli.hpp"

#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cellplan/compare.hpp"
#include "cellplan/config.hpp"
#include "cellplan/map_gen.hpp"
#include "cellplan/plan_io.hpp"
#include "cellplan/svg_render.hpp"

namespace cellplan::cli {

namespace {

/// Bad user input; maps to exit code 2.
class InputError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw InputError("cannot write " + path);
	out << content;
	if (!out)
		throw InputError("failed writing " + path);
}

std::vector<double> parse_ranges(const std::string& text)
{
	std::vector<double> ranges;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
	{
		if (item.empty())
			continue;
		std::size_t used = 0;
		double v = 0.0;
		try
		{
			v = std::stod(item, &used);
		}
		catch (const std::exception&)
		{
			throw InputError("--cell-ranges: bad value \"" + item + "\"");
		}
		if (used != item.size() || !(v > 0.0))
			throw InputError("--cell-ranges: bad value \"" + item + "\"");
		ranges.push_back(v);
	}
	if (ranges.empty())
		throw InputError("--cell-ranges: no cell range given");
	return ranges;
}

struct PlanFlags
{
	std::string map_path;
	std::string config_path;
	std::string method;
	std::optional<double> cell_range_km;
	std::string out_path;
	std::string svg_path;
};

int cmd_plan(const PlanFlags& f, std::ostream& out)
{
	const DigitalMap map = load_map_file(f.map_path);
	const RunConfig cfg = load_config_file(f.config_path);
	std::optional<Method> method = cfg.planner.method;
	if (!f.method.empty())
	{
		method = parse_method(f.method);
		if (!method)
			throw InputError("--method: expected 1 or 2, got \"" + f.method + "\"");
	}
	if (!method)
		throw InputError("--method is required (or set planner.method in the config)");

	PlanningContext ctx;
	ctx.map = map;
	ctx.coverage = coverage_for(cfg.radio, f.cell_range_km);
	ctx.capacity = capacity_plan(cfg.traffic);
	ctx.pam_cfg = cfg.pam;
	ctx.method = *method;
	ctx.split_by_ratio = cfg.planner.split_by_ratio;
	if (cfg.planner.max_total_clusters)
		ctx.max_total_clusters = std::min<int>(*cfg.planner.max_total_clusters, static_cast<int>(map.nodes.size()));

	PlanDocument doc{map.name, ctx.coverage, ctx.capacity, plan(ctx)};
	const std::string plan_path = !f.out_path.empty() ? f.out_path : cfg.output.plan_path.value_or("plan.json");
	write_file(plan_path, plan_to_json(doc, map));
	const std::string svg_path = !f.svg_path.empty() ? f.svg_path : cfg.output.svg_path.value_or("");
	if (!svg_path.empty())
		write_file(svg_path, render_svg(doc.result, map));

	out << map.name << ": " << to_string(doc.result.method) << " placed " << doc.result.final_k
		<< " base station(s), " << (doc.result.feasible ? "feasible" : "infeasible") << "\n";
	for (const std::string& w : doc.result.warnings)
		out << "warning: " << w << "\n";
	for (const std::string& d : doc.result.diagnostics)
		out << "diagnostic: " << d << "\n";
	return doc.result.feasible ? exit_ok : exit_infeasible;
}

struct CompareFlags
{
	std::vector<std::string> map_paths;
	std::string config_path;
	std::string cell_ranges;
	std::optional<int> baseline_k;
	int repeat = 1;
	bool parallel = false;
	std::string out_path;
};

int cmd_compare(const CompareFlags& f, std::ostream& out)
{
	CompareOptions opts;
	opts.cell_ranges_km = parse_ranges(f.cell_ranges);
	opts.baseline_k = f.baseline_k;
	if (opts.baseline_k && *opts.baseline_k < 1)
		throw InputError("--baseline-k: must be >= 1");
	opts.repeat = f.repeat;
	if (opts.repeat < 1)
		throw InputError("--repeat: must be >= 1");
	opts.parallel = f.parallel;

	const RunConfig cfg = load_config_file(f.config_path);
	std::vector<DigitalMap> maps;
	for (const std::string& path : f.map_paths)
		maps.push_back(load_map_file(path));

	const std::vector<ComparisonRow> rows = run_comparison(maps, cfg, opts);
	const std::string csv = comparison_csv(rows);
	const std::string path = !f.out_path.empty() ? f.out_path : cfg.output.csv_path.value_or("");
	if (path.empty())
		out << csv;
	else
		write_file(path, csv);
	return exit_ok;
}

int cmd_gen_map(const MapGenOptions& opts, const std::string& out_path, std::ostream& out)
{
	try
	{
		opts.validate();
	}
	catch (const std::invalid_argument& e)
	{
		throw InputError(std::string("gen-map: ") + e.what());
	}
	const std::string json = map_to_json(generate_map(opts));
	if (out_path.empty())
		out << json;
	else
		write_file(out_path, json);
	return exit_ok;
}

int cmd_render(const std::string& plan_path, const std::string& map_path, const std::string& out_path,
	std::ostream& out, std::ostream& err)
{
	const DigitalMap map = load_map_file(map_path);
	const PlanDocument doc = load_plan_file(plan_path);
	for (const std::string& problem : validate_plan(doc, map))
		err << "warning: " << problem << "\n";
	const std::string svg = render_svg(doc.result, map);
	if (out_path.empty())
		out << svg;
	else
		write_file(out_path, svg);
	return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Cell planning with modified PAM clustering", "cellplan"};
	app.require_subcommand(1);

	PlanFlags plan_flags;
	auto* plan_cmd = app.add_subcommand("plan", "Place base stations on a map");
	plan_cmd->add_option("--map", plan_flags.map_path, "Map JSON")->required();
	plan_cmd->add_option("--config", plan_flags.config_path, "Run config JSON")->required();
	plan_cmd->add_option("--method", plan_flags.method, "1 (global re-cluster) or 2 (local split)");
	plan_cmd->add_option("--cell-range-km", plan_flags.cell_range_km, "Fixed cell range, skips the link budget");
	plan_cmd->add_option("--out", plan_flags.out_path, "Plan JSON output (default plan.json)");
	plan_cmd->add_option("--svg", plan_flags.svg_path, "Optional SVG output");

	CompareFlags cmp;
	auto* cmp_cmd = app.add_subcommand("compare", "Method I / Method II / PAM comparison table");
	cmp_cmd->add_option("--map,--maps", cmp.map_paths, "Map JSON files")->required()->delimiter(',');
	cmp_cmd->add_option("--config", cmp.config_path, "Run config JSON")->required();
	cmp_cmd->add_option("--cell-ranges", cmp.cell_ranges, "Comma separated cell ranges in km")->required();
	cmp_cmd->add_option("--baseline-k", cmp.baseline_k, "k for the plain PAM column");
	cmp_cmd->add_option("--repeat", cmp.repeat, "Runs per timing (median reported)");
	cmp_cmd->add_flag("--parallel", cmp.parallel, "Compute rows concurrently");
	cmp_cmd->add_option("--out", cmp.out_path, "CSV output (default stdout)");

	MapGenOptions gen;
	std::string gen_out;
	auto* gen_cmd = app.add_subcommand("gen-map", "Generate a synthetic map");
	gen_cmd->add_option("--nodes", gen.nodes, "Node count")->required();
	gen_cmd->add_option("--area-m2", gen.area_m2, "Square area in m2")->required();
	gen_cmd->add_option("--subscribers", gen.subscribers, "Total subscribers")->required();
	gen_cmd->add_option("--seed", gen.seed, "Generator seed")->required();
	gen_cmd->add_option("--clumps", gen.clumps, "Gaussian clump count (0 = uniform)");
	gen_cmd->add_option("--name", gen.name, "Map name");
	gen_cmd->add_option("--out", gen_out, "Map JSON output (default stdout)");

	std::string render_plan, render_map, render_out;
	auto* render_cmd = app.add_subcommand("render", "Render a plan as SVG");
	render_cmd->add_option("--plan", render_plan, "Plan JSON")->required();
	render_cmd->add_option("--map", render_map, "Map JSON")->required();
	render_cmd->add_option("--out", render_out, "SVG output (default stdout)");

	std::vector<std::string> argv_storage{"cellplan"};
	argv_storage.insert(argv_storage.end(), args.begin(), args.end());
	std::vector<const char*> argv;
	for (const std::string& a : argv_storage)
		argv.push_back(a.c_str());

	try
	{
		app.parse(static_cast<int>(argv.size()), argv.data());
	}
	catch (const CLI::CallForHelp&)
	{
		out << app.help();
		return exit_ok;
	}
	catch (const CLI::ParseError& e)
	{
		err << "cellplan: " << e.what() << "\n";
		return exit_invalid_input;
	}

	try
	{
		if (plan_cmd->parsed())
			return cmd_plan(plan_flags, out);
		if (cmp_cmd->parsed())
			return cmd_compare(cmp, out);
		if (gen_cmd->parsed())
			return cmd_gen_map(gen, gen_out, out);
		if (render_cmd->parsed())
			return cmd_render(render_plan, render_map, render_out, out, err);
	}
	catch (const InputError& e)
	{
		err << "cellplan: " << e.what() << "\n";
		return exit_invalid_input;
	}
	catch (const MapError& e)
	{
		err << "cellplan: " << e.what() << "\n";
		return exit_invalid_input;
	}
	catch (const ConfigError& e)
	{
		err << "cellplan: " << e.what() << "\n";
		return exit_invalid_input;
	}
	catch (const PlanFormatError& e)
	{
		err << "cellplan: " << e.what() << "\n";
		return exit_invalid_input;
	}
	catch (const InfeasiblePlanError& e)
	{
		err << "cellplan: infeasible frequency plan: " << e.what() << "\n";
		return exit_invalid_input;
	}
	catch (const std::invalid_argument& e)
	{
		err << "cellplan: " << e.what() << "\n";
		return exit_invalid_input;
	}
	catch (const std::exception& e)
	{
		err << "cellplan: internal error: " << e.what() << "\n";
		return exit_error;
	}
	return exit_invalid_input;
}

} // namespace cellplan::cli
