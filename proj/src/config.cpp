#include "cellplan/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

namespace cellplan {

using nlohmann::json;

namespace {

class Section
{
public:
	Section(const json& doc, std::string name)
		: name_(std::move(name))
	{
		auto it = doc.find(name_);
		if (it == doc.end())
			return;
		if (!it->is_object())
			throw ConfigError(name_ + ": must be an object");
		obj_ = &*it;
	}

	void allow(std::initializer_list<std::string_view> keys) const
	{
		if (!obj_)
			return;
		for (const auto& [key, value] : obj_->items())
		{
			if (std::find(keys.begin(), keys.end(), key) == keys.end())
				throw ConfigError(name_ + "." + key + ": unknown key");
		}
	}

	void number(const char* key, double& out) const
	{
		if (const json* v = find(key))
		{
			if (!v->is_number() || !std::isfinite(v->get<double>()))
				throw ConfigError(path(key) + ": must be a finite number");
			out = v->get<double>();
		}
	}

	void optional_number(const char* key, std::optional<double>& out) const
	{
		if (find(key))
		{
			double v = 0.0;
			number(key, v);
			out = v;
		}
	}

	template <typename Int>
	void integer(const char* key, Int& out) const
	{
		if (const json* v = find(key))
		{
			if (!v->is_number_integer())
				throw ConfigError(path(key) + ": must be an integer");
			out = v->get<Int>();
		}
	}

	void boolean(const char* key, bool& out) const
	{
		if (const json* v = find(key))
		{
			if (!v->is_boolean())
				throw ConfigError(path(key) + ": must be a boolean");
			out = v->get<bool>();
		}
	}

	std::optional<std::string> string(const char* key) const
	{
		const json* v = find(key);
		if (!v)
			return std::nullopt;
		if (!v->is_string())
			throw ConfigError(path(key) + ": must be a string");
		return v->get<std::string>();
	}

	const json* find(const char* key) const
	{
		if (!obj_)
			return nullptr;
		auto it = obj_->find(key);
		return it == obj_->end() ? nullptr : &*it;
	}

	std::string path(const char* key) const { return name_ + "." + key; }

private:
	std::string name_;
	const json* obj_ = nullptr;
};

void read_radio(const json& doc, RadioConfig& radio)
{
	Section s(doc, "radio");
	s.allow({"tx_power_dbm", "tx_cable_loss_db", "tx_body_loss_db", "tx_antenna_gain_dbi",
		"rx_sensitivity_dbm", "rx_cable_loss_db", "rx_body_loss_db", "rx_antenna_gain_dbi",
		"fading_margin_db", "interference_margin_db", "penetration_margin_db", "other_margin_db",
		"band", "coeff_a", "coeff_b", "coeff_c", "cell_geometry", "cell_range_km"});

	LinkBudgetParams& p = radio.link;
	s.number("tx_power_dbm", p.tx_power_dbm);
	s.number("tx_cable_loss_db", p.tx_cable_loss_db);
	s.number("tx_body_loss_db", p.tx_body_loss_db);
	s.number("tx_antenna_gain_dbi", p.tx_antenna_gain_dbi);
	s.number("rx_sensitivity_dbm", p.rx_sensitivity_dbm);
	s.number("rx_cable_loss_db", p.rx_cable_loss_db);
	s.number("rx_body_loss_db", p.rx_body_loss_db);
	s.number("rx_antenna_gain_dbi", p.rx_antenna_gain_dbi);
	s.number("fading_margin_db", p.fading_margin_db);
	s.number("interference_margin_db", p.interference_margin_db);
	s.number("penetration_margin_db", p.penetration_margin_db);
	s.number("other_margin_db", p.other_margin_db);
	try
	{
		p.validate();
	}
	catch (const std::invalid_argument& e)
	{
		throw ConfigError(std::string("radio.") + e.what());
	}

	Band band = Band::gsm900;
	if (auto text = s.string("band"))
	{
		auto parsed = parse_band(*text);
		if (!parsed)
			throw ConfigError("radio.band: expected GSM900 or GSM1800, got \"" + *text + "\"");
		band = *parsed;
	}
	double c = 0.0;
	s.number("coeff_c", c);
	radio.hata = hata_params_for(band, c);
	s.number("coeff_a", radio.hata.coeff_a);
	s.number("coeff_b", radio.hata.coeff_b);
	if (!(radio.hata.coeff_b > 0.0))
		throw ConfigError("radio.coeff_b: must be > 0");

	if (auto text = s.string("cell_geometry"))
	{
		auto parsed = parse_geometry(*text);
		if (!parsed)
			throw ConfigError("radio.cell_geometry: expected circle or hexagon, got \"" + *text + "\"");
		radio.geometry = *parsed;
	}
	s.optional_number("cell_range_km", radio.cell_range_km);
	if (radio.cell_range_km && !(*radio.cell_range_km > 0.0))
		throw ConfigError("radio.cell_range_km: must be > 0");
}

void read_traffic(const json& doc, TrafficModel& m)
{
	Section s(doc, "traffic");
	s.allow({"calls_per_hour", "avg_call_s", "gos", "available_frequencies", "cells_per_pattern",
		"channels_per_carrier", "control_channels_per_cell"});
	s.number("calls_per_hour", m.calls_per_hour);
	s.number("avg_call_s", m.avg_call_s);
	s.number("gos", m.gos);
	s.integer("available_frequencies", m.available_frequencies);
	s.integer("cells_per_pattern", m.cells_per_pattern);
	s.integer("channels_per_carrier", m.channels_per_carrier);
	s.integer("control_channels_per_cell", m.control_channels_per_cell);
	try
	{
		m.validate();
	}
	catch (const std::invalid_argument& e)
	{
		throw ConfigError(std::string("traffic.") + e.what());
	}
}

void read_pam(const json& doc, PamConfig& cfg)
{
	Section s(doc, "pam");
	s.allow({"seed", "max_sweeps", "matrix_threshold"});
	s.integer("seed", cfg.seed);
	s.integer("max_sweeps", cfg.max_sweeps);
	s.integer("matrix_threshold", cfg.matrix_threshold);
	if (cfg.max_sweeps < 1)
		throw ConfigError("pam.max_sweeps: must be >= 1");
}

void read_planner(const json& doc, PlannerConfig& cfg)
{
	Section s(doc, "planner");
	s.allow({"method", "max_total_clusters", "split_by_ratio"});
	if (auto text = s.string("method"))
	{
		cfg.method = parse_method(*text);
		if (!cfg.method)
			throw ConfigError("planner.method: expected 1, 2, method1 or method2");
	}
	if (s.find("max_total_clusters"))
	{
		int cap = 0;
		s.integer("max_total_clusters", cap);
		if (cap < 1)
			throw ConfigError("planner.max_total_clusters: must be >= 1");
		cfg.max_total_clusters = cap;
	}
	s.boolean("split_by_ratio", cfg.split_by_ratio);
}

void read_output(const json& doc, OutputConfig& out)
{
	Section s(doc, "output");
	s.allow({"plan", "svg", "csv"});
	out.plan_path = s.string("plan");
	out.svg_path = s.string("svg");
	out.csv_path = s.string("csv");
}

} // namespace

RunConfig load_config(std::istream& in)
{
	json doc;
	try
	{
		doc = json::parse(in);
	}
	catch (const json::parse_error& e)
	{
		throw ConfigError(std::string("config: parse error: ") + e.what());
	}
	if (!doc.is_object())
		throw ConfigError("config: top level must be an object");
	for (const auto& [key, value] : doc.items())
	{
		if (key != "radio" && key != "traffic" && key != "pam" && key != "planner" && key != "output")
			throw ConfigError(key + ": unknown config section");
	}

	RunConfig cfg;
	try
	{
		read_radio(doc, cfg.radio);
		read_traffic(doc, cfg.traffic);
		read_pam(doc, cfg.pam);
		read_planner(doc, cfg.planner);
		read_output(doc, cfg.output);
	}
	catch (const json::exception& e)
	{
		// Out-of-range integers and similar conversion failures.
		throw ConfigError(std::string("config: ") + e.what());
	}
	return cfg;
}

RunConfig load_config_string(std::string_view text)
{
	std::istringstream in{std::string(text)};
	return load_config(in);
}

RunConfig load_config_file(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw ConfigError("config: cannot open " + path);
	return load_config(in);
}

CoverageResult coverage_for(const RadioConfig& radio, std::optional<double> range_override_km)
{
	std::optional<double> range = range_override_km ? range_override_km : radio.cell_range_km;
	if (range)
	{
		if (!(*range > 0.0))
			throw ConfigError("cell_range_km: must be > 0");
		radio.link.validate();
		CoverageResult c = coverage_for_range(*range, radio.geometry);
		c.eirp_dbm = eirp(radio.link);
		c.total_margin_db = total_margin(radio.link);
		c.max_path_loss_db = max_allowed_path_loss(radio.link);
		return c;
	}
	return coverage_plan(radio.link, radio.hata, radio.geometry);
}

} // namespace cellplan
