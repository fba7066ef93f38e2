#include "fhsrisk/cli.hpp"

#include "fhsrisk/diagnostics.hpp"
#include "fhsrisk/error.hpp"
#include "fhsrisk/gjr_garch.hpp"
#include "fhsrisk/json_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace fhsrisk::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kSignificance = 0.05;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::InvalidConfig, what);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Format parse_format(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  config_error("format must be text, csv or json, got '" + name + "'");
}

bool safe_id(const std::string& id) {
  return !id.empty() && id != "." && id != ".." &&
         std::all_of(id.begin(), id.end(), [](unsigned char c) {
           return std::isalnum(c) || c == '_' || c == '-' || c == '.';
         });
}

// Shortest round-trip representation, for CSV.
std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string starred(double value, double p, int digits = 4) {
  return sig(value, digits) + (p < kSignificance ? "*" : "");
}

std::string level_label(double level) { return sig(100.0 * level, 6) + "%"; }

// Plain aligned table: first column left-aligned, the rest right-aligned.
class Table {
public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void render(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const std::string pad(width[c] - row[c].size(), ' ');
        line += c == 0 ? row[c] + pad : "  " + pad + row[c];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
    }
  }

private:
  std::vector<std::vector<std::string>> rows_;
};

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
}

// ---- pipeline stages -------------------------------------------------------

struct Panel {
  std::vector<ReturnSeries> returns;
};

Panel load_panel(const RunConfig& config) {
  std::vector<PriceSeries> prices;
  for (const auto& asset : config.assets)
    prices.push_back(parse_price_csv(asset.path, asset.id, asset.schema));
  Panel panel;
  for (const auto& p : align_panel(prices)) panel.returns.push_back(log_returns(p));
  return panel;
}

struct StatsResult {
  std::vector<diagnostics::DiagnosticsRow> rows;
  diagnostics::CorrelationMatrix correlation;
};

StatsResult compute_stats(const RunConfig& config, const Panel& panel) {
  StatsResult s;
  for (const auto& r : panel.returns) s.rows.push_back(diagnostics::describe(r.returns, config.lags));
  s.correlation = diagnostics::correlation_matrix(panel.returns);
  return s;
}

json stats_json(const RunConfig& config, const Panel& panel, const StatsResult& s) {
  json assets = json::array();
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    json row = s.rows[i];
    row["asset_id"] = panel.returns[i].asset_id;
    row["first_date"] = format_iso_date(panel.returns[i].dates.front());
    row["last_date"] = format_iso_date(panel.returns[i].dates.back());
    assets.push_back(std::move(row));
  }
  return {{"lags", config.lags}, {"assets", assets}, {"correlation", s.correlation}};
}

void stats_text(std::ostream& out, const RunConfig& config, const Panel& panel,
                const StatsResult& s) {
  const std::string q = "(" + std::to_string(config.lags) + ")";
  const auto& first = panel.returns.front();
  out << "Descriptive statistics of daily log returns, " << format_iso_date(first.dates.front())
      << " to " << format_iso_date(first.dates.back()) << "\n";
  Table t({"asset", "N", "mean", "std.", "skew.", "kurt.", "J.B.", "ARCH-LM" + q, "ARCH-F" + q,
           "LB" + q, "LB-2" + q});
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& r = s.rows[i];
    t.add({panel.returns[i].asset_id, std::to_string(r.n), sig(r.mean, 4), sig(r.std, 4),
           starred(r.skewness, r.skew_p), starred(r.kurtosis, r.kurt_p),
           starred(r.jb_stat, r.jb_p), starred(r.arch_stat, r.arch_p), sig(r.arch_f_stat, 4),
           starred(r.lb_stat, r.lb_p), starred(r.lb2_stat, r.lb2_p)});
  }
  t.render(out);
  out << "* significant at the 5% level\n\nCorrelations of daily log returns\n";
  std::vector<std::string> header{""};
  for (const auto& id : s.correlation.asset_ids) header.push_back(id);
  Table c(header);
  for (std::size_t i = 0; i < s.correlation.values.size(); ++i) {
    std::vector<std::string> row{s.correlation.asset_ids[i]};
    for (double v : s.correlation.values[i]) row.push_back(sig(v, 4));
    c.add(row);
  }
  c.render(out);
}

void stats_csv(std::ostream& out, const Panel& panel, const StatsResult& s) {
  write_csv_row(out, {"asset", "n", "mean", "std", "skewness", "skew_p", "kurtosis", "kurt_p",
                      "jb_stat", "jb_p", "arch_lm", "arch_p", "arch_f", "lb_stat", "lb_p",
                      "lb2_stat", "lb2_p"});
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& r = s.rows[i];
    write_csv_row(out, {panel.returns[i].asset_id, std::to_string(r.n), num(r.mean), num(r.std),
                        num(r.skewness), num(r.skew_p), num(r.kurtosis), num(r.kurt_p),
                        num(r.jb_stat), num(r.jb_p), num(r.arch_stat), num(r.arch_p),
                        num(r.arch_f_stat), num(r.lb_stat), num(r.lb_p), num(r.lb2_stat),
                        num(r.lb2_p)});
  }
  out << '\n';
  std::vector<std::string> header{"asset"};
  for (const auto& id : s.correlation.asset_ids) header.push_back(id);
  write_csv_row(out, header);
  for (std::size_t i = 0; i < s.correlation.values.size(); ++i) {
    std::vector<std::string> row{s.correlation.asset_ids[i]};
    for (double v : s.correlation.values[i]) row.push_back(num(v));
    write_csv_row(out, row);
  }
}

struct AssetFit {
  std::string asset_id;
  std::optional<garch::FitResult> fit;
  std::string failure;
};

fs::path fit_path(const RunConfig& config, const std::string& id) {
  return config.output_dir / "fits" / (id + ".json");
}

std::vector<AssetFit> fit_all(const RunConfig& config, const Panel& panel, std::ostream& err) {
  garch::FitOptions opts;
  opts.diagnostic_lags = config.lags;
  std::vector<AssetFit> fits;
  for (const auto& r : panel.returns) {
    AssetFit a{r.asset_id, std::nullopt, ""};
    try {
      a.fit = garch::fit(r, opts);
      write_file(fit_path(config, r.asset_id), json(*a.fit).dump(2) + "\n");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Io) throw;
      a.failure = e.what();
      err << "riskcli: fit failed for " << r.asset_id << ": " << e.what() << '\n';
    }
    fits.push_back(std::move(a));
  }
  return fits;
}

json fit_summary(const garch::FitResult& fit) {
  json j = fit;
  j.erase("filter");
  return j;
}

json fits_json(const std::vector<AssetFit>& fits) {
  json arr = json::array();
  for (const auto& a : fits) {
    if (a.fit) {
      json j = fit_summary(*a.fit);
      j["status"] = "ok";
      arr.push_back(std::move(j));
    } else {
      arr.push_back({{"asset_id", a.asset_id}, {"status", "failed"}, {"error", a.failure}});
    }
  }
  return arr;
}

// Row order: mu, phi, omega, a, beta, gamma, nu, m.
const std::vector<std::pair<std::string, double garch::GjrParams::*>> kFitRows = {
    {"mu", &garch::GjrParams::mu},       {"phi", &garch::GjrParams::phi},
    {"omega", &garch::GjrParams::omega}, {"a", &garch::GjrParams::alpha},
    {"beta", &garch::GjrParams::beta},   {"gamma", &garch::GjrParams::gamma},
    {"nu", &garch::GjrParams::nu},       {"m", &garch::GjrParams::m}};

void fits_text(std::ostream& out, const RunConfig& config, const std::vector<AssetFit>& fits) {
  const std::string q = "(" + std::to_string(config.lags) + ")";
  out << "AR(1)-GJR(1,1) with Pearson IV innovations, maximum likelihood\n";
  std::vector<std::string> header{""};
  for (const auto& a : fits) header.push_back(a.asset_id);
  Table t(header);
  auto row = [&](const std::string& label, auto&& cell) {
    std::vector<std::string> cells{label};
    for (const auto& a : fits) cells.push_back(a.fit ? cell(*a.fit) : "failed");
    t.add(cells);
  };
  for (const auto& [label, field] : kFitRows)
    row(label, [field](const garch::FitResult& f) { return sig(f.params.*field, 4); });
  row("-logL", [](const garch::FitResult& f) { return sig(f.nll, 7); });
  row("a+beta+gamma/2", [](const garch::FitResult& f) { return sig(f.params.persistence(), 4); });
  row("converged", [](const garch::FitResult& f) { return std::string(f.converged ? "yes" : "no"); });
  row("LB" + q + " z p", [](const garch::FitResult& f) {
    return sig(f.residual_diagnostics.lb_p, 3);
  });
  row("LB" + q + " z^2 p", [](const garch::FitResult& f) {
    return sig(f.residual_diagnostics.lb2_p, 3);
  });
  t.render(out);
  out << "LB rows: Ljung-Box p-values on the standardized residuals z and on z^2\n";
  for (const auto& a : fits) {
    if (!a.fit) {
      out << a.asset_id << ": fit failed: " << a.failure << '\n';
      continue;
    }
    for (const auto& w : a.fit->warnings) out << a.asset_id << ": " << w << '\n';
  }
}

void fits_csv(std::ostream& out, const std::vector<AssetFit>& fits) {
  std::vector<std::string> header{"parameter"};
  for (const auto& a : fits) header.push_back(a.asset_id);
  write_csv_row(out, header);
  auto row = [&](const std::string& label, auto&& cell) {
    std::vector<std::string> cells{label};
    for (const auto& a : fits) cells.push_back(a.fit ? cell(*a.fit) : "failed");
    write_csv_row(out, cells);
  };
  for (const auto& [label, field] : kFitRows)
    row(label, [field](const garch::FitResult& f) { return num(f.params.*field); });
  row("nll", [](const garch::FitResult& f) { return num(f.nll); });
  row("persistence", [](const garch::FitResult& f) { return num(f.params.persistence()); });
  row("converged", [](const garch::FitResult& f) { return std::string(f.converged ? "1" : "0"); });
  row("lb_z_p", [](const garch::FitResult& f) { return num(f.residual_diagnostics.lb_p); });
  row("lb_z2_p", [](const garch::FitResult& f) { return num(f.residual_diagnostics.lb2_p); });
}

std::vector<fhs::RiskReport> risk_all(const RunConfig& config,
                                      const std::vector<garch::FitResult>& fits) {
  std::vector<fhs::RiskReport> reports;
  for (const auto& f : fits) {
    const auto sample = fhs::run_fhs(f, config.risk);
    auto report = fhs::make_report(f.asset_id, sample, config.risk);
    write_file(config.output_dir / "risk" / (f.asset_id + ".json"), json(report).dump(2) + "\n");
    reports.push_back(std::move(report));
  }
  return reports;
}

json risk_json(const std::vector<fhs::RiskReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(r);
  return arr;
}

void risk_text(std::ostream& out, const RunConfig& config,
               const std::vector<fhs::RiskReport>& reports) {
  out << "VaR and Expected Shortfall, " << config.risk.horizon << "-day log returns in percent ("
      << config.risk.trials << " trials, seed " << config.risk.seed << ")\n";
  std::vector<std::string> header{""};
  for (const auto& r : reports) header.push_back(r.asset_id);
  Table t(header);
  for (const auto& entry : reports.front().entries) {
    std::vector<std::string> var_row{"VaR " + level_label(entry.level)};
    std::vector<std::string> es_row{"ES " + level_label(entry.level)};
    for (const auto& r : reports) {
      const auto* e = r.find(entry.level);
      var_row.push_back(sig(100.0 * e->var, 5));
      es_row.push_back(sig(100.0 * e->es, 5));
    }
    t.add(var_row);
    t.add(es_row);
  }
  std::vector<std::string> gap{"|VaR 1% - ES 2.5%| / ES 2.5%"};
  for (const auto& r : reports) gap.push_back(r.basel_gap ? sig(*r.basel_gap, 4) : "n/a");
  t.add(gap);
  t.render(out);
}

void risk_csv(std::ostream& out, const std::vector<fhs::RiskReport>& reports) {
  std::vector<std::string> header{"measure", "level"};
  for (const auto& r : reports) header.push_back(r.asset_id);
  write_csv_row(out, header);
  for (const auto& entry : reports.front().entries) {
    std::vector<std::string> var_row{"var_pct", num(entry.level)};
    std::vector<std::string> es_row{"es_pct", num(entry.level)};
    for (const auto& r : reports) {
      const auto* e = r.find(entry.level);
      var_row.push_back(num(100.0 * e->var));
      es_row.push_back(num(100.0 * e->es));
    }
    write_csv_row(out, var_row);
    write_csv_row(out, es_row);
  }
  std::vector<std::string> gap{"basel_gap", ""};
  for (const auto& r : reports) gap.push_back(r.basel_gap ? num(*r.basel_gap) : "");
  write_csv_row(out, gap);
}

std::vector<garch::FitResult> successful(const std::vector<AssetFit>& fits) {
  std::vector<garch::FitResult> out;
  for (const auto& a : fits)
    if (a.fit) out.push_back(*a.fit);
  return out;
}

json spec_json(const RunConfig& config) {
  return {{"levels", config.risk.levels},
          {"horizon", config.risk.horizon},
          {"trials", config.risk.trials},
          {"seed", config.risk.seed},
          {"lags", config.lags}};
}

} // namespace

// ---- configuration -----------------------------------------------------------

RunConfig load_config(const fs::path& path) {
  RunConfig config;
  config.config_text = read_file(path);
  json doc;
  try {
    doc = json::parse(config.config_text);
  } catch (const json::parse_error& e) {
    config_error(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) config_error("config must be a JSON object");
  static const std::set<std::string> kKeys = {"assets", "lags", "risk", "format", "output_dir"};
  for (const auto& [key, value] : doc.items())
    if (!kKeys.count(key)) config_error("unknown config key '" + key + "'");

  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  try {
    if (!doc.contains("assets") || !doc["assets"].is_array() || doc["assets"].empty())
      config_error("config needs a nonempty 'assets' array");
    std::set<std::string> seen;
    for (const auto& a : doc["assets"]) {
      AssetSpec spec;
      spec.id = a.at("id").get<std::string>();
      if (!safe_id(spec.id)) config_error("asset id '" + spec.id + "' must be [A-Za-z0-9_.-]+");
      if (!seen.insert(spec.id).second) config_error("duplicate asset id '" + spec.id + "'");
      const fs::path p = a.at("path").get<std::string>();
      spec.path = p.is_absolute() ? p : base / p;
      spec.schema.date_column = a.value("date_column", spec.schema.date_column);
      spec.schema.close_column = a.value("close_column", spec.schema.close_column);
      config.assets.push_back(std::move(spec));
    }
    config.lags = doc.value("lags", 12);
    if (config.lags < 1) config_error("lags must be at least 1");
    if (doc.contains("risk")) {
      const auto& r = doc["risk"];
      if (!r.is_object()) config_error("'risk' must be an object");
      config.risk.levels = r.value("levels", config.risk.levels);
      config.risk.horizon = r.value("horizon", config.risk.horizon);
      config.risk.trials = r.value("trials", config.risk.trials);
      if (r.contains("seed")) {
        config.risk.seed = r["seed"].get<std::uint64_t>();
        config.seed_in_file = true;
      }
    }
    config.format = parse_format(doc.value("format", std::string("text")));
    config.output_dir = base / doc.value("output_dir", std::string("out"));
  } catch (const json::exception& e) {
    config_error(std::string("config: ") + e.what());
  }
  config.risk.validate();
  return config;
}

void apply_overrides(RunConfig& config, const Overrides& o) {
  if (o.seed) {
    config.risk.seed = *o.seed;
  } else if (!config.seed_in_file && o.env_seed) {
    std::uint64_t seed = 0;
    const auto& text = *o.env_seed;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      config_error("RISKCLI_SEED must be an unsigned integer, got '" + text + "'");
    config.risk.seed = seed;
  }
  if (o.trials) config.risk.trials = *o.trials;
  if (o.horizon) config.risk.horizon = *o.horizon;
  if (o.levels) config.risk.levels = *o.levels;
  if (o.format) config.format = *o.format;
  config.risk.validate();
}

// ---- commands ------------------------------------------------------------------

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream&) {
  const auto panel = load_panel(config);
  const auto stats = compute_stats(config, panel);
  switch (config.format) {
    case Format::Json: out << stats_json(config, panel, stats).dump(2) << '\n'; break;
    case Format::Csv: stats_csv(out, panel, stats); break;
    case Format::Text: stats_text(out, config, panel, stats); break;
  }
  return kOk;
}

int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto panel = load_panel(config);
  const auto fits = fit_all(config, panel, err);
  switch (config.format) {
    case Format::Json: out << json{{"fits", fits_json(fits)}}.dump(2) << '\n'; break;
    case Format::Csv: fits_csv(out, fits); break;
    case Format::Text: fits_text(out, config, fits); break;
  }
  return successful(fits).empty() ? kFitFailure : kOk;
}

int cmd_risk(const RunConfig& config, bool refit, std::ostream& out, std::ostream& err) {
  std::vector<garch::FitResult> fits;
  if (refit) {
    fits = successful(fit_all(config, load_panel(config), err));
    if (fits.empty()) {
      err << "riskcli: no asset could be fitted\n";
      return kFitFailure;
    }
  } else {
    for (const auto& asset : config.assets) {
      const auto path = fit_path(config, asset.id);
      if (!fs::exists(path)) {
        err << "riskcli: missing fit artifact " << path.string()
            << "; run `riskcli fit` first or pass --refit\n";
        return kMissingArtifacts;
      }
      try {
        fits.push_back(json::parse(read_file(path)).get<garch::FitResult>());
      } catch (const json::exception& e) {
        throw Error(ErrorCode::Io, path.string() + ": " + e.what());
      }
    }
  }
  const auto reports = risk_all(config, fits);
  switch (config.format) {
    case Format::Json:
      out << json{{"spec", spec_json(config)}, {"reports", risk_json(reports)}}.dump(2) << '\n';
      break;
    case Format::Csv: risk_csv(out, reports); break;
    case Format::Text: risk_text(out, config, reports); break;
  }
  return kOk;
}

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto panel = load_panel(config);
  const auto stats = compute_stats(config, panel);
  const auto fits = fit_all(config, panel, err);
  const auto fitted = successful(fits);
  const bool fit_complete = fitted.size() == fits.size();

  // Risk only runs on a complete fit stage; otherwise the document carries
  // the partial fits, labeled, and no risk section.
  std::vector<fhs::RiskReport> reports;
  if (fit_complete) reports = risk_all(config, fitted);

  json doc;
  doc["config_text"] = config.config_text;
  doc["spec"] = spec_json(config);
  doc["status"] = {{"stats", "ok"},
                   {"fit", fit_complete ? "ok" : (fitted.empty() ? "failed" : "incomplete")},
                   {"risk", fit_complete ? "ok" : "skipped"}};
  doc["stats"] = stats_json(config, panel, stats);
  doc["fits"] = fits_json(fits);
  doc["risk"] = fit_complete ? risk_json(reports) : json(nullptr);

  std::ostringstream text;
  text << "riskcli report\nseed " << config.risk.seed << "\n\nconfig (verbatim):\n"
       << config.config_text;
  if (!config.config_text.empty() && config.config_text.back() != '\n') text << '\n';
  text << "\nstages: stats " << doc["status"]["stats"].get<std::string>() << ", fit "
       << doc["status"]["fit"].get<std::string>() << ", risk "
       << doc["status"]["risk"].get<std::string>() << "\n\n";
  stats_text(text, config, panel, stats);
  text << '\n';
  fits_text(text, config, fits);
  if (fit_complete) {
    text << '\n';
    risk_text(text, config, reports);
  } else {
    text << "\nrisk stage skipped: fit stage incomplete\n";
  }

  const std::string json_text = doc.dump(2) + "\n";
  write_file(config.output_dir / "report.json", json_text);
  write_file(config.output_dir / "report.txt", text.str());
  out << (config.format == Format::Json ? json_text : text.str());
  return fit_complete ? kOk : kFitFailure;
}

// ---- command line --------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volatility-filtered VaR and Expected Shortfall", "riskcli"};
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> horizon;
  std::vector<double> levels;
  std::string format;
  bool refit = false;

  app.add_option("command", command, "stats | fit | risk | report")
      ->required()
      ->check(CLI::IsMember({"stats", "fit", "risk", "report"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--seed", seed, "master RNG seed (fallback: RISKCLI_SEED)");
  app.add_option("--trials", trials, "simulated paths per asset");
  app.add_option("--horizon", horizon, "horizon in trading days");
  app.add_option("--levels", levels, "tail probabilities, comma separated")->delimiter(',');
  app.add_option("--format", format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_flag("--refit", refit, "fit missing models instead of failing (risk)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "riskcli: " << e.what() << '\n' << app.help();
    return kInputError;
  }

  try {
    RunConfig config = load_config(config_path);
    Overrides o;
    o.seed = seed;
    o.trials = trials;
    o.horizon = horizon;
    if (!levels.empty()) o.levels = levels;
    if (!format.empty()) o.format = parse_format(format);
    if (const char* env = std::getenv("RISKCLI_SEED")) o.env_seed = env;
    apply_overrides(config, o);

    if (command == "stats") return cmd_stats(config, out, err);
    if (command == "fit") return cmd_fit(config, out, err);
    if (command == "risk") return cmd_risk(config, refit, out, err);
    return cmd_report(config, out, err);
  } catch (const Error& e) {
    err << "riskcli: " << e.what() << '\n';
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "riskcli: " << e.what() << '\n';
    return kInputError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"riskcli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace fhsrisk::cli
