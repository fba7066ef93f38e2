#include "fhsrisk/json_io.hpp"

namespace fhsrisk::diagnostics {

void to_json(nlohmann::json& j, const DiagnosticsRow& row) {
  j = nlohmann::json{{"n", row.n},
                     {"mean", row.mean},
                     {"std", row.std},
                     {"skewness", row.skewness},
                     {"skew_p", row.skew_p},
                     {"kurtosis", row.kurtosis},
                     {"kurt_p", row.kurt_p},
                     {"jb_stat", row.jb_stat},
                     {"jb_p", row.jb_p},
                     {"arch_stat", row.arch_stat},
                     {"arch_p", row.arch_p},
                     {"arch_f_stat", row.arch_f_stat},
                     {"lb_stat", row.lb_stat},
                     {"lb_p", row.lb_p},
                     {"lb2_stat", row.lb2_stat},
                     {"lb2_p", row.lb2_p},
                     {"lags", row.lags}};
}

void from_json(const nlohmann::json& j, DiagnosticsRow& row) {
  j.at("n").get_to(row.n);
  j.at("mean").get_to(row.mean);
  j.at("std").get_to(row.std);
  j.at("skewness").get_to(row.skewness);
  j.at("skew_p").get_to(row.skew_p);
  j.at("kurtosis").get_to(row.kurtosis);
  j.at("kurt_p").get_to(row.kurt_p);
  j.at("jb_stat").get_to(row.jb_stat);
  j.at("jb_p").get_to(row.jb_p);
  j.at("arch_stat").get_to(row.arch_stat);
  j.at("arch_p").get_to(row.arch_p);
  j.at("arch_f_stat").get_to(row.arch_f_stat);
  j.at("lb_stat").get_to(row.lb_stat);
  j.at("lb_p").get_to(row.lb_p);
  j.at("lb2_stat").get_to(row.lb2_stat);
  j.at("lb2_p").get_to(row.lb2_p);
  j.at("lags").get_to(row.lags);
}

void to_json(nlohmann::json& j, const CorrelationMatrix& corr) {
  j = nlohmann::json{{"asset_ids", corr.asset_ids}, {"values", corr.values}};
}

} // namespace fhsrisk::diagnostics

namespace fhsrisk::garch {

void to_json(nlohmann::json& j, const GjrParams& p) {
  j = nlohmann::json::object();
  const auto values = p.to_array();
  for (std::size_t i = 0; i < GjrParams::kCount; ++i) j[GjrParams::kNames[i]] = values[i];
}

void from_json(const nlohmann::json& j, GjrParams& p) {
  std::array<double, GjrParams::kCount> values{};
  for (std::size_t i = 0; i < GjrParams::kCount; ++i)
    j.at(GjrParams::kNames[i]).get_to(values[i]);
  p = GjrParams::from_array(values);
}

void to_json(nlohmann::json& j, const FitResult& fit) {
  j = nlohmann::json{
      {"asset_id", fit.asset_id},
      {"params", fit.params},
      {"nll", fit.nll},
      {"log_likelihood", fit.filter.log_likelihood},
      {"converged", fit.converged},
      {"iterations", fit.iterations},
      {"evaluations", fit.evaluations},
      {"best_start", fit.best_start},
      {"persistence", fit.params.persistence()},
      {"innovation_mean", fit.innovation_mean},
      {"innovation_variance", fit.innovation_variance},
      {"residual_diagnostics", fit.residual_diagnostics},
      {"warnings", fit.warnings},
      {"filter",
       {{"sigma2", fit.filter.sigma2},
        {"eps", fit.filter.eps},
        {"z", fit.filter.z},
        {"last_return", fit.filter.last_return}}},
  };
}

void from_json(const nlohmann::json& j, FitResult& fit) {
  j.at("asset_id").get_to(fit.asset_id);
  j.at("params").get_to(fit.params);
  j.at("nll").get_to(fit.nll);
  j.at("converged").get_to(fit.converged);
  j.at("iterations").get_to(fit.iterations);
  j.at("evaluations").get_to(fit.evaluations);
  j.at("best_start").get_to(fit.best_start);
  j.at("innovation_mean").get_to(fit.innovation_mean);
  j.at("innovation_variance").get_to(fit.innovation_variance);
  j.at("residual_diagnostics").get_to(fit.residual_diagnostics);
  j.at("warnings").get_to(fit.warnings);
  const auto& f = j.at("filter");
  f.at("sigma2").get_to(fit.filter.sigma2);
  f.at("eps").get_to(fit.filter.eps);
  f.at("z").get_to(fit.filter.z);
  f.at("last_return").get_to(fit.filter.last_return);
  j.at("log_likelihood").get_to(fit.filter.log_likelihood);
}

} // namespace fhsrisk::garch

namespace fhsrisk::fhs {

void to_json(nlohmann::json& j, const RiskSpec& spec) {
  j = nlohmann::json{{"levels", spec.levels},
                     {"horizon", spec.horizon},
                     {"trials", spec.trials},
                     {"seed", spec.seed}};
}

void to_json(nlohmann::json& j, const RiskReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"level", e.level},
                       {"var", e.var},
                       {"es", e.es},
                       {"var_pct", 100.0 * e.var},
                       {"es_pct", 100.0 * e.es}});
  j = nlohmann::json{{"asset_id", report.asset_id},
                     {"horizon", report.horizon},
                     {"trials", report.trials},
                     {"seed", report.seed},
                     {"entries", entries}};
  if (report.basel_gap)
    j["basel_gap"] = *report.basel_gap;
  else
    j["basel_gap"] = nullptr;
}

} // namespace fhsrisk::fhs
