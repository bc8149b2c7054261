#include "fuserl/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fuserl/util/errors.hpp"

namespace fuserl::cli {

namespace {

std::string num(double v, const char* fmt = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string optNum(const std::optional<double>& v) { return v ? num(*v) : "nan"; }

const EvaluationRow& baselineRow(const std::vector<EvaluationRow>& rows) {
  for (const auto& r : rows) {
    if (r.checkpoint == kBaselineRowName) return r;
  }
  throw MissingArtifactError("evaluation report lacks the constant-baseline row",
                             {kBaselineRowName});
}

double deltaPct(double value, double base) {
  if (base == 0.0) return 0.0;
  return 100.0 * (value - base) / base;
}

}  // namespace

Json evaluationReportJson(const std::vector<EvaluationRow>& rows, const std::string& datasetPath) {
  Json rowsJson = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["checkpoint"] = r.checkpoint;
    row["ncis"] = r.ncis ? Json(*r.ncis) : Json(nullptr);
    row["mtf_gauc"] = r.mtfGauc ? Json(*r.mtfGauc) : Json(nullptr);
    row["rollout_return"] = r.rolloutReturn;
    row["uvc"] = r.uvc;
    row["udt"] = r.udt;
    row["ci_low"] = r.ciLow;
    row["ci_high"] = r.ciHigh;
    row["sessions"] = r.sessions;
    rowsJson.push_back(std::move(row));
  }
  return Json{{"schema_version", 1},
              {"kind", "fuserl-evaluation"},
              {"dataset", datasetPath},
              {"rows", rowsJson}};
}

std::vector<EvaluationRow> evaluationRowsFromJson(const Json& j) {
  std::vector<EvaluationRow> rows;
  for (const Json& rj : j.at("rows")) {
    EvaluationRow r;
    r.checkpoint = rj.at("checkpoint").get<std::string>();
    if (!rj.at("ncis").is_null()) r.ncis = rj.at("ncis").get<double>();
    if (!rj.at("mtf_gauc").is_null()) r.mtfGauc = rj.at("mtf_gauc").get<double>();
    r.rolloutReturn = rj.at("rollout_return").get<double>();
    r.uvc = rj.at("uvc").get<double>();
    r.udt = rj.at("udt").get<double>();
    r.ciLow = rj.at("ci_low").get<double>();
    r.ciHigh = rj.at("ci_high").get<double>();
    r.sessions = rj.at("sessions").get<int>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string evaluationCsv(const std::vector<EvaluationRow>& rows) {
  std::ostringstream out;
  out << "checkpoint,ncis,mtf_gauc,rollout_return,uvc,udt,ci_low,ci_high\n";
  for (const auto& r : rows) {
    out << r.checkpoint << ',' << optNum(r.ncis) << ',' << optNum(r.mtfGauc) << ','
        << num(r.rolloutReturn) << ',' << num(r.uvc) << ',' << num(r.udt) << ',' << num(r.ciLow)
        << ',' << num(r.ciHigh) << "\n";
  }
  return out.str();
}

std::string reportOnlineCsv(const std::vector<EvaluationRow>& rows) {
  const EvaluationRow& base = baselineRow(rows);
  std::ostringstream out;
  out << "policy,return,return_delta_pct,uvc,uvc_delta_pct,udt,udt_delta_pct,ci_low,ci_high\n";
  for (const auto& r : rows) {
    out << r.checkpoint << ',' << num(r.rolloutReturn) << ','
        << num(deltaPct(r.rolloutReturn, base.rolloutReturn), "%.4f") << ',' << num(r.uvc) << ','
        << num(deltaPct(r.uvc, base.uvc), "%.4f") << ',' << num(r.udt) << ','
        << num(deltaPct(r.udt, base.udt), "%.4f") << ',' << num(r.ciLow) << ',' << num(r.ciHigh)
        << "\n";
  }
  return out.str();
}

std::string reportOfflineCsv(const std::vector<EvaluationRow>& rows) {
  std::ostringstream out;
  out << "policy,ncis,mtf_gauc\n";
  for (const auto& r : rows) {
    out << r.checkpoint << ',' << optNum(r.ncis) << ',' << optNum(r.mtfGauc) << "\n";
  }
  return out.str();
}

std::string reportMarkdown(const std::vector<EvaluationRow>& rows, const Json* lineage,
                           const Json* efficiency) {
  const EvaluationRow& base = baselineRow(rows);
  std::ostringstream out;
  out << "# Evaluation report\n\n";
  out << "Baseline for percentage deltas: `" << kBaselineRowName << "` (constant-action policy).\n\n";

  out << "## Simulated A/B rollouts\n\n";
  out << "| policy | return | Δ return | UVC | Δ UVC | UDT | Δ UDT | 95% CI (return) |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.checkpoint << " | " << num(r.rolloutReturn, "%.4f") << " | "
        << num(deltaPct(r.rolloutReturn, base.rolloutReturn), "%+.2f") << "% | "
        << num(r.uvc, "%.4f") << " | " << num(deltaPct(r.uvc, base.uvc), "%+.2f") << "% | "
        << num(r.udt, "%.2f") << " | " << num(deltaPct(r.udt, base.udt), "%+.2f") << "% | ["
        << num(r.ciLow, "%.4f") << ", " << num(r.ciHigh, "%.4f") << "] |\n";
  }

  out << "\n## Offline estimates\n\n";
  out << "| policy | NCIS | MTF-GAUC |\n|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.checkpoint << " | " << optNum(r.ncis) << " | " << optNum(r.mtfGauc) << " |\n";
  }

  if (efficiency) {
    out << "\nExploration efficiency (fraction of noise mass inside the logging box): "
        << "gaussian joint rate " << num(efficiency->at("gaussian_joint_rate").get<double>(), "%.5f")
        << ", measured bounded/gaussian ratio " << num(efficiency->at("measured_ratio").get<double>(), "%.0f")
        << "x vs the nominal " << num(efficiency->at("nominal_ratio").get<double>(), "%.0f")
        << "x halving argument.\n";
  }

  if (lineage && lineage->contains("rounds")) {
    out << "\n## Progressive rounds\n\n";
    out << "| round | eval mean return |\n|---|---|\n";
    for (const Json& row : lineage->at("rounds")) {
      out << "| " << row.at("round").get<int>() << " | "
          << num(row.at("eval").at("meanReturn").get<double>(), "%.4f") << " |\n";
    }
  }
  return out.str();
}

}  // namespace fuserl::cli
