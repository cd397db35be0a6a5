#pragma once

#include "primbase/manifest.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace primbase {

inline constexpr const char* kToolVersion = "primbase 1.0.0";

struct ReportDocument {
  std::string manifest;
  std::uint64_t seed = kDefaultSeed;
  std::vector<CaseResult> cases;
  std::vector<std::string> certificate_paths;  // parallel to cases; empty when none
  bool show_timings = false;

  bool any_certified_fail() const {
    for (const auto& c : cases)
      if (c.mode == "certified" && c.verdict == Verdict::Fail) return true;
    return false;
  }
  int exit_code() const { return any_certified_fail() ? 1 : 0; }
};

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Runs every entry. Certificates of certified PASS rows are written to
/// `cert_dir/<case_id>.cert` when a directory is given.
inline ReportDocument run_manifest(const std::vector<CaseManifestEntry>& entries, std::uint64_t seed,
                                   const std::string& cert_dir = "", const std::string& manifest_name = "") {
  ReportDocument doc;
  doc.manifest = manifest_name;
  doc.seed = seed;
  if (!cert_dir.empty()) std::filesystem::create_directories(cert_dir);
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    CaseResult r = run_case(e, seed);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string path;
    if (r.certificate && !cert_dir.empty()) {
      path = (std::filesystem::path(cert_dir) / (e.case_id + ".cert")).string();
      std::ofstream out(path);
      if (!out) throw InputError("cannot write certificate '" + path + "'");
      out << *r.certificate;
    }
    doc.cases.push_back(std::move(r));
    doc.certificate_paths.push_back(path);
  }
  return doc;
}

inline void write_report_text(std::ostream& os, const ReportDocument& doc, const std::string& timestamp) {
  os << "# generated " << timestamp << "\n";
  os << "tool: " << kToolVersion << "\n";
  if (!doc.manifest.empty()) os << "manifest: " << doc.manifest << "\n";
  os << "seed: " << doc.seed << "\n\n";
  std::size_t pass = 0, fail = 0, inc = 0;
  for (std::size_t i = 0; i < doc.cases.size(); ++i) {
    const auto& c = doc.cases[i];
    os << "[" << to_string(c.verdict) << "] " << c.case_id << " (" << c.mode << "): " << c.claim << " "
       << c.claimed_value << "\n";
    if (!c.observed.empty()) os << "    observed: " << c.observed << "\n";
    for (const auto& d : c.details) os << "    " << d << "\n";
    if (!doc.certificate_paths[i].empty()) os << "    certificate: " << doc.certificate_paths[i] << "\n";
    if (doc.show_timings) os << "    seconds: " << std::fixed << std::setprecision(3) << c.seconds << "\n";
    (c.verdict == Verdict::Pass ? pass : c.verdict == Verdict::Fail ? fail : inc)++;
  }
  os << "\nsummary: " << pass << " PASS, " << fail << " FAIL, " << inc << " INCONCLUSIVE\n";
}

inline nlohmann::json report_json(const ReportDocument& doc, const std::string& timestamp) {
  nlohmann::json j;
  j["generated"] = timestamp;
  j["tool"] = kToolVersion;
  j["manifest"] = doc.manifest;
  j["seed"] = doc.seed;
  j["cases"] = nlohmann::json::array();
  for (std::size_t i = 0; i < doc.cases.size(); ++i) {
    const auto& c = doc.cases[i];
    nlohmann::json e{{"case_id", c.case_id},   {"claim", c.claim},       {"value", c.claimed_value},
                     {"mode", c.mode},         {"verdict", to_string(c.verdict)}, {"observed", c.observed},
                     {"details", c.details}};
    if (!doc.certificate_paths[i].empty()) e["certificate"] = doc.certificate_paths[i];
    if (doc.show_timings) e["seconds"] = c.seconds;
    j["cases"].push_back(std::move(e));
  }
  j["exit_code"] = doc.exit_code();
  return j;
}

} // namespace primbase
