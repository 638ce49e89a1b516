#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmeff/config.h"
#include "kmeff/stats.h"

namespace kmeff::harness {

struct SummaryEntry {
  std::string key;
  double value = 0.0;
  std::optional<double> half_width;  // 3-sigma band when the value is an estimate
};

struct Note {
  std::string key;
  std::string text;
};

struct Verdict {
  std::string id;
  bool pass = false;
  double margin = 0.0;  // >= 0 exactly when pass, for inequality verdicts
  std::string detail;
};

/// One experiment's config echo, revision, summary statistics, per-sample
/// rows and verdicts.
struct ExperimentReport {
  std::string experiment;
  ExperimentConfig config;
  std::string revision;
  std::vector<SummaryEntry> summary;
  std::vector<Note> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Verdict> verdicts;

  void add(const std::string& key, double value);
  void add(const std::string& key, const stats::Estimate& estimate);
  void note(const std::string& key, const std::string& text);
  void verdict(const std::string& id, bool pass, double margin, const std::string& detail = "");

  bool all_pass() const;
  /// Summary value by key; throws std::out_of_range when absent.
  double value(const std::string& key) const;
  const Verdict& find_verdict(const std::string& id) const;
};

/// report.json contents: config, seed, revision, summaries, notes, verdicts
/// and the sample column names.
std::string report_json(const ExperimentReport& report);

/// samples.csv contents: header row, then one row per sample, %.17g.
std::string samples_csv(const ExperimentReport& report);

/// Writes report.json and samples.csv into `dir` (created if missing).
/// I/O failures throw std::runtime_error naming the path.
void write_report(const ExperimentReport& report, const std::string& dir);

}  // namespace kmeff::harness
