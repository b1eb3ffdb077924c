#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dcg {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  int size = 4;
  double amplitude = 0.2;
  double tolerance = 1e-9;
};

enum class TrialStatus { Pass, Fail, Skip };

struct TrialRecord {
  int index = 0;
  TrialStatus status = TrialStatus::Pass;
  double margin = 0.0;
  std::string note;  // witness on failure, reason on skip
};

/// One record per trial plus a summary; failures carry a reproducible
/// witness (the trial index keys its random stream). Serialization is
/// timestamp-free and byte-stable for a fixed config.
struct ExperimentReport {
  std::string name;
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  /// Optional tabular block (comma-separated cells), e.g. the
  /// oscillation-vs-size table of the decay experiment.
  std::vector<std::string> table;

  int passed() const;
  int failed() const;
  int skipped() const;
  /// Smallest margin over pass/fail trials; +inf when there are none.
  double worst_margin() const;

  void write_text(std::ostream& os) const;
  void write_csv(std::ostream& os) const;
};

std::string format_double(double x);

}  // namespace dcg
