#pragma once

// Experiment configuration (flat key=value text) and the CSV/JSON report
// writers. Every output embeds the full effective config and the artifact
// version; doubles are printed in shortest round-trip form so identical
// configs produce byte-identical files.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "benford/benford_stats.hpp"
#include "benford/mf_spec.hpp"
#include "benford/modforms.hpp"
#include "benford/nt_core.hpp"
#include "benford/pretend.hpp"

namespace benford {

struct ExperimentConfig {
  std::string spec       = "dk:2";
  u64 n                  = 1'000'000;   // table length for digits/weyl
  int k                  = 1;           // digit string length
  int ell                = 1;
  int ell_max            = 1;
  double alpha           = 0.0;
  double alpha_lo        = -40.0;
  double alpha_hi        = 40.0;
  int alpha_steps        = 4001;
  double slope_threshold = 0.05;
  u64 limit              = 10'000'000;  // prime / sieve limit
  u64 x                  = 1'000'000;   // prime bound (satotate, mertens)
  int bins               = 40;
  std::string checkpoints = "auto";     // or comma-separated values
  std::string out        = "";          // empty: stdout
  std::string format     = "csv";       // csv | json
  u64 seed               = 20260810;
  int threads            = 0;           // 0: library default

  bool operator==(const ExperimentConfig&) const = default;
};

// One "key = value" per line, '#' comments. Unknown keys are rejected.
std::map<std::string, std::string> parse_config_entries(
    const std::string& text);
void apply_config_entries(ExperimentConfig& cfg,
                          const std::map<std::string, std::string>& entries);
// Emits every field; parse(write(cfg)) reproduces cfg exactly.
std::string write_config(const ExperimentConfig& cfg);

// Shortest decimal string that parses back to exactly this double.
std::string format_double(double v);

std::vector<double> parse_checkpoint_list(const std::string& text);

void write_digit_report(std::ostream& os, const DigitReport& rep,
                        const ExperimentConfig& cfg);
void write_weyl_series(std::ostream& os, const WeylSeries& ws,
                       const ExperimentConfig& cfg);
void write_distance_curve(std::ostream& os, const DistanceCurve& curve,
                          const ExperimentConfig& cfg);
void write_verdict(std::ostream& os, const Verdict& verdict,
                   const ExperimentConfig& cfg);  // json or per-alpha csv
void write_tau_csv(std::ostream& os, const TauSeries& series, u64 n,
                   const ExperimentConfig& cfg);
void write_histogram(std::ostream& os, const SatoTateHistogram& hist,
                     const ExperimentConfig& cfg);
void write_prime_sum(std::ostream& os, const PrimeSumSeries& series,
                     const ExperimentConfig& cfg);

}  // namespace benford
