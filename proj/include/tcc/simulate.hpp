#ifndef TCC_SIMULATE_HPP
#define TCC_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tcc/amp_decoder.hpp"
#include "tcc/bp_decoder.hpp"
#include "tcc/trellis.hpp"
#include "tcc/word.hpp"

namespace tcc {

/// Monte Carlo sweep description. Mirrors the flat key=value config file:
/// code, channels (comma list of channel specs), decoders (amp/bp/ml),
/// trials, seed, raw_out, agg_out, oracle_compare, all_ones, plus decoder
/// parameters kappa, delta_max, rho_grid, max_iter, backtrack_limit,
/// bp_max_iter, bp_damping.
struct SimConfig {
  std::string code_file;
  std::vector<std::string> channel_specs;
  std::vector<std::string> decoders = {"amp"};
  int trials = 0;
  std::uint64_t base_seed = 0;
  std::string raw_out = "raw.csv";
  std::string agg_out = "aggregate.csv";
  bool oracle_compare = false;  // auto-disabled for n > 20
  bool all_ones = false;        // send the all-(+1) word instead of sampling
  DecoderConfig amp;
  BpConfig bp;
};

SimConfig parse_sim_config(const std::string& text);
SimConfig load_sim_config(const std::string& path);

struct TrialRecord {
  std::string sweep;  // channel spec of the sweep point
  int trial = 0;
  std::string decoder;
  DecodeStatus status = DecodeStatus::iteration_limit;
  int iterations = 0;
  int bit_errors = 0;
  bool frame_error = false;
  int ml_match = -1;  // -1 when the oracle comparison is off
  double final_j = 0;
};

struct AggregateRow {
  std::string sweep;
  std::string decoder;
  int trials = 0;
  double fer = 0, fer_lo = 0, fer_hi = 0;
  double ber = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<AggregateRow> aggregates;
};

/// 95% Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(int k, int n);

/// Deterministic per-trial stream: every (seed, sweep, trial) triple gets an
/// independent stream regardless of execution order.
std::uint64_t trial_seed(std::uint64_t base_seed, int sweep_index, int trial_index);

/// Uniform member of the intersection, by enumeration for n <= 20 and by
/// uniform path sampling on the first constituent with rejection against the
/// second above that (capped, failing with a hint to use all_ones).
BinaryWord sample_codeword(const IntersectionCode& code, std::uint64_t seed);

std::vector<AggregateRow> aggregate_records(const std::vector<TrialRecord>& records, int n);

/// Runs the whole sweep: per trial picks a codeword, transmits, decodes with
/// every configured decoder, and records the outcome. Writes the raw and
/// aggregate CSVs (unless the paths are empty) and returns everything.
/// Deterministic given the config.
ExperimentResult run_experiment(const SimConfig& config);

void write_raw_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

}  // namespace tcc

#endif
