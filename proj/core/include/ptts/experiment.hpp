#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptts/attack.hpp"

namespace ptts {

struct ExperimentConfig {
  std::size_t n_addresses = 100;
  std::size_t n_transactions = 100;
  double leakage_ratio = 0.5;
  std::size_t runs = 20;
  std::uint64_t base_seed = 1;
  TokenAmount total_supply = 1'000'000;
  bool check_contiguity = true;
  std::size_t contiguity_samples = 9;
  bool hide_mint = false;
  std::size_t jobs = 1;
};

struct RunRow {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  BalanceRange range;
  Goodness goodness;
  TokenAmount true_balance = 0;
  bool in_range = false;
  bool contiguous = false;  // false also when contiguity checking is off
  double solve_seconds = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  Goodness avg_goodness;
  double avg_solve_time_seconds = 0.0;
  std::vector<RunRow> rows;  // run order
};

// Raised when a true balance falls outside its estimated range. Such a run
// would falsify the estimator, so the experiment stops instead of averaging.
class SoundnessViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Seeds for run r derive from base_seed + r. The leaked subset, target and
// contiguity probes each draw from their own stream so that, for a fixed run,
// changing the leakage ratio only extends the leaked set.
std::uint64_t run_seed(const ExperimentConfig& c, std::size_t run);
std::uint64_t leak_seed(std::uint64_t run_seed);
std::uint64_t target_seed(std::uint64_t run_seed);

// Single run, as run_experiment performs it.
RunRow run_once(const ExperimentConfig& c, std::size_t run);

ExperimentReport run_experiment(const ExperimentConfig& c);

struct SweepConfig {
  std::vector<std::size_t> address_counts;
  std::vector<std::size_t> transaction_counts;
  std::vector<double> leakage_ratios;
  std::size_t runs = 20;
  std::uint64_t base_seed = 1;
  TokenAmount total_supply = 1'000'000;
  bool check_contiguity = true;
  bool hide_mint = false;
  std::size_t jobs = 1;

  void validate() const;  // throws std::invalid_argument
};

// Cross product in config order: addresses, then transactions, then ratios.
std::vector<ExperimentReport> run_sweep(const SweepConfig& c);

// Shortest decimal that round-trips, e.g. 0.5 -> "0.5".
std::string format_ratio(double r);

void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const ExperimentReport& r);
void write_detail_header(std::ostream& out);
void write_detail_rows(std::ostream& out, const ExperimentReport& r);

}  // namespace ptts
