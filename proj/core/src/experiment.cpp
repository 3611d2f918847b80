#include "ptts/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "ptts/rng.hpp"

namespace ptts {

namespace {

constexpr std::uint64_t kLeakStream = 10;
constexpr std::uint64_t kTargetStream = 11;
constexpr std::uint64_t kContiguityStream = 12;

std::string seconds2(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", s);
  return buf;
}

// Runs body(i) for i in [0, count) on up to `jobs` threads. The first
// exception thrown by any worker is rethrown after all workers stop.
template <typename Body>
void parallel_for(std::size_t count, std::size_t jobs, Body body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i; !stop && (i = next++) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          stop = true;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::uint64_t run_seed(const ExperimentConfig& c, std::size_t run) { return c.base_seed + run; }
std::uint64_t leak_seed(std::uint64_t rs) { return derive_seed(rs, kLeakStream); }
std::uint64_t target_seed(std::uint64_t rs) { return derive_seed(rs, kTargetStream); }

RunRow run_once(const ExperimentConfig& c, std::size_t run) {
  RunRow row;
  row.run = run;
  row.seed = run_seed(c, run);

  const Scenario s = generate_scenario(c.n_addresses, c.n_transactions, c.total_supply, row.seed);
  const LeakedSet leaked = select_leaked(s, c.leakage_ratio, leak_seed(row.seed));
  const AttackerView view = make_attacker_view(s, leaked, !c.hide_mint);
  Rng pick(target_seed(row.seed));
  const auto target = static_cast<Address>(pick.index(c.n_addresses));

  EstimateStats stats;
  row.range = estimate_balance_range(view, target, &stats);
  row.solve_seconds = stats.solve_seconds;
  row.goodness = goodness(row.range, c.total_supply);
  row.true_balance = s.true_balances[target];
  row.in_range = row.range.contains(row.true_balance);
  if (!row.in_range) {
    throw SoundnessViolation("run " + std::to_string(run) + " seed " + std::to_string(row.seed) + ": true balance " +
                             std::to_string(row.true_balance) + " of address " + std::to_string(target) +
                             " outside [" + std::to_string(row.range.min_value) + ", " +
                             std::to_string(row.range.max_value) + "]");
  }
  if (c.check_contiguity)
    row.contiguous = verify_contiguity(view, target, row.range, c.contiguity_samples,
                                       derive_seed(row.seed, kContiguityStream));
  return row;
}

ExperimentReport run_experiment(const ExperimentConfig& c) {
  if (c.runs == 0) throw std::invalid_argument("runs must be at least 1");
  ExperimentReport report;
  report.config = c;
  report.rows.resize(c.runs);
  parallel_for(c.runs, c.jobs, [&](std::size_t i) { report.rows[i] = run_once(c, i); });

  std::int64_t numerator = 0;
  double seconds = 0.0;
  for (const auto& row : report.rows) {
    // Every run shares the supply as denominator.
    numerator += row.goodness.numerator() * (static_cast<std::int64_t>(c.total_supply) / row.goodness.denominator());
    seconds += row.solve_seconds;
  }
  report.avg_goodness = Goodness(numerator, static_cast<std::int64_t>(c.total_supply * c.runs));
  report.avg_solve_time_seconds = seconds / static_cast<double>(c.runs);
  return report;
}

void SweepConfig::validate() const {
  if (address_counts.empty() || transaction_counts.empty() || leakage_ratios.empty())
    throw std::invalid_argument("sweep lists must be non-empty");
  if (runs == 0) throw std::invalid_argument("runs must be at least 1");
  for (auto n : address_counts)
    if (n < 2) throw std::invalid_argument("address counts must be at least 2");
  for (auto r : leakage_ratios)
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("leakage ratios must lie in [0, 1]");
}

std::vector<ExperimentReport> run_sweep(const SweepConfig& c) {
  c.validate();
  std::vector<ExperimentReport> out;
  for (auto n : c.address_counts) {
    for (auto tx : c.transaction_counts) {
      for (auto ratio : c.leakage_ratios) {
        ExperimentConfig e;
        e.n_addresses = n;
        e.n_transactions = tx;
        e.leakage_ratio = ratio;
        e.runs = c.runs;
        e.base_seed = c.base_seed;
        e.total_supply = c.total_supply;
        e.check_contiguity = c.check_contiguity;
        e.hide_mint = c.hide_mint;
        e.jobs = c.jobs;
        out.push_back(run_experiment(e));
      }
    }
  }
  return out;
}

std::string format_ratio(double r) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, r);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(r);
}

void write_summary_header(std::ostream& out) {
  out << "n_addresses,n_transactions,leakage_ratio,runs,avg_goodness,avg_solve_time_s\n";
}

void write_summary_row(std::ostream& out, const ExperimentReport& r) {
  out << r.config.n_addresses << ',' << r.config.n_transactions << ',' << format_ratio(r.config.leakage_ratio) << ','
      << r.config.runs << ',' << format_fixed(r.avg_goodness, 2) << ',' << seconds2(r.avg_solve_time_seconds) << '\n';
}

void write_detail_header(std::ostream& out) {
  out << "n_addresses,n_transactions,leakage_ratio,run,seed,target,min,max,goodness,true_balance,in_range,"
         "contiguous,solve_time_s\n";
}

void write_detail_rows(std::ostream& out, const ExperimentReport& r) {
  for (const auto& row : r.rows) {
    out << r.config.n_addresses << ',' << r.config.n_transactions << ',' << format_ratio(r.config.leakage_ratio)
        << ',' << row.run << ',' << row.seed << ',' << row.range.target << ',' << row.range.min_value << ','
        << row.range.max_value << ',' << format_fixed(row.goodness, 2) << ',' << row.true_balance << ','
        << (row.in_range ? "true" : "false") << ',' << (row.contiguous ? "true" : "false") << ','
        << seconds2(row.solve_seconds) << '\n';
  }
}

}  // namespace ptts
