#include "cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptts/experiment.hpp"
#include "ptts/json_io.hpp"

namespace ptts::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text << '\n';
  if (!f.flush()) throw std::runtime_error("cannot write " + path.string());
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PTTS_SEED")) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0' || errno != 0 || *env == '-') throw UsageError("PTTS_SEED is not an unsigned integer");
    return v;
  }
  return 1;
}

std::size_t default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void check_ratio(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw UsageError("--leakage must lie in [0, 1]");
}

struct SimulateArgs {
  std::size_t addresses = 10;
  std::size_t transactions = 30;
  TokenAmount supply = 1'000'000;
  std::optional<std::uint64_t> seed;
  std::optional<double> leakage;
  bool hide_mint = false;
  std::string out = ".";
};

int simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.addresses < 2) throw UsageError("--addresses must be at least 2");
  if (a.supply == 0) throw UsageError("--supply must be positive");
  if (a.leakage) check_ratio(*a.leakage);
  const std::uint64_t seed = resolve_seed(a.seed);

  const Scenario s = generate_scenario(a.addresses, a.transactions, a.supply, seed);
  const ReplayResult replay = replay_on_ledger(s);

  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  write_file(dir / "scenario.json", scenario_to_json(s));
  write_file(dir / "transcript.json", transcript_to_json(replay.transcript));
  out << "wrote " << (dir / "scenario.json").string() << "\n" << "wrote " << (dir / "transcript.json").string() << "\n";
  if (a.leakage) {
    const LeakedSet leaked = select_leaked(s, *a.leakage, leak_seed(seed));
    write_file(dir / "view.json", attacker_view_to_json(make_attacker_view(s, leaked, !a.hide_mint)));
    out << "wrote " << (dir / "view.json").string() << "\n";
  }
  return kOk;
}

struct AttackArgs {
  std::string scenario;
  std::string view;
  std::optional<Address> target;
  std::optional<double> leakage;
  std::optional<std::uint64_t> seed;
  bool no_contiguity = false;
  bool hide_mint = false;
  std::string out;
};

int attack(const AttackArgs& a, std::ostream& out, std::ostream& err) {
  if (a.scenario.empty() == a.view.empty()) throw UsageError("give exactly one of --scenario or --view");
  if (!a.target) throw UsageError("--target is required");
  const std::uint64_t seed = resolve_seed(a.seed);

  AttackerView view;
  std::optional<Scenario> truth;
  if (!a.view.empty()) {
    if (a.leakage) throw UsageError("--leakage applies to --scenario only");
    try {
      view = attacker_view_from_json(read_file(a.view));
    } catch (const std::invalid_argument& e) {
      throw UsageError(a.view + ": " + e.what());
    }
    if (a.hide_mint) view.mint_known = false;
  } else {
    if (!a.leakage) throw UsageError("--leakage is required with --scenario");
    check_ratio(*a.leakage);
    try {
      truth = scenario_from_json(read_file(a.scenario));
    } catch (const std::invalid_argument& e) {
      throw UsageError(a.scenario + ": " + e.what());
    }
    view = make_attacker_view(*truth, select_leaked(*truth, *a.leakage, leak_seed(seed)), !a.hide_mint);
  }
  const Address target = *a.target;
  if (target >= view.n_addresses)
    throw UsageError("--target " + std::to_string(target) + " outside 0.." + std::to_string(view.n_addresses - 1));

  EstimateStats stats;
  const BalanceRange r = estimate_balance_range(view, target, &stats);
  const Goodness g = goodness(r, view.total_supply);
  std::optional<bool> contiguous;
  if (!a.no_contiguity) contiguous = verify_contiguity(view, target, r, 9, derive_seed(seed, 12));

  out << "target,min,max,goodness\n" << target << ',' << r.min_value << ',' << r.max_value << ',' << format_fixed(g, 2) << "\n";

  if (!a.out.empty()) {
    json j;
    j["target"] = target;
    j["min"] = r.min_value;
    j["max"] = r.max_value;
    j["goodness"] = format_fixed(g, 6);
    j["total_supply"] = view.total_supply;
    j["leaked_transfers"] = view.leaked_amounts.size();
    j["transfers"] = view.topology.size();
    j["mint_known"] = view.mint_known;
    j["solve_time_s"] = stats.solve_seconds;
    j["contiguous"] = contiguous ? json(*contiguous) : json(nullptr);
    if (truth) {
      j["leakage_ratio"] = *a.leakage;
      j["seed"] = seed;
      j["true_balance"] = truth->true_balances[target];
      j["in_range"] = r.contains(truth->true_balances[target]);
    }
    write_file(a.out, j.dump(2));
  }

  if (contiguous && !*contiguous) {
    err << "contiguity check failed for target " << target << "\n";
    return kFailure;
  }
  if (truth && !r.contains(truth->true_balances[target])) {
    err << "true balance lies outside the estimated range\n";
    return kFailure;
  }
  return kOk;
}

struct SweepArgs {
  std::vector<std::size_t> addresses;
  std::vector<std::size_t> transactions;
  std::vector<double> leakage;
  std::size_t runs = 20;
  TokenAmount supply = 1'000'000;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 0;
  bool no_contiguity = false;
  bool hide_mint = false;
  std::string out;
  std::string detail;
};

int sweep(const SweepArgs& a, std::ostream& out) {
  SweepConfig c;
  c.address_counts = a.addresses;
  c.transaction_counts = a.transactions;
  c.leakage_ratios = a.leakage;
  c.runs = a.runs;
  c.base_seed = resolve_seed(a.seed);
  c.total_supply = a.supply;
  c.check_contiguity = !a.no_contiguity;
  c.hide_mint = a.hide_mint;
  c.jobs = a.jobs == 0 ? default_jobs() : a.jobs;
  for (double r : c.leakage_ratios) check_ratio(r);
  for (std::size_t n : c.address_counts)
    if (n < 2) throw UsageError("--addresses values must be at least 2");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  // Open outputs up front so an unwritable path fails before any work.
  std::ofstream summary_file, detail_file;
  if (!a.out.empty()) {
    summary_file.open(a.out, std::ios::trunc);
    if (!summary_file) throw std::runtime_error("cannot write " + a.out);
  }
  if (!a.detail.empty()) {
    detail_file.open(a.detail, std::ios::trunc);
    if (!detail_file) throw std::runtime_error("cannot write " + a.detail);
  }

  const std::vector<ExperimentReport> reports = run_sweep(c);

  std::ostream& summary = a.out.empty() ? out : summary_file;
  write_summary_header(summary);
  for (const auto& r : reports) write_summary_row(summary, r);
  if (!summary.flush()) throw std::runtime_error("cannot write " + a.out);
  if (!a.detail.empty()) {
    write_detail_header(detail_file);
    for (const auto& r : reports) write_detail_rows(detail_file, r);
    if (!detail_file.flush()) throw std::runtime_error("cannot write " + a.detail);
  }

  for (const auto& r : reports)
    for (const auto& row : r.rows)
      if (c.check_contiguity && !row.contiguous) throw std::runtime_error("contiguity check failed in sweep");
  return kOk;
}

int oracle_check(std::size_t instances, const std::optional<std::uint64_t>& seed_flag, const SolverHooks& hooks,
                 std::ostream& out, std::ostream& err) {
  if (instances == 0) throw UsageError("--instances must be positive");
  const OracleCheckReport r = run_oracle_check(instances, resolve_seed(seed_flag), hooks);
  out << "instances=" << r.instances << " networks=" << r.network_instances << " ranges=" << r.range_instances
      << " mismatches=" << r.mismatches << "\n";
  if (!r.passed()) {
    err << r.first_failure << "\n";
    return kFailure;
  }
  out << "ok\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const SolverHooks& hooks) {
  CLI::App app{"Private token transfer simulator and balance-range attack"};
  app.name("ptts");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Generate a scenario and replay it through the ledger");
  s->add_option("--addresses", sim.addresses, "Number of addresses")->capture_default_str();
  s->add_option("--transactions", sim.transactions, "Number of transfers")->capture_default_str();
  s->add_option("--supply", sim.supply, "Total token supply")->capture_default_str();
  s->add_option("--seed", sim.seed, "Seed (falls back to PTTS_SEED, then 1)");
  s->add_option("--leakage", sim.leakage, "Also write an attacker view with this leaked fraction");
  s->add_flag("--hide-mint", sim.hide_mint, "Hide the mint amount in the attacker view");
  s->add_option("--out", sim.out, "Output directory")->capture_default_str();

  AttackArgs atk;
  auto* a = app.add_subcommand("attack", "Estimate a target's balance range");
  a->add_option("--scenario", atk.scenario, "Scenario JSON (ground truth)");
  a->add_option("--view", atk.view, "Attacker view JSON");
  a->add_option("--target", atk.target, "Target address");
  a->add_option("--leakage", atk.leakage, "Leaked fraction of transfers, with --scenario");
  a->add_option("--seed", atk.seed, "Seed for the leaked subset");
  a->add_flag("--no-contiguity", atk.no_contiguity, "Skip the contiguity probes");
  a->add_flag("--hide-mint", atk.hide_mint, "Treat the mint amount as unknown");
  a->add_option("--out", atk.out, "JSON report path");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Average goodness over a grid of configurations");
  w->add_option("--addresses", sw.addresses, "Comma-separated address counts")->delimiter(',')->required();
  w->add_option("--transactions", sw.transactions, "Comma-separated transfer counts")->delimiter(',')->required();
  w->add_option("--leakage", sw.leakage, "Comma-separated leaked fractions")->delimiter(',')->required();
  w->add_option("--runs", sw.runs, "Runs per cell")->capture_default_str();
  w->add_option("--supply", sw.supply, "Total token supply")->capture_default_str();
  w->add_option("--seed", sw.seed, "Base seed");
  w->add_option("--jobs", sw.jobs, "Worker threads (default: all cores)");
  w->add_flag("--no-contiguity", sw.no_contiguity, "Skip the contiguity probes");
  w->add_flag("--hide-mint", sw.hide_mint, "Treat the mint amount as unknown");
  w->add_option("--out", sw.out, "Summary CSV path (default: stdout)");
  w->add_option("--detail", sw.detail, "Per-run CSV path");

  std::size_t instances = 50;
  std::optional<std::uint64_t> oracle_seed;
  auto* o = app.add_subcommand("oracle-check", "Cross-check the solver against brute force");
  o->add_option("--instances", instances, "Random instances")->capture_default_str();
  o->add_option("--seed", oracle_seed, "Seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // exit() renders help for the right subcommand, or the error message.
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (s->parsed()) return simulate(sim, out);
    if (a->parsed()) return attack(atk, out, err);
    if (w->parsed()) return sweep(sw, out);
    return oracle_check(instances, oracle_seed, hooks, out, err);
  } catch (const UsageError& e) {
    err << "ptts: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "ptts: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace ptts::cli
