#include "ptts/json_io.hpp"

#include <json.hpp>

namespace ptts {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("unexpected JSON layout: ") + e.what());
  }
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  ordered_json j;
  j["n_addresses"] = s.n_addresses;
  j["total_supply"] = s.total_supply;
  j["deployer"] = s.deployer;
  j["seed"] = s.seed;
  j["transfers"] = ordered_json::array();
  for (const auto& t : s.transfers)
    j["transfers"].push_back({{"index", t.index}, {"from", t.from}, {"to", t.to}, {"amount", t.amount}});
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  const json j = parse(text);
  Scenario s = guarded([&] {
    Scenario s;
    s.n_addresses = j.at("n_addresses").get<std::size_t>();
    s.total_supply = j.at("total_supply").get<TokenAmount>();
    s.deployer = j.at("deployer").get<Address>();
    s.seed = j.value("seed", std::uint64_t{0});
    for (const auto& t : j.at("transfers"))
      s.transfers.push_back({t.at("index").get<std::size_t>(), t.at("from").get<Address>(), t.at("to").get<Address>(),
                             t.at("amount").get<TokenAmount>()});
    return s;
  });
  if (s.n_addresses < 2 || s.deployer >= s.n_addresses || s.total_supply == 0)
    throw std::invalid_argument("scenario header is inconsistent");
  s.true_balances = replay_balances(s);
  return s;
}

std::string leaked_to_json(const LeakedSet& l) {
  ordered_json j;
  j["ratio"] = l.ratio;
  j["indices"] = l.indices;
  return j.dump(2) + "\n";
}

LeakedSet leaked_from_json(const std::string& text) {
  const json j = parse(text);
  LeakedSet l = guarded([&] {
    LeakedSet l;
    l.ratio = j.at("ratio").get<double>();
    l.indices = j.at("indices").get<std::vector<std::size_t>>();
    return l;
  });
  std::sort(l.indices.begin(), l.indices.end());
  return l;
}

std::string attacker_view_to_json(const AttackerView& v) {
  ordered_json j;
  j["n_addresses"] = v.n_addresses;
  j["total_supply"] = v.total_supply;
  j["deployer"] = v.deployer;
  j["mint_known"] = v.mint_known;
  j["transfers"] = ordered_json::array();
  for (const auto& t : v.topology) {
    ordered_json row = {{"index", t.index}, {"from", t.from}, {"to", t.to}};
    auto it = v.leaked_amounts.find(t.index);
    row["amount"] = it == v.leaked_amounts.end() ? ordered_json(nullptr) : ordered_json(it->second);
    j["transfers"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

AttackerView attacker_view_from_json(const std::string& text) {
  const json j = parse(text);
  AttackerView v = guarded([&] {
    AttackerView v;
    v.n_addresses = j.at("n_addresses").get<std::size_t>();
    v.total_supply = j.at("total_supply").get<TokenAmount>();
    v.deployer = j.at("deployer").get<Address>();
    v.mint_known = j.value("mint_known", true);
    for (const auto& t : j.at("transfers")) {
      const auto index = t.at("index").get<std::size_t>();
      v.topology.push_back({index, t.at("from").get<Address>(), t.at("to").get<Address>()});
      if (t.contains("amount") && !t.at("amount").is_null()) v.leaked_amounts.emplace(index, t.at("amount").get<TokenAmount>());
    }
    return v;
  });
  v.validate();
  return v;
}

std::string transcript_to_json(const Transcript& t) {
  ordered_json j = ordered_json::array();
  for (const auto& e : t) {
    ordered_json publics = ordered_json::object();
    for (const auto& [name, hex] : e.public_inputs) publics[name] = hex;
    j.push_back({{"step_type", e.step_type},
                 {"sender", e.sender},
                 {"receiver", e.receiver},
                 {"public_inputs", std::move(publics)},
                 {"result", e.result}});
  }
  return j.dump(2) + "\n";
}

}  // namespace ptts
