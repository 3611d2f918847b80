#pragma once

#include <string>

#include "ptts/attack.hpp"
#include "ptts/protocol.hpp"
#include "ptts/scenario.hpp"

namespace ptts {

// All parsers throw std::invalid_argument on malformed or inconsistent input.

// {n_addresses, total_supply, deployer, seed, transfers: [{index, from, to, amount}]}
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);

// {ratio, indices: [...]}
std::string leaked_to_json(const LeakedSet& l);
LeakedSet leaked_from_json(const std::string& text);

// Scenario layout with `amount` null on every unleaked transfer, no seed, and
// a mint_known flag.
std::string attacker_view_to_json(const AttackerView& v);
AttackerView attacker_view_from_json(const std::string& text);

// [{step_type, sender, receiver, public_inputs: {name: hex}, result}]
std::string transcript_to_json(const Transcript& t);

}  // namespace ptts
