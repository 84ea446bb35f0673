#pragma once

#include <json.hpp>

#include "sunphase/circuit.hpp"
#include "sunphase/decompose.hpp"

namespace sunphase {

// Factor chains and circuits both serialize to JSON with doubles emitted in
// shortest-round-trip form, so dump/parse cycles reproduce the numbers bit
// for bit.

inline nlohmann::json chain_to_json(const FactorChain& chain) {
  nlohmann::json factors = nlohmann::json::array();
  for (const SU2Factor& f : chain.factors) {
    factors.push_back({{"pair", {f.pair.i, f.pair.j}},
                       {"kind", kind_name(f.kind)},
                       {"params", {f.params[0], f.params[1], f.params[2]}}});
  }
  return {{"n", chain.n}, {"factors", factors}};
}

inline FactorChain chain_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  FactorChain chain{n, {}};
  for (const nlohmann::json& jf : j.at("factors")) {
    const auto& pair = jf.at("pair");
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("factor pair must be a two-element array");
    const auto& params = jf.at("params");
    if (!params.is_array() || params.size() != 3)
      throw std::invalid_argument("factor params must be a three-element array");
    chain.factors.push_back(
        SU2Factor{ChannelPair(pair[0].get<int>(), pair[1].get<int>(), n),
                  kind_from_name(jf.at("kind").get<std::string>()),
                  {params[0].get<double>(), params[1].get<double>(), params[2].get<double>()}});
  }
  return chain;
}

inline nlohmann::json netlist_to_json(const Circuit& c) {
  nlohmann::json elements = nlohmann::json::array();
  for (const OpticalElement& e : c.elements) {
    elements.push_back({{"pair", {e.pair.i, e.pair.j}},
                        {"params", {e.params.phi_t, e.params.theta, e.params.phi_r}},
                        {"label", e.label}});
  }
  return {{"n", c.n}, {"elements", elements}};
}

inline Circuit netlist_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::vector<OpticalElement> elements;
  for (const nlohmann::json& je : j.at("elements")) {
    const auto& pair = je.at("pair");
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("element pair must be a two-element array");
    const auto& params = je.at("params");
    if (!params.is_array() || params.size() != 3)
      throw std::invalid_argument("element params must be a three-element array");
    elements.push_back(OpticalElement{
        ChannelPair(pair[0].get<int>(), pair[1].get<int>(), n),
        {params[0].get<double>(), params[1].get<double>(), params[2].get<double>()},
        je.value("label", std::string())});
  }
  return detail::make_circuit(n, std::move(elements));
}

}  // namespace sunphase
