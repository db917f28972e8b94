#include "caustics/curve_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace caustics {

using nlohmann::json;

json curve_to_json(const FourierCurve& curve) {
  json hs = json::array();
  for (const auto& h : curve.harmonics()) hs.push_back({h.k, h.a, h.b});
  return json{{"c0", curve.c0()},
              {"anchor", {curve.anchor().x, curve.anchor().y}},
              {"harmonics", std::move(hs)}};
}

FourierCurve curve_from_json(const json& j) {
  if (!j.is_object() || !j.contains("c0")) {
    throw std::invalid_argument("curve record needs a \"c0\" field");
  }
  Point anchor;
  if (j.contains("anchor")) {
    const auto& a = j.at("anchor");
    if (!a.is_array() || a.size() != 2) {
      throw std::invalid_argument("anchor must be [x, y]");
    }
    anchor = {a[0].get<double>(), a[1].get<double>()};
  }
  std::vector<Harmonic> hs;
  if (j.contains("harmonics")) {
    for (const auto& h : j.at("harmonics")) {
      if (!h.is_array() || h.size() != 3 || !h[0].is_number_integer()) {
        throw std::invalid_argument("harmonic must be [k, a, b] with integer k");
      }
      hs.push_back({h[0].get<int>(), h[1].get<double>(), h[2].get<double>()});
    }
  }
  return FourierCurve::make(j.at("c0").get<double>(), std::move(hs), anchor);
}

std::string serialize_curve(const FourierCurve& curve) {
  return curve_to_json(curve).dump();
}

FourierCurve parse_curve(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed curve record: ") +
                                e.what());
  }
  try {
    return curve_from_json(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed curve record: ") +
                                e.what());
  }
}

FourierCurve load_curve(const std::string& source) {
  constexpr std::string_view kOmega = "omega:";
  if (source.rfind(kOmega, 0) == 0) {
    const std::string rest = source.substr(kOmega.size());
    const auto comma = rest.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("expected omega:n,tau");
    }
    std::size_t used = 0;
    const int n = std::stoi(rest.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("bad n in " + source);
    const std::string tau_text = rest.substr(comma + 1);
    const double tau = std::stod(tau_text, &used);
    if (used != tau_text.size()) throw std::invalid_argument("bad tau in " + source);
    return make_omega_n_tau(n, tau);
  }
  std::ifstream in(source);
  if (!in) throw std::runtime_error("cannot open curve file " + source);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve(ss.str());
}

}  // namespace caustics
