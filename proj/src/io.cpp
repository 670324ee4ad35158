#include "plred/io.hpp"

#include <json.hpp>

namespace plred {

using nlohmann::json;

namespace {

MassParams masses_from_json(const json& j) {
  MassParams mp;
  if (!j.contains("m0") || !j.contains("mu") || !j.contains("m"))
    throw Error(ErrorCode::parse_error, "state file needs m0, mu and m");
  mp.m0 = j.at("m0").get<double>();
  mp.mu = j.at("mu").get<double>();
  mp.m = j.at("m").get<std::vector<double>>();
  if (mp.m0 <= 0) throw Error(ErrorCode::parse_error, "m0 must be positive");
  for (double mi : mp.m)
    if (mi <= 0) throw Error(ErrorCode::parse_error, "planet masses must be positive");
  return mp;
}

std::vector<Vec3> triples_from_json(const json& arr, const char* field) {
  std::vector<Vec3> out;
  if (!arr.is_array()) throw Error(ErrorCode::parse_error, std::string(field) + " must be an array");
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 3)
      throw Error(ErrorCode::parse_error, std::string(field) + " entries must be triples");
    out.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
  }
  return out;
}

json triples_to_json(const std::vector<Vec3>& v) {
  json arr = json::array();
  for (const Vec3& u : v) arr.push_back({u.x1, u.x2, u.x3});
  return arr;
}

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::parse_error, "not valid JSON");
  return j;
}

}  // namespace

HelioState StateFile::as_helio() const {
  if (helio) return *helio;
  return to_heliocentric(*full, mp);
}

StateFile parse_state_file(const std::string& text) {
  const json j = parse_or_throw(text);
  StateFile sf;
  sf.mp = masses_from_json(j);
  const int n = sf.mp.n();
  if (j.contains("p") && j.contains("q")) {
    FullState s;
    s.p = triples_from_json(j.at("p"), "p");
    s.q = triples_from_json(j.at("q"), "q");
    if (static_cast<int>(s.p.size()) != n + 1 || static_cast<int>(s.q.size()) != n + 1)
      throw Error(ErrorCode::parse_error, "p and q need one triple per body incl. the sun");
    sf.full = s;
  } else if (j.contains("y") && j.contains("x")) {
    HelioState hs;
    hs.y = triples_from_json(j.at("y"), "y");
    hs.x = triples_from_json(j.at("x"), "x");
    if (hs.n() != n || static_cast<int>(hs.x.size()) != n)
      throw Error(ErrorCode::parse_error, "y and x need one triple per planet");
    sf.helio = hs;
  } else {
    throw Error(ErrorCode::parse_error, "state file needs either p/q or y/x arrays");
  }
  return sf;
}

std::string write_state_file(const HelioState& hs, const MassParams& mp) {
  json j;
  j["m0"] = mp.m0;
  j["mu"] = mp.mu;
  j["m"] = mp.m;
  j["y"] = triples_to_json(hs.y);
  j["x"] = triples_to_json(hs.x);
  return j.dump(2) + "\n";
}

std::string write_state_file(const FullState& s, const MassParams& mp) {
  json j;
  j["m0"] = mp.m0;
  j["mu"] = mp.mu;
  j["m"] = mp.m;
  j["p"] = triples_to_json(s.p);
  j["q"] = triples_to_json(s.q);
  return j.dump(2) + "\n";
}

CoordsFile parse_coords_file(const std::string& text) {
  const json j = parse_or_throw(text);
  CoordsFile cf;
  if (!j.contains("chart")) throw Error(ErrorCode::parse_error, "coords file needs a chart tag");
  cf.chart = j.at("chart").get<std::string>();
  cf.mp = masses_from_json(j);
  if (!j.contains("values")) throw Error(ErrorCode::parse_error, "coords file needs values");
  cf.values = j.at("values").get<std::vector<double>>();
  return cf;
}

MassParams parse_masses(const std::string& text) { return masses_from_json(parse_or_throw(text)); }

std::string write_coords_file(const ChartSpec& chart, std::span<const double> values) {
  if (static_cast<int>(values.size()) != chart.dim + chart.nparams)
    throw Error(ErrorCode::domain_violation, "write_coords_file: value count mismatch");
  json j;
  j["chart"] = chart.name;
  j["m0"] = chart.mp.m0;
  j["mu"] = chart.mp.mu;
  j["m"] = chart.mp.m;
  j["values"] = std::vector<double>(values.begin(), values.end());
  json named = json::object();
  for (size_t k = 0; k < values.size(); ++k) named[chart.labels[k]] = values[k];
  j["named"] = named;
  return j.dump(2) + "\n";
}

}  // namespace plred
