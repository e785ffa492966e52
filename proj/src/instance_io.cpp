#include "rftt/instance_io.h"

#include <fstream>
#include <sstream>

namespace rftt {

using nlohmann::json;
using nlohmann::ordered_json;

std::int64_t json_int(const json& j, const std::string& what) {
  if (j.is_number_integer()) {
    return j.get<std::int64_t>();
  }
  if (j.is_number_float()) {
    throw InputError("non-integer value for " + what);
  }
  throw InputError("expected integer for " + what);
}

Rational json_rational(const json& j, const std::string& what) {
  if (j.is_object()) {
    if (!j.contains("num") || !j.contains("den")) {
      throw InputError(what + " needs \"num\" and \"den\"");
    }
    const auto den = json_int(j.at("den"), what + ".den");
    if (den <= 0) {
      throw InputError(what + " has nonpositive denominator");
    }
    return Rational(json_int(j.at("num"), what + ".num"), den);
  }
  return Rational(json_int(j, what));
}

ordered_json rational_to_json(const Rational& r) {
  if (r.is_integer()) {
    return r.num_i64();
  }
  ordered_json w;
  w["num"] = r.num_i64();
  w["den"] = r.den_i64();
  return w;
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) {
    throw InputError("instance must be a JSON object");
  }
  for (const char* key : {"depot", "vertices", "edges"}) {
    if (!j.contains(key)) {
      throw InputError(std::string("instance is missing \"") + key + "\"");
    }
  }
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";

  std::vector<Vertex> vertices;
  for (const auto& v : j.at("vertices")) {
    Vertex vx{json_int(v.at("id"), "vertex id"), std::nullopt};
    if (v.contains("turnover")) {
      vx.turnover = json_int(v.at("turnover"), "turnover of vertex " + std::to_string(vx.id));
    }
    vertices.push_back(vx);
  }
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    Edge ed{json_int(e.at("u"), "edge u"), json_int(e.at("v"), "edge v"), Rational(0)};
    ed.weight = json_rational(e.at("weight"),
                              "weight of edge (" + std::to_string(ed.u) + "," +
                                std::to_string(ed.v) + ")");
    edges.push_back(std::move(ed));
  }
  return Instance(std::move(name), std::move(vertices), json_int(j.at("depot"), "depot"),
                  std::move(edges));
}

ordered_json instance_to_json(const Instance& instance) {
  ordered_json j;
  j["name"] = instance.name();
  j["depot"] = instance.depot();
  j["vertices"] = ordered_json::array();
  for (const auto& v : instance.vertices()) {
    ordered_json vx;
    vx["id"] = v.id;
    if (v.turnover) {
      vx["turnover"] = *v.turnover;
    }
    j["vertices"].push_back(std::move(vx));
  }
  j["edges"] = ordered_json::array();
  for (const auto& e : instance.edges()) {
    ordered_json ex;
    ex["u"] = e.u;
    ex["v"] = e.v;
    ex["weight"] = rational_to_json(e.weight);
    j["edges"].push_back(std::move(ex));
  }
  return j;
}

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

std::string dump_instance(const Instance& instance) {
  return instance_to_json(instance).dump(1) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot write " + path.string());
  }
  out << text;
}

Instance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path));
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_file(path, dump_instance(instance));
}

} // namespace rftt
