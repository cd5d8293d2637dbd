#include "nahmlab/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nahmlab/errors.hpp"

namespace nahmlab {

using nlohmann::json;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check(bool ok, const std::string& field, const std::string& msg) {
  if (!ok) throw ConfigError(field, "config field '" + field + "': " + msg);
}

FieldSpec parse_field(const json& j, const std::string& prefix) {
  FieldSpec f;
  f.kind = j.value("kind", "flat");
  check(f.kind == "flat" || f.kind == "bpst" || f.kind == "twisted", prefix + ".kind",
        "must be flat, bpst or twisted");
  f.rank = j.value("rank", f.kind == "bpst" ? 2 : 1);
  check(f.rank >= 1, prefix + ".rank", "must be >= 1");
  if (f.kind == "bpst") {
    check(j.contains("rho"), prefix + ".rho", "required for bpst");
    f.rho = j.at("rho").get<double>();
    check(f.rho > 0.0, prefix + ".rho", "must be positive");
    check(f.rank == 2, prefix + ".rank", "bpst is rank 2");
    if (j.contains("center"))
      for (int i = 0; i < 4; ++i) f.center[i] = j.at("center").at(i).get<double>();
  }
  if (f.kind == "twisted") {
    check(j.contains("z"), prefix + ".z", "required for twisted");
    for (int i = 0; i < 4; ++i) f.z[i] = j.at("z").at(i).get<double>();
    if (j.contains("base")) {
      const FieldSpec base = parse_field(j.at("base"), prefix + ".base");
      check(base.kind != "twisted", prefix + ".base.kind", "nested twists not supported");
      f.base_kind = base.kind;
      f.rho = base.rho;
      f.center = base.center;
      f.rank = base.rank;
    }
  }
  return f;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError("(root)", std::string("not valid JSON: ") + e.what());
  }
  RunConfig c;
  if (j.contains("field")) c.field = parse_field(j.at("field"), "field");
  c.degree = j.value("degree", c.degree);
  check(c.degree >= 0 && c.degree <= 14, "degree", "must be in [0, 14]");
  c.radius = j.value("radius", c.radius);
  check(c.radius > 0.0, "radius", "must be positive");
  if (j.contains("quad")) {
    const auto& q = j.at("quad");
    c.quad.nr = q.value("nr", c.quad.nr);
    c.quad.nt1 = q.value("nt1", c.quad.nt1);
    c.quad.nt2 = q.value("nt2", c.quad.nt2);
    c.quad.nphi = q.value("nphi", c.quad.nphi);
    check(c.quad.nr >= 2 && c.quad.nt1 >= 2 && c.quad.nt2 >= 2 && c.quad.nphi >= 2, "quad",
          "orders must be >= 2");
  }
  if (j.contains("thresholds")) {
    const auto& t = j.at("thresholds");
    c.thresholds.eps_null = t.value("eps_null", c.thresholds.eps_null);
    c.thresholds.eps_ker = t.value("eps_ker", c.thresholds.eps_ker);
    c.thresholds.delta1 = t.value("delta1", c.thresholds.delta1);
    c.thresholds.delta2 = t.value("delta2", c.thresholds.delta2);
    c.thresholds.cond_tol = t.value("cond_tol", c.thresholds.cond_tol);
    check(c.thresholds.eps_null > 0.0, "thresholds.eps_null", "must be positive");
    check(c.thresholds.eps_ker > 0.0, "thresholds.eps_ker", "must be positive");
    check(c.thresholds.delta1 > 0.0 && c.thresholds.delta1 < std::sqrt(2.0 / 3.0),
          "thresholds.delta1", "must lie in (0, sqrt(2/3))");
    check(c.thresholds.delta2 > 0.0 && c.thresholds.delta2 < std::sqrt(2.0 / 3.0),
          "thresholds.delta2", "must lie in (0, sqrt(2/3))");
  }
  if (j.contains("schedule")) {
    c.schedule.clear();
    for (const auto& v : j.at("schedule")) {
      const double rho = v.get<double>();
      check(rho > 0.0 && rho < c.radius, "schedule", "scales must lie in (0, R)");
      c.schedule.push_back(rho);
    }
    check(!c.schedule.empty(), "schedule", "must not be empty");
  }
  c.out = j.value("out", c.out);
  c.seed = j.value("seed", c.seed);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("(file)", "cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const RunConfig& c) {
  json field;
  field["kind"] = c.field.kind;
  field["rank"] = c.field.rank;
  if (c.field.kind == "bpst") {
    field["rho"] = c.field.rho;
    field["center"] = c.field.center;
  }
  if (c.field.kind == "twisted") {
    field["z"] = c.field.z;
    json base;
    base["kind"] = c.field.base_kind;
    base["rank"] = c.field.rank;
    if (c.field.base_kind == "bpst") {
      base["rho"] = c.field.rho;
      base["center"] = c.field.center;
    }
    field["base"] = base;
  }
  json j;
  j["field"] = field;
  j["degree"] = c.degree;
  j["radius"] = c.radius;
  j["quad"] = {{"nr", c.quad.nr}, {"nt1", c.quad.nt1}, {"nt2", c.quad.nt2},
               {"nphi", c.quad.nphi}};
  j["thresholds"] = {{"eps_null", c.thresholds.eps_null},
                     {"eps_ker", c.thresholds.eps_ker},
                     {"delta1", c.thresholds.delta1},
                     {"delta2", c.thresholds.delta2},
                     {"cond_tol", c.thresholds.cond_tol}};
  j["schedule"] = c.schedule;
  j["out"] = c.out;
  j["seed"] = c.seed;
  return j.dump(2);
}

uint64_t config_hash(const RunConfig& c) {
  const std::string s = emit_config(c);
  uint64_t h = 1469598103934665603ull;
  for (const unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

GaugeField make_field(const FieldSpec& f) {
  if (f.kind == "flat") return flat_field(f.rank);
  if (f.kind == "bpst") return bpst_field(f.rho, Point4{{f.center[0], f.center[1], f.center[2],
                                                         f.center[3]}});
  if (f.kind == "twisted") {
    const GaugeField base = f.base_kind == "bpst"
                                ? bpst_field(f.rho, Point4{{f.center[0], f.center[1],
                                                            f.center[2], f.center[3]}})
                                : flat_field(f.rank);
    return twist(base, Point4{{f.z[0], f.z[1], f.z[2], f.z[3]}});
  }
  throw ConfigError("field.kind", "unknown field kind " + f.kind);
}

std::string manifest_json(const RunConfig& c, const std::string& version, double wall_seconds) {
  json j;
  char hex[20];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(config_hash(c)));
  j["config_hash"] = std::string(hex);
  j["version"] = version;
  j["wall_seconds"] = g17(wall_seconds);
  return j.dump(2);
}

}  // namespace nahmlab
