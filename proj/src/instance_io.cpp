#include "maxbandit/instance_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace maxbandit {

namespace {

using nlohmann::json;

void require_fields(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw std::runtime_error("unknown field \"" + key + "\" in " + where);
  }
  for (const auto& key : allowed)
    if (!obj.contains(key))
      throw std::runtime_error("missing field \"" + key + "\" in " + where);
}

DistPtr parse_arm(const json& a, const std::string& where) {
  if (!a.is_object())
    throw std::runtime_error(where + " must be an object");
  if (!a.contains("type"))
    throw std::runtime_error("missing field \"type\" in " + where);
  const std::string type = a.at("type").get<std::string>();
  if (type == "power_tail") {
    require_fields(a, {"type", "mu_star", "A", "beta"}, where);
    return std::make_shared<PowerTail>(a.at("mu_star").get<double>(),
                                       a.at("A").get<double>(),
                                       a.at("beta").get<double>());
  }
  if (type == "uniform") {
    require_fields(a, {"type", "lo", "hi"}, where);
    return std::make_shared<Uniform>(a.at("lo").get<double>(),
                                     a.at("hi").get<double>());
  }
  if (type == "point_mass") {
    require_fields(a, {"type", "mu_star"}, where);
    return std::make_shared<PointMass>(a.at("mu_star").get<double>());
  }
  if (type == "mixture") {
    require_fields(a, {"type", "components"}, where);
    const json& comps = a.at("components");
    if (!comps.is_array() || comps.empty())
      throw std::runtime_error(where + ".components must be a nonempty array");
    std::vector<double> weights;
    std::vector<DistPtr> components;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string cw = where + ".components[" + std::to_string(i) + "]";
      require_fields(comps[i], {"weight", "arm"}, cw);
      weights.push_back(comps[i].at("weight").get<double>());
      components.push_back(parse_arm(comps[i].at("arm"), cw + ".arm"));
    }
    return std::make_shared<FiniteMixture>(std::move(weights),
                                           std::move(components));
  }
  throw std::runtime_error("unknown arm type \"" + type + "\" in " + where);
}

json arm_to_json(const Distribution& d) {
  json a;
  const std::string type = d.type_name();
  a["type"] = type;
  if (type == "power_tail") {
    const auto& pt = dynamic_cast<const PowerTail&>(d);
    a["mu_star"] = pt.max_reward();
    a["A"] = pt.tail_A();
    a["beta"] = pt.tail_beta();
  } else if (type == "uniform") {
    const auto& u = dynamic_cast<const Uniform&>(d);
    a["lo"] = u.lo();
    a["hi"] = u.hi();
  } else if (type == "point_mass") {
    a["mu_star"] = d.max_reward();
  } else if (type == "mixture") {
    const auto& m = dynamic_cast<const FiniteMixture&>(d);
    json comps = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      json c;
      c["weight"] = m.weight(i);
      c["arm"] = arm_to_json(*m.component(i));
      comps.push_back(std::move(c));
    }
    a["components"] = std::move(comps);
  } else {
    throw std::runtime_error("arm type \"" + type +
                             "\" has no file representation");
  }
  return a;
}

}  // namespace

BanditInstance parse_instance(const std::string& json_text, bool checked) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("instance JSON parse error: ") +
                             e.what());
  }
  require_fields(doc, {"tail", "arms"}, "instance");
  require_fields(doc.at("tail"), {"A", "beta", "eps0"}, "tail");
  TailParams tail{doc.at("tail").at("A").get<double>(),
                  doc.at("tail").at("beta").get<double>(),
                  doc.at("tail").at("eps0").get<double>()};
  const json& arms_json = doc.at("arms");
  if (!arms_json.is_array() || arms_json.empty())
    throw std::runtime_error("instance.arms must be a nonempty array");
  std::vector<DistPtr> arms;
  arms.reserve(arms_json.size());
  for (std::size_t i = 0; i < arms_json.size(); ++i)
    arms.push_back(parse_arm(arms_json[i], "arms[" + std::to_string(i) + "]"));
  return BanditInstance(std::move(arms), tail, checked);
}

BanditInstance load_instance(const std::string& path, bool checked) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str(), checked);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string instance_to_json(const BanditInstance& instance) {
  json doc;
  doc["tail"] = {{"A", instance.tail().A},
                 {"beta", instance.tail().beta},
                 {"eps0", instance.tail().eps0}};
  json arms = json::array();
  for (std::size_t k = 0; k < instance.num_arms(); ++k)
    arms.push_back(arm_to_json(instance.arm(k)));
  doc["arms"] = std::move(arms);
  return doc.dump(2);
}

}  // namespace maxbandit
