#include "thinspan/json_io.hpp"

namespace thinspan {

using nlohmann::json;

json groupoid_to_json(const Gpd& g) {
  json j;
  j["objects"] = json::array();
  for (Obj x = 0; x < g->object_count(); ++x) j["objects"].push_back(x);
  j["morphisms"] = json::array();
  for (Mor m = 0; m < g->morphism_count(); ++m)
    j["morphisms"].push_back({{"id", m}, {"src", g->src(m)}, {"dst", g->dst(m)}});
  j["compose"] = json::array();
  for (Mor f = 0; f < g->morphism_count(); ++f)
    for (Mor gg = 0; gg < g->morphism_count(); ++gg)
      if (g->dst(f) == g->src(gg))
        j["compose"].push_back({gg, f, g->compose(gg, f)});
  j["identities"] = json::object();
  for (Obj x = 0; x < g->object_count(); ++x)
    j["identities"][std::to_string(x)] = g->identity(x);
  json labels;
  labels["objects"] = json::array();
  for (Obj x = 0; x < g->object_count(); ++x)
    labels["objects"].push_back(g->obj_label(x));
  labels["morphisms"] = json::array();
  for (Mor m = 0; m < g->morphism_count(); ++m)
    labels["morphisms"].push_back(g->mor_label(m));
  j["labels"] = labels;
  return j;
}

Gpd groupoid_from_json(const json& j) {
  RawGroupoid raw;
  raw.num_objects = static_cast<int>(j.at("objects").size());
  std::vector<RawGroupoid::RawMor> mors(j.at("morphisms").size());
  for (const auto& m : j.at("morphisms")) {
    int id = m.at("id").get<int>();
    if (id < 0 || id >= static_cast<int>(mors.size()))
      throw GroupoidError("morphism id out of range in JSON");
    mors[id] = {m.at("src").get<Obj>(), m.at("dst").get<Obj>()};
  }
  raw.morphisms = std::move(mors);
  for (const auto& c : j.at("compose"))
    raw.compose.push_back({{c.at(0).get<Mor>(), c.at(1).get<Mor>()},
                           c.at(2).get<Mor>()});
  raw.identities.assign(raw.num_objects, -1);
  for (const auto& [key, val] : j.at("identities").items())
    raw.identities.at(std::stoi(key)) = val.get<Mor>();
  if (j.contains("labels")) {
    const auto& labels = j.at("labels");
    if (labels.contains("objects"))
      raw.obj_labels = labels.at("objects").get<std::vector<std::string>>();
    if (labels.contains("morphisms"))
      raw.mor_labels = labels.at("morphisms").get<std::vector<std::string>>();
  }
  return FiniteGroupoid::validate(raw);
}

json functor_to_json(const GFunctor& f) {
  json j;
  j["src"] = groupoid_to_json(f.src());
  j["dst"] = groupoid_to_json(f.dst());
  j["object_map"] = f.object_map();
  j["morphism_map"] = f.morphism_map();
  return j;
}

GFunctor functor_from_json(const json& j) {
  return GFunctor(groupoid_from_json(j.at("src")),
                  groupoid_from_json(j.at("dst")),
                  j.at("object_map").get<std::vector<Obj>>(),
                  j.at("morphism_map").get<std::vector<Mor>>());
}

}  // namespace thinspan
