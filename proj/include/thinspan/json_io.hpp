#pragma once
// JSON (de)serialization for the kernel types.  The groupoid format is
//   {"objects": [0..n-1],
//    "morphisms": [{"id": m, "src": a, "dst": b}, ...],
//    "compose": [[g, f, gf], ...],
//    "identities": {"0": m0, ...},
//    "labels": {"objects": [...], "morphisms": [...]}}
// Printing then parsing is the identity (round-trip property), and nlohmann's
// object representation keeps keys sorted, so printed output is canonical.

#include <json.hpp>

#include "thinspan/gpd.hpp"

namespace thinspan {

nlohmann::json groupoid_to_json(const Gpd& g);
Gpd groupoid_from_json(const nlohmann::json& j);  // validates

nlohmann::json functor_to_json(const GFunctor& f);  // embeds both boundaries
GFunctor functor_from_json(const nlohmann::json& j);

}  // namespace thinspan
