#pragma once

#include <json.hpp>

#include "bsing/geometry.hpp"
#include "bsing/graph.hpp"
#include "bsing/hamiltonian.hpp"

namespace bsing {

using nlohmann::json;

// TrigPoly <-> {"period": T, "const": c, "cos": [...], "sin": [...]}
// (a bare number is accepted as a constant with period 1).
json trigpoly_to_json(const TrigPoly& p);
TrigPoly trigpoly_from_json(const json& j, double default_period = 1.0);

// TimeSpaceProfile <-> [{"time": tp, "space": tp}, ...]; a bare TrigPoly
// object is read as an autonomous profile.
json profile_to_json(const TimeSpaceProfile& p);
TimeSpaceProfile profile_from_json(const json& j, double space_period = 1.0);

json circle_to_json(const CriticalCircle& c);
CriticalCircle circle_from_json(const json& j);

json component_to_json(const SurfaceComponent& c);
SurfaceComponent component_from_json(const json& j);

json surface_to_json(const BSurface& s);
BSurface surface_from_json(const json& j);

json graph_to_json(const BGraph& g);
BGraph graph_from_json(const json& j);

json hamiltonian_to_json(const AdmissibleHamiltonian& h);
AdmissibleHamiltonian hamiltonian_from_json(const json& j, const BSurface& s);

}  // namespace bsing
