#pragma once

#include <string>

#include <json.hpp>

#include "caut/cluster_aut.hpp"
#include "caut/group_id.hpp"
#include "caut/seed.hpp"
#include "caut/surface.hpp"

namespace caut {

using Json = nlohmann::ordered_json;

// quiver: {"n": int, "b": [[int]]}; an {"arrows": [[src,tgt,mult]]} list
// (1-based points) is accepted on input
Json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);

// exchange-graph cache: nodes keyed by canonical cluster key with the
// serialized representative seeds, edges, and the completeness flag
Json graph_to_json(const ExchangeGraph& g);
ExchangeGraph graph_from_json(const Json& j);

std::vector<RationalFn> images_from_json(const Json& j, int nvars);
Json images_to_json(const std::vector<RationalFn>& images);

Json aut_group_report(const AutGroup& gr, int order_bound = kDefaultGroupOrderBound);

// triangulation files: {"surface": {...}, "arcs": n or [labels],
// "triangles": [[side,...]] with integer arc positions or "b<k>" boundary
// segments (clockwise side order), "self_folded": [[loop,radius]], and for
// coordinate families "tags" is carried inside the arc strings
Json triangulation_to_json(const Triangulation& t);
Triangulation triangulation_from_json(const Json& j);

} // namespace caut
