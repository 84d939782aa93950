#pragma once

// Umbrella header: route planning and uncertainty-aware replanning on
// OSM-derived road graphs.

#include "alcplan/config.hpp"
#include "alcplan/edge_counts.hpp"
#include "alcplan/edge_weights.hpp"
#include "alcplan/errors.hpp"
#include "alcplan/geo.hpp"
#include "alcplan/guidance.hpp"
#include "alcplan/io.hpp"
#include "alcplan/laplacian.hpp"
#include "alcplan/osm_import.hpp"
#include "alcplan/postman.hpp"
#include "alcplan/replan.hpp"
#include "alcplan/rng.hpp"
#include "alcplan/road_graph.hpp"
#include "alcplan/route.hpp"
#include "alcplan/shortest_path.hpp"
#include "alcplan/sim.hpp"
