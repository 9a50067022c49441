#pragma once

#include "spanroute/action_set.hpp"
#include "spanroute/cost_model.hpp"
#include "spanroute/error.hpp"
#include "spanroute/graph.hpp"
#include "spanroute/linalg.hpp"
#include "spanroute/policy.hpp"
#include "spanroute/rng.hpp"
#include "spanroute/runner.hpp"
#include "spanroute/scenario.hpp"
#include "spanroute/sim.hpp"
#include "spanroute/solo.hpp"
#include "spanroute/spanner.hpp"
