#pragma once

#include "netscale/classify.hpp"
#include "netscale/features.hpp"
#include "netscale/graph.hpp"
#include "netscale/oracle.hpp"
#include "netscale/perturb.hpp"
#include "netscale/sampler.hpp"
#include "netscale/scale.hpp"
#include "netscale/seeds.hpp"
