#pragma once

#include "trustgrow/connectivity.hpp"
#include "trustgrow/error.hpp"
#include "trustgrow/fraction.hpp"
#include "trustgrow/growth.hpp"
#include "trustgrow/identity.hpp"
#include "trustgrow/io.hpp"
#include "trustgrow/policy.hpp"
#include "trustgrow/scenarios.hpp"
#include "trustgrow/spectral.hpp"
#include "trustgrow/trust_graph.hpp"
#include "trustgrow/vertex_set.hpp"
