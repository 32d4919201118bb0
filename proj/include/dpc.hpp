#pragma once

#include "dpc/clusters.hpp"
#include "dpc/cover.hpp"
#include "dpc/discharging.hpp"
#include "dpc/error.hpp"
#include "dpc/generate.hpp"
#include "dpc/graph.hpp"
#include "dpc/io.hpp"
#include "dpc/patterns.hpp"
#include "dpc/plane_graph.hpp"
#include "dpc/reducibility.hpp"
#include "dpc/solver.hpp"
