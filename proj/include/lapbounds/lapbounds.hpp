#pragma once

#include "lapbounds/graph.hpp"
#include "lapbounds/bounds.hpp"
#include "lapbounds/oracle.hpp"
#include "lapbounds/generate.hpp"
#include "lapbounds/edge_list.hpp"
#include "lapbounds/report.hpp"
