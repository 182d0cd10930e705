#pragma once

#include "edgeconn/config.hpp"
#include "edgeconn/cooperative.hpp"
#include "edgeconn/cut.hpp"
#include "edgeconn/exact.hpp"
#include "edgeconn/generators.hpp"
#include "edgeconn/graph_io.hpp"
#include "edgeconn/kernel.hpp"
#include "edgeconn/mincut.hpp"
#include "edgeconn/multigraph.hpp"
#include "edgeconn/nibble.hpp"
#include "edgeconn/pagerank.hpp"
#include "edgeconn/probes.hpp"
#include "edgeconn/simple_graph.hpp"
#include "edgeconn/working_subgraph.hpp"
