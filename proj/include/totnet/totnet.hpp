#pragma once

#include "bull.hpp"
#include "circuit.hpp"
#include "compiler.hpp"
#include "configuration.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "gadget.hpp"
#include "gadget_library.hpp"
#include "gadget_search.hpp"
#include "gate.hpp"
#include "graph.hpp"
#include "network.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "rule.hpp"
#include "spectrum.hpp"
