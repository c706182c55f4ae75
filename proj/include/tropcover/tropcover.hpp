#pragma once

/**
 * @file tropcover.hpp
 * @brief Umbrella header.
 */

#include "tropcover/rational.hpp"
#include "tropcover/scalar.hpp"
#include "tropcover/laurent.hpp"
#include "tropcover/parse.hpp"
#include "tropcover/lp.hpp"
#include "tropcover/linalg.hpp"
#include "tropcover/polyhedra.hpp"
#include "tropcover/tropical.hpp"
#include "tropcover/roots.hpp"
#include "tropcover/constructions.hpp"
#include "tropcover/serialize.hpp"
#include "tropcover/svg.hpp"
#include "tropcover/scenarios.hpp"
