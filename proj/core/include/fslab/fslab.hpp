#pragma once

#include "fslab/content/content.hpp"
#include "fslab/dyadic/direction.hpp"
#include "fslab/dyadic/grid_set.hpp"
#include "fslab/dyadic/ops.hpp"
#include "fslab/error.hpp"
#include "fslab/inverse/branching.hpp"
#include "fslab/inverse/checks.hpp"
#include "fslab/measures/delta_measure.hpp"
#include "fslab/measures/operations.hpp"
#include "fslab/projections/multiplicity.hpp"
#include "fslab/projections/probes.hpp"
#include "fslab/projections/projection.hpp"
#include "fslab/projections/scan.hpp"
#include "fslab/regularity/check.hpp"
#include "fslab/regularity/generators.hpp"
