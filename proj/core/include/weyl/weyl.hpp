#pragma once

#include "weyl/counting.hpp"
#include "weyl/discretization.hpp"
#include "weyl/domain.hpp"
#include "weyl/domain_io.hpp"
#include "weyl/eigensolve.hpp"
#include "weyl/errors.hpp"
#include "weyl/geometry.hpp"
#include "weyl/grid_mask.hpp"
#include "weyl/heat.hpp"
#include "weyl/oracles.hpp"
#include "weyl/parallel.hpp"
#include "weyl/proof_checks.hpp"
#include "weyl/spectrum.hpp"
