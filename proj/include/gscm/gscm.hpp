#pragma once

#include "gscm/antenna.hpp"
#include "gscm/coeff.hpp"
#include "gscm/config.hpp"
#include "gscm/error.hpp"
#include "gscm/experiment.hpp"
#include "gscm/geometry.hpp"
#include "gscm/kvfile.hpp"
#include "gscm/metrics.hpp"
#include "gscm/rng.hpp"
#include "gscm/scenario.hpp"
#include "gscm/smallscale.hpp"
#include "gscm/sosfield.hpp"
