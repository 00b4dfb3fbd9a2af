#pragma once

#include "fagnano/errors.hpp"
#include "fagnano/tolerances.hpp"
#include "fagnano/geometry.hpp"
#include "fagnano/mass.hpp"
#include "fagnano/simplex.hpp"
#include "fagnano/mass_sequence.hpp"
#include "fagnano/orbit.hpp"
#include "fagnano/billiard.hpp"
