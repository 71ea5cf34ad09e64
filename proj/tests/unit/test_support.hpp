#pragma once

#include "geohydro/verify/sampling.hpp"

namespace geohydro::testing {

using geohydro::random_density;
using geohydro::random_trig;
using geohydro::uniform;

}  // namespace geohydro::testing
