#pragma once

#include "teapot/cloud.hpp"
#include "teapot/enumerate.hpp"
#include "teapot/errors.hpp"
#include "teapot/ifs.hpp"
#include "teapot/itinerary.hpp"
#include "teapot/parallel.hpp"
#include "teapot/polynomial.hpp"
#include "teapot/roots.hpp"
#include "teapot/symbolic.hpp"
#include "teapot/word.hpp"

namespace teapot {
inline constexpr const char* kVersion = "1.0.0";
}
