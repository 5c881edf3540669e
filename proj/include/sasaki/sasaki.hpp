#pragma once

// Umbrella header.

#include "sasaki/bundle.hpp"
#include "sasaki/charts.hpp"
#include "sasaki/config.hpp"
#include "sasaki/dual.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/expression.hpp"
#include "sasaki/field_geometry.hpp"
#include "sasaki/geodesic.hpp"
#include "sasaki/lie.hpp"
#include "sasaki/manifold.hpp"
#include "sasaki/scenarios.hpp"
#include "sasaki/smooth_map.hpp"
#include "sasaki/tensor.hpp"
