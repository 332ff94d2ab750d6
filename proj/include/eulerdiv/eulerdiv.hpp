#pragma once

#include "eulerdiv/bounds.hpp"
#include "eulerdiv/brownian.hpp"
#include "eulerdiv/errors.hpp"
#include "eulerdiv/euler.hpp"
#include "eulerdiv/exact.hpp"
#include "eulerdiv/experiments.hpp"
#include "eulerdiv/models.hpp"
#include "eulerdiv/montecarlo.hpp"
#include "eulerdiv/philox.hpp"
#include "eulerdiv/summation.hpp"
