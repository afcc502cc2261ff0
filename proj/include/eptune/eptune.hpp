#pragma once

#include "eptune/errors.hpp"
#include "eptune/gains.hpp"
#include "eptune/mutation.hpp"
#include "eptune/ep.hpp"
#include "eptune/pid.hpp"
#include "eptune/plant.hpp"
#include "eptune/fitness.hpp"
