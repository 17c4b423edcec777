#pragma once

#include "mechspace/dynamics.hpp"
#include "mechspace/einstein_space.hpp"
#include "mechspace/errors.hpp"
#include "mechspace/five_vector.hpp"
#include "mechspace/groups.hpp"
#include "mechspace/linalg.hpp"
#include "mechspace/measure.hpp"
#include "mechspace/newton_space.hpp"
#include "mechspace/random.hpp"
#include "mechspace/scenario.hpp"
#include "mechspace/symplectic.hpp"
#include "mechspace/verify.hpp"
