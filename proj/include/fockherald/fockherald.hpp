#pragma once

#include "fock_state.hpp"
#include "measurement.hpp"
#include "operators.hpp"
#include "optimize.hpp"
#include "schemes.hpp"
