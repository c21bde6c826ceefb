#pragma once

// Umbrella header.

#include "cf.hpp"
#include "integer.hpp"
#include "lft.hpp"
#include "orbit.hpp"
#include "pattern.hpp"
#include "pell.hpp"
#include "quad_surd.hpp"
#include "rational.hpp"
