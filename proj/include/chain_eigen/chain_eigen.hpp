#pragma once

#include "analytic.hpp"
#include "basis.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "numerics.hpp"
#include "operators.hpp"
#include "physics.hpp"
#include "verify.hpp"
