#pragma once

#include "milnor/critical.hpp"
#include "milnor/errors.hpp"
#include "milnor/fields.hpp"
#include "milnor/flow.hpp"
#include "milnor/polynomial.hpp"
#include "milnor/rational.hpp"
#include "milnor/sampling.hpp"
#include "milnor/weights.hpp"
