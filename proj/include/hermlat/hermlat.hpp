#pragma once

#include "hermlat/numeric.hpp"
#include "hermlat/rational.hpp"
#include "hermlat/polynomial.hpp"
#include "hermlat/number_field.hpp"
#include "hermlat/echelon.hpp"
#include "hermlat/hermitian_bundle.hpp"
#include "hermlat/enumeration.hpp"
#include "hermlat/minima.hpp"
#include "hermlat/duality.hpp"
#include "hermlat/slopes.hpp"
#include "hermlat/transference.hpp"
#include "hermlat/height_bounds.hpp"
