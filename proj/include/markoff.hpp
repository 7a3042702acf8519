#pragma once

#include "markoff/counting.hpp"
#include "markoff/error.hpp"
#include "markoff/euclid.hpp"
#include "markoff/field.hpp"
#include "markoff/json_io.hpp"
#include "markoff/oracle.hpp"
#include "markoff/poly.hpp"
#include "markoff/poly_io.hpp"
#include "markoff/surface.hpp"
#include "markoff/tree.hpp"
