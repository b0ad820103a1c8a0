#pragma once

#include "pdga/errors.hpp"
#include "pdga/ring.hpp"
#include "pdga/polynomial.hpp"
#include "pdga/parser.hpp"
#include "pdga/linalg.hpp"
#include "pdga/groebner.hpp"
#include "pdga/algebra.hpp"
#include "pdga/differential.hpp"
#include "pdga/poisson.hpp"
#include "pdga/dgeometry.hpp"
#include "pdga/counting.hpp"
#include "pdga/ore.hpp"
