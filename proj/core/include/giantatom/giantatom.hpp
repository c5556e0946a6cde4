#pragma once

#include "giantatom/analytic.hpp"
#include "giantatom/dde.hpp"
#include "giantatom/model.hpp"
#include "giantatom/observables.hpp"
#include "giantatom/oracle.hpp"
#include "giantatom/version.hpp"
