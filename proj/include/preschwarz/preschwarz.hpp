#pragma once

#include "analytic.hpp"
#include "bounds.hpp"
#include "classes.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "rootfind.hpp"
#include "series_io.hpp"
#include "supnorm.hpp"
#include "tables.hpp"
