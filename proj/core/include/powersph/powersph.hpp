#pragma once

#include "powersph/errors.hpp"
#include "powersph/marginal_t.hpp"
#include "powersph/power_spherical.hpp"
#include "powersph/random.hpp"
#include "powersph/specfun.hpp"
#include "powersph/sphere.hpp"
#include "powersph/vmf.hpp"
