#pragma once

#include "mvol/chart.hpp"
#include "mvol/closed_forms.hpp"
#include "mvol/errors.hpp"
#include "mvol/exact_volume.hpp"
#include "mvol/haar.hpp"
#include "mvol/integrate.hpp"
#include "mvol/matrix_chart.hpp"
#include "mvol/states.hpp"
#include "mvol/stats.hpp"
