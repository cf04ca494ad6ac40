#pragma once

// Umbrella header for the whole laboratory.

#include "hardylab/series.hpp"
#include "hardylab/moebius.hpp"
#include "hardylab/comp_op.hpp"
#include "hardylab/eigen.hpp"
#include "hardylab/cyclic.hpp"
#include "hardylab/halfplane.hpp"
#include "hardylab/counting.hpp"
#include "hardylab/parallel.hpp"
#include "hardylab/report.hpp"
