#pragma once

#include "exptk/bounds.hpp"
#include "exptk/chart_io.hpp"
#include "exptk/fp_linear.hpp"
#include "exptk/resolution.hpp"
#include "exptk/steenrod.hpp"
#include "exptk/witnesses.hpp"
