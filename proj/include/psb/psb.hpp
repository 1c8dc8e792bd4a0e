#pragma once

#include "psb/error.hpp"
#include "psb/core.hpp"
#include "psb/literal.hpp"
#include "psb/adjacency.hpp"
#include "psb/oracle.hpp"
#include "psb/analysis.hpp"
#include "psb/solver.hpp"
#include "psb/selftest.hpp"
#include "psb/io.hpp"
