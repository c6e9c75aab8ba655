#pragma once

#include "dpso/bench_suite.hpp"
#include "dpso/error.hpp"
#include "dpso/harness.hpp"
#include "dpso/kernels.hpp"
#include "dpso/plan_file.hpp"
#include "dpso/report.hpp"
#include "dpso/rng.hpp"
#include "dpso/stats.hpp"
#include "dpso/swarm.hpp"
