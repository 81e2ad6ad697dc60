#pragma once

#include "dyntest/analysis.hpp"
#include "dyntest/config.hpp"
#include "dyntest/dynamic_metrics.hpp"
#include "dyntest/error.hpp"
#include "dyntest/kendall.hpp"
#include "dyntest/pipeline.hpp"
#include "dyntest/report.hpp"
#include "dyntest/shapiro_wilk.hpp"
#include "dyntest/test_linker.hpp"
#include "dyntest/trace_model.hpp"
