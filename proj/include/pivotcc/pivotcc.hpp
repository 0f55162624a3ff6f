#pragma once

// Convenience umbrella for the whole library.

#include "pivotcc/algorithms.hpp"
#include "pivotcc/bench.hpp"
#include "pivotcc/clustering.hpp"
#include "pivotcc/errors.hpp"
#include "pivotcc/exact.hpp"
#include "pivotcc/instance.hpp"
#include "pivotcc/metrics.hpp"
#include "pivotcc/oracle.hpp"
#include "pivotcc/query_rate.hpp"
#include "pivotcc/rng.hpp"
