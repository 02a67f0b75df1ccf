#pragma once

// Exact enumeration of raised k-Dyck paths: shape counts, minimum-height and
// return filters, bounded-height generating functions, brute-force and DP
// oracles, and OEIS sequence verification.

#include "kdyck/bounded.hpp"
#include "kdyck/exact.hpp"
#include "kdyck/filters.hpp"
#include "kdyck/oeis.hpp"
#include "kdyck/oracle.hpp"
#include "kdyck/series.hpp"
#include "kdyck/shape.hpp"
