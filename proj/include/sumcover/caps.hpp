#pragma once

#include <cstdint>

namespace sumcover {

// Desk-scale caps. Dense element sets allocate order/8 bytes, and cube
// enumerations walk 2^dim vertices, so both are bounded up front. The
// defaults can be raised (or lowered) via environment variables; values are
// read once per process.
//
//   SUMCOVER_MAX_GROUP_ORDER   dense group order cap            (default 2^24)
//   SUMCOVER_MAX_CUBE_DIM      cube dimension cap k*r           (default 24)
//   SUMCOVER_MAX_SUBSET_ITEMS  sparse subset-sum item count cap (default 24)
uint64_t max_group_order();
unsigned max_cube_dim();
unsigned max_subset_items();

}  // namespace sumcover
