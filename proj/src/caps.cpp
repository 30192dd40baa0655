#include "sumcover/caps.hpp"

#include <cstdlib>
#include <string>

namespace sumcover {
namespace {

uint64_t env_or(const char* name, uint64_t dflt) {
    const char* s = std::getenv(name);
    if (!s || !*s) return dflt;
    try {
        return std::stoull(s);
    } catch (...) {
        return dflt;
    }
}

}  // namespace

uint64_t max_group_order() {
    static uint64_t v = env_or("SUMCOVER_MAX_GROUP_ORDER", uint64_t(1) << 24);
    return v;
}

unsigned max_cube_dim() {
    static unsigned v = unsigned(env_or("SUMCOVER_MAX_CUBE_DIM", 24));
    return v;
}

unsigned max_subset_items() {
    static unsigned v = unsigned(env_or("SUMCOVER_MAX_SUBSET_ITEMS", 24));
    return v;
}

}  // namespace sumcover
