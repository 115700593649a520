#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

namespace awr::test {

inline double rel_err(double value, double target) {
    const double d = std::abs(value - target);
    return target != 0.0 ? d / std::abs(target) : d;
}

// Distance in units in the last place between two finite doubles.
inline std::int64_t ulp_distance(double a, double b) {
    if (a == b) {
        return 0;
    }
    std::int64_t ia;
    std::int64_t ib;
    std::memcpy(&ia, &a, sizeof a);
    std::memcpy(&ib, &b, sizeof b);
    if (ia < 0) {
        ia = std::numeric_limits<std::int64_t>::min() - ia;
    }
    if (ib < 0) {
        ib = std::numeric_limits<std::int64_t>::min() - ib;
    }
    return ia > ib ? ia - ib : ib - ia;
}

}  // namespace awr::test
