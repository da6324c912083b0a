#include "rmt/util.hpp"

#include <cstdio>

namespace rmt {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool near_integer(double x, double atol) {
    return std::fabs(x - std::round(x)) <= atol;
}

} // namespace rmt
