#include "bgsusy/emit.hpp"

#include <charconv>

namespace bgsusy {

std::string format_double(double v) {
    if (v == 0.0) return "0";  // collapse the -0 artifact of sqrt/rounding
    char buf[32];
    const std::to_chars_result r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

}  // namespace bgsusy
