#pragma once

#include <string>

namespace bgsusy {

// Shortest decimal that round-trips to the same double; canonical form for
// every emitted file so re-reading and re-emitting is byte-identical.
std::string format_double(double v);

}  // namespace bgsusy
