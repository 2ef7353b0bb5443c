#pragma once

// Internal: assemble diagnostic strings without <format> (gcc 11 lacks it).

#include <sstream>
#include <string>

namespace mpbvp::detail {

template <class... Ts>
std::string cat(const Ts&... parts) {
    std::ostringstream os;
    os.precision(12);
    (os << ... << parts);
    return os.str();
}

} // namespace mpbvp::detail
