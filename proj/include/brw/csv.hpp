#pragma once

#include <charconv>
#include <string>

namespace brw {

/// Shortest round-trip decimal form of a double ('.' decimal point); used by
/// every CSV emitter so that re-runs are byte-identical.
inline std::string csv_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace brw
