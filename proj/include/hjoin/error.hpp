#pragma once

#include <stdexcept>
#include <string>

namespace hjoin {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input documents (edge lists, generator strings, JSON specs).
struct parse_error : error {
    using error::error;
};

} // namespace hjoin
