#pragma once

#include <stdexcept>
#include <string>

namespace finshape {

// Error taxonomy mirrored by the CLI exit codes:
// input_error/capacity_error -> 2, construction_error/welldef_error -> 3,
// verification_error -> 4.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct welldef_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace finshape
