#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cmh {

// Line-oriented decision log shared by all pipeline stages. Lines follow the
// formats DISCARD-COLOR <i> stage=<s>, DISCARD-STRIP <idx> stage=<s>,
// TRIM p=<p>, CAPTURE tile=<id> cell=<k>.
using Trace = std::vector<std::string>;

// Raised when the host is too small for a stage to continue. Never raised
// when the relevant bound function is satisfied.
struct InsufficientMesh : std::runtime_error {
    std::string stage;
    long long required = 0;  // the missing quantity, stage-specific units
    long long available = 0;

    InsufficientMesh(std::string stage_, long long required_, long long available_)
        : std::runtime_error("insufficient mesh at stage '" + stage_ + "': required " +
                             std::to_string(required_) + ", available " +
                             std::to_string(available_)),
          stage(std::move(stage_)),
          required(required_),
          available(available_) {}
};

} // namespace cmh
