#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace homalg {

// A mathematical hard failure (oracle mismatch, d² ≠ 0, non-regular input
// where regularity is required). Carries a machine-readable witness.
class MathFailure : public std::runtime_error
{
public:
    MathFailure(const std::string& what, nlohmann::json witness)
        : std::runtime_error(what), witness_(std::move(witness))
    {
    }
    const nlohmann::json& witness() const { return witness_; }

private:
    nlohmann::json witness_;
};

}  // namespace homalg
