// Copyright 2026 The mvfr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvfr {

enum class Errc {
    DimensionMismatch,
    NotPSD,
    Singular,
    NotUnitTrace,
    ZeroAtom,
    ZeroMass,
    SupportMismatch,
    NotProbability,
    Antipodal,
    ZeroLength,
    InfiniteEndpointEntropy,
    NoConvergence,
    FixedPointDiverged,
    InvalidArgument,
    Parse,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotPSD: return "NotPSD";
    case Errc::Singular: return "Singular";
    case Errc::NotUnitTrace: return "NotUnitTrace";
    case Errc::ZeroAtom: return "ZeroAtom";
    case Errc::ZeroMass: return "ZeroMass";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::NotProbability: return "NotProbability";
    case Errc::Antipodal: return "Antipodal";
    case Errc::ZeroLength: return "ZeroLength";
    case Errc::InfiniteEndpointEntropy: return "InfiniteEndpointEntropy";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::FixedPointDiverged: return "FixedPointDiverged";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable error kind. Every failure raised by
/// the library goes through this type so callers (the CLI in particular) can
/// map kinds onto exit codes.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace mvfr
