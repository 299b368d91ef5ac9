// SPDX-License-Identifier: Apache-2.0
//
// areamimo: area-throughput evaluation of spatially consistent massive MIMO channels
// Copyright (C) 2026 The areamimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace areamimo
{

// Broad failure class; the CLI maps it onto its exit code.
enum class ErrorCategory
{
    config,
    data,
    numerical
};

// Fine-grained error kind carried by every areamimo::Error.
enum class ErrorKind
{
    invalid_params,
    zero_distance,
    shape_mismatch,
    io_error,
    format_error,
    serialization_error,
    numerical_failure,
    seed_claimed,
    out_of_bounds,
    insufficient_unclaimed_cells,
    k_too_large,
    empty_input,
    single_cluster_sir,
    empty_cluster,
    config_error
};

const char *to_string(ErrorKind kind) noexcept;
ErrorCategory category_of(ErrorKind kind) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_of(kind_); }

private:
    ErrorKind kind_;
};

inline const char *to_string(ErrorKind kind) noexcept
{
    switch (kind)
    {
    case ErrorKind::invalid_params:
        return "InvalidParams";
    case ErrorKind::zero_distance:
        return "ZeroDistance";
    case ErrorKind::shape_mismatch:
        return "ShapeMismatch";
    case ErrorKind::io_error:
        return "IoError";
    case ErrorKind::format_error:
        return "FormatError";
    case ErrorKind::serialization_error:
        return "SerializationError";
    case ErrorKind::numerical_failure:
        return "NumericalFailure";
    case ErrorKind::seed_claimed:
        return "SeedClaimed";
    case ErrorKind::out_of_bounds:
        return "OutOfBounds";
    case ErrorKind::insufficient_unclaimed_cells:
        return "InsufficientUnclaimedCells";
    case ErrorKind::k_too_large:
        return "KTooLarge";
    case ErrorKind::empty_input:
        return "EmptyInput";
    case ErrorKind::single_cluster_sir:
        return "SingleClusterSIR";
    case ErrorKind::empty_cluster:
        return "EmptyCluster";
    case ErrorKind::config_error:
        return "ConfigError";
    }
    return "Unknown";
}

inline ErrorCategory category_of(ErrorKind kind) noexcept
{
    switch (kind)
    {
    case ErrorKind::config_error:
    case ErrorKind::invalid_params:
        return ErrorCategory::config;
    case ErrorKind::numerical_failure:
        return ErrorCategory::numerical;
    default:
        return ErrorCategory::data;
    }
}

} // namespace areamimo
