#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flatring/harmonics.hpp"

namespace flatring::verify {

struct Check {
    std::string name;
    double residual;
    double tolerance;
    bool pass;
};

struct Options {
    double k = 0.5;
    Truncation truncation{20, 20};
    std::uint64_t seed = 1;
    // Replaces every check's own tolerance when set.
    std::optional<double> tolerance;
};

// elliptic, lame, harmonics, dirichlet, limits.
std::span<const std::string_view> suite_names();

// Runs one suite, or every suite for "all". Random point sets depend only on
// the seed. Throws DomainError for an unknown suite name.
std::vector<Check> run(std::string_view suite, const Options& options);

}  // namespace flatring::verify
