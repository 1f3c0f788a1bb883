#pragma once

#include "dagger/padic.hpp"

#include <optional>
#include <vector>

namespace dagger {

/// Dense matrix over Q, row-major.
using Matrix = std::vector<std::vector<Rational>>;

/// Rank by exact Gaussian elimination.
long rank(Matrix m);

Rational determinant(Matrix m);

/// Some solution of m x = b, or nullopt if the system is inconsistent.
std::optional<std::vector<Rational>> solve(Matrix m, std::vector<Rational> b);

}  // namespace dagger
