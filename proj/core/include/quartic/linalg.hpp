#pragma once

#include <optional>
#include <vector>

#include "quartic/exact.hpp"

namespace quartic {

/// Dense exact-rational matrix utilities. Small systems only (the geometry
/// never needs more than ~10 equations), so plain Gaussian elimination.
using QMat = std::vector<std::vector<Rat>>;
using QVec = std::vector<Rat>;

/// Row-reduces [M | b] and returns one solution of M x = b (free variables
/// set to zero), or nullopt if inconsistent.
std::optional<QVec> solve_linear(QMat m, QVec b);

/// Basis of the right kernel of M, deterministic (one vector per free
/// column, in column order, pivot entries back-substituted).
std::vector<QVec> kernel_basis(QMat m);

/// Rank of M.
size_t matrix_rank(QMat m);

/// Clears denominators and content; canonical sign on first nonzero entry.
Vec4I integral_vec4(const QVec& v);

} // namespace quartic
