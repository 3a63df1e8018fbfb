#pragma once

#include <array>

namespace netpolicy {

using Matrix4 = std::array<std::array<double, 4>, 4>;
using Vector4 = std::array<double, 4>;

double determinant3(const std::array<std::array<double, 3>, 3>& m);
double determinant4(const Matrix4& m);

/// Cramer's rule. The caller is responsible for a non-singular matrix; a zero
/// determinant yields non-finite components.
Vector4 cramer_solve(const Matrix4& m, const Vector4& rhs);

}  // namespace netpolicy
