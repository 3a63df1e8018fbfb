#include "netpolicy/linalg.hpp"

namespace netpolicy {

double determinant3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double determinant4(const Matrix4& m) {
  // Laplace expansion along the first row.
  double det = 0.0;
  double sign = 1.0;
  for (int col = 0; col < 4; ++col) {
    std::array<std::array<double, 3>, 3> minor{};
    for (int i = 1; i < 4; ++i) {
      int jj = 0;
      for (int j = 0; j < 4; ++j) {
        if (j == col) continue;
        minor[i - 1][jj++] = m[i][j];
      }
    }
    det += sign * m[0][col] * determinant3(minor);
    sign = -sign;
  }
  return det;
}

Vector4 cramer_solve(const Matrix4& m, const Vector4& rhs) {
  const double det = determinant4(m);
  Vector4 x{};
  for (int col = 0; col < 4; ++col) {
    Matrix4 replaced = m;
    for (int row = 0; row < 4; ++row) replaced[row][col] = rhs[row];
    x[col] = determinant4(replaced) / det;
  }
  return x;
}

}  // namespace netpolicy
