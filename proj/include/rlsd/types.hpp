#pragma once

#include <Eigen/Dense>

namespace rlsd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// View a flattened block as its matrix shape (column-major, Eigen native).
inline Eigen::Map<const Matrix> as_matrix(const Vector& v, Index rows, Index cols) {
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

inline Vector as_vector(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

}  // namespace rlsd
