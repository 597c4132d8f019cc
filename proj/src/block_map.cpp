#include "rlsd/block_map.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace rlsd {

const char* to_string(MapKind kind) {
    switch (kind) {
        case MapKind::Dense: return "dense";
        case MapKind::Identity: return "identity";
        case MapKind::RankOneColumn: return "rank_one_column";
        case MapKind::EntryMask: return "entry_mask";
        case MapKind::Empty: return "empty";
    }
    return "?";
}

BlockMap BlockMap::dense(Matrix a) {
    if (a.rows() < 1 || a.cols() < 1) throw InvalidInputError("dense map: empty matrix");
    if (!a.allFinite()) throw InvalidInputError("dense map: non-finite entries");
    if (a.cols() > a.rows()) throw InvalidInputError("dense map: more columns than rows");

    BlockMap m;
    m.kind_ = MapKind::Dense;
    m.input_dim_ = a.cols();
    m.output_dim_ = a.rows();

    Eigen::BDCSVD<Matrix> svd(a);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 1e-10) throw InvalidInputError("dense map: not full column rank (sigma_min <= 1e-10)");
    m.op_norm_sq_ = smax * smax;
    m.full_column_rank_ = true;

    Matrix gram = a.transpose() * a;
    const double c = gram.trace() / static_cast<double>(a.cols());
    Matrix dev = gram;
    dev.diagonal().array() -= c;
    if (c > 0 && dev.cwiseAbs().maxCoeff() <= 1e-8) m.orthogonal_scale_ = c;

    m.a_ = std::move(a);
    return m;
}

BlockMap BlockMap::identity(Index n) {
    if (n < 1) throw InvalidInputError("identity map: dimension must be >= 1");
    BlockMap m;
    m.kind_ = MapKind::Identity;
    m.input_dim_ = m.output_dim_ = n;
    m.orthogonal_scale_ = 1.0;
    m.op_norm_sq_ = 1.0;
    return m;
}

BlockMap BlockMap::rank_one_column(Index rows, Index cols) {
    if (rows < 1 || cols < 1) throw InvalidInputError("rank_one_column map: bad shape");
    BlockMap m;
    m.kind_ = MapKind::RankOneColumn;
    m.rows_ = rows;
    m.cols_ = cols;
    m.input_dim_ = rows;
    m.output_dim_ = rows * cols;
    // (u e^T)^T (u e^T) reduces to cols * I on the input space.
    m.orthogonal_scale_ = static_cast<double>(cols);
    m.op_norm_sq_ = static_cast<double>(cols);
    return m;
}

BlockMap BlockMap::entry_mask(Index rows, Index cols,
                              const std::vector<std::pair<Index, Index>>& entries) {
    if (rows < 1 || cols < 1) throw InvalidInputError("entry_mask map: bad shape");
    if (entries.empty()) throw InvalidInputError("entry_mask map: empty index set");
    BlockMap m;
    m.kind_ = MapKind::EntryMask;
    m.rows_ = rows;
    m.cols_ = cols;
    m.input_dim_ = m.output_dim_ = rows * cols;
    m.mask_.reserve(entries.size());
    for (auto [i, j] : entries) {
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw InvalidInputError("entry_mask map: index out of range");
        m.mask_.push_back(i + j * rows);
    }
    std::sort(m.mask_.begin(), m.mask_.end());
    m.mask_.erase(std::unique(m.mask_.begin(), m.mask_.end()), m.mask_.end());
    m.op_norm_sq_ = 1.0;
    m.full_column_rank_ = static_cast<Index>(m.mask_.size()) == rows * cols;
    return m;
}

BlockMap BlockMap::empty(Index output_dim) {
    if (output_dim < 1) throw InvalidInputError("empty map: output dimension must be >= 1");
    BlockMap m;
    m.kind_ = MapKind::Empty;
    m.input_dim_ = 0;
    m.output_dim_ = output_dim;
    m.op_norm_sq_ = 0.0;
    return m;
}

Vector BlockMap::apply(const Vector& x) const {
    if (x.size() != input_dim_) throw InvalidInputError("block map apply: dimension mismatch");
    switch (kind_) {
        case MapKind::Dense: return a_ * x;
        case MapKind::Identity: return x;
        case MapKind::RankOneColumn: {
            Vector y(output_dim_);
            for (Index j = 0; j < cols_; ++j) y.segment(j * rows_, rows_) = x;
            return y;
        }
        case MapKind::EntryMask: {
            Vector y = Vector::Zero(output_dim_);
            for (Index idx : mask_) y[idx] = x[idx];
            return y;
        }
        case MapKind::Empty: return Vector::Zero(output_dim_);
    }
    throw InvalidInputError("block map apply: unknown kind");
}

Vector BlockMap::apply_transpose(const Vector& y) const {
    if (y.size() != output_dim_) throw InvalidInputError("block map apply_transpose: dimension mismatch");
    switch (kind_) {
        case MapKind::Dense: return a_.transpose() * y;
        case MapKind::Identity: return y;
        case MapKind::RankOneColumn: {
            Vector x = Vector::Zero(rows_);
            for (Index j = 0; j < cols_; ++j) x += y.segment(j * rows_, rows_);
            return x;
        }
        case MapKind::EntryMask: {
            Vector x = Vector::Zero(input_dim_);
            for (Index idx : mask_) x[idx] = y[idx];
            return x;
        }
        case MapKind::Empty: return Vector(0);
    }
    throw InvalidInputError("block map apply_transpose: unknown kind");
}

const Matrix& BlockMap::matrix() const {
    if (kind_ != MapKind::Dense) throw InvalidInputError("matrix(): not a dense map");
    return a_;
}

const std::vector<Index>& BlockMap::mask() const {
    if (kind_ != MapKind::EntryMask) throw InvalidInputError("mask(): not an entry-mask map");
    return mask_;
}

Matrix BlockMap::materialize() const {
    Matrix a = Matrix::Zero(output_dim_, input_dim_);
    for (Index j = 0; j < input_dim_; ++j) {
        Vector e = Vector::Zero(input_dim_);
        e[j] = 1.0;
        a.col(j) = apply(e);
    }
    return a;
}

}  // namespace rlsd
