#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rlsd/errors.hpp"
#include "rlsd/types.hpp"

namespace rlsd {

enum class MapKind { Dense, Identity, RankOneColumn, EntryMask, Empty };

const char* to_string(MapKind kind);

// Affine block map A_i acting on flattened (column-major) vectors.
//
//   Dense          arbitrary full-column-rank matrix
//   Identity       x -> x
//   RankOneColumn  u in R^m -> vec(u e^T) in R^{m*n}
//   EntryMask      keeps the entries in an index set, zeroes the rest
//   Empty          zero-dimensional block contributing nothing
//
// EntryMask is a 0/1 projection: it carries no orthogonal_scale and, unless
// the mask covers every entry, fails the full-column-rank assumption (it is
// still constructible; diagnostics treat such problems as uncertified).
class BlockMap {
public:
    static BlockMap dense(Matrix a);
    static BlockMap identity(Index n);
    static BlockMap rank_one_column(Index rows, Index cols);
    static BlockMap entry_mask(Index rows, Index cols,
                               const std::vector<std::pair<Index, Index>>& entries);
    static BlockMap empty(Index output_dim);

    MapKind kind() const { return kind_; }
    Index input_dim() const { return input_dim_; }
    Index output_dim() const { return output_dim_; }
    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    // c such that A^T A = c I, when that structure holds.
    std::optional<double> orthogonal_scale() const { return orthogonal_scale_; }
    // |A|_2^2, the Lipschitz factor of x -> A^T(Ax).
    double op_norm_sq() const { return op_norm_sq_; }
    bool full_column_rank() const { return full_column_rank_; }

    Vector apply(const Vector& x) const;
    Vector apply_transpose(const Vector& y) const;

    const Matrix& matrix() const;             // Dense only
    const std::vector<Index>& mask() const;   // EntryMask only, sorted flattened indices

    // Dense materialization of the map (output_dim x input_dim).
    Matrix materialize() const;

private:
    BlockMap() = default;

    MapKind kind_ = MapKind::Empty;
    Index input_dim_ = 0;
    Index output_dim_ = 0;
    Index rows_ = 0, cols_ = 0;
    Matrix a_;
    std::vector<Index> mask_;
    std::optional<double> orthogonal_scale_;
    double op_norm_sq_ = 0.0;
    bool full_column_rank_ = true;
};

}  // namespace rlsd
