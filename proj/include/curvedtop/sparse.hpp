#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "curvedtop/scalar.hpp"

namespace curvedtop {

/*
 * SparseMatrixQ: row-major sparse matrix over Scalar (Q or Q(t)).
 * Invariant: no stored entry is zero.
 */
class SparseMatrixQ {
public:
    SparseMatrixQ() = default;
    SparseMatrixQ(long rows, long cols) : rows_(rows), cols_(cols), row_(rows) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    void set(long r, long c, const Scalar& v);
    void add(long r, long c, const Scalar& v);
    Scalar get(long r, long c) const;

    const std::map<long, Scalar>& row(long r) const { return row_[r]; }

    size_t nnz() const;
    bool is_zero() const { return nnz() == 0; }

    SparseMatrixQ transposed() const;
    SparseMatrixQ operator*(const SparseMatrixQ& o) const;
    SparseMatrixQ operator+(const SparseMatrixQ& o) const;
    SparseMatrixQ operator-() const;
    bool operator==(const SparseMatrixQ& o) const;

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

    static SparseMatrixQ identity(long n);

    std::string str() const;

private:
    long rows_ = 0, cols_ = 0;
    std::vector<std::map<long, Scalar>> row_;
};

}  // namespace curvedtop
