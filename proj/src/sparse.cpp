#include "curvedtop/sparse.hpp"

#include <sstream>

#include "curvedtop/errors.hpp"

namespace curvedtop {

void SparseMatrixQ::set(long r, long c, const Scalar& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw consistency_error("sparse set out of range");
    if (v.is_zero())
        row_[r].erase(c);
    else
        row_[r][c] = v;
}

void SparseMatrixQ::add(long r, long c, const Scalar& v) {
    if (v.is_zero()) return;
    auto it = row_[r].find(c);
    if (it == row_[r].end()) {
        row_[r].emplace(c, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) row_[r].erase(it);
    }
}

Scalar SparseMatrixQ::get(long r, long c) const {
    auto it = row_[r].find(c);
    return it == row_[r].end() ? Scalar() : it->second;
}

size_t SparseMatrixQ::nnz() const {
    size_t n = 0;
    for (const auto& r : row_) n += r.size();
    return n;
}

SparseMatrixQ SparseMatrixQ::transposed() const {
    SparseMatrixQ out(cols_, rows_);
    for (long r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r]) out.row_[c].emplace(r, v);
    return out;
}

SparseMatrixQ SparseMatrixQ::operator*(const SparseMatrixQ& o) const {
    if (cols_ != o.rows_) throw consistency_error("sparse product shape mismatch");
    SparseMatrixQ out(rows_, o.cols_);
    for (long r = 0; r < rows_; ++r)
        for (const auto& [k, v] : row_[r])
            for (const auto& [c, w] : o.row_[k]) out.add(r, c, v * w);
    return out;
}

SparseMatrixQ SparseMatrixQ::operator+(const SparseMatrixQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw consistency_error("sparse sum shape mismatch");
    SparseMatrixQ out(*this);
    for (long r = 0; r < rows_; ++r)
        for (const auto& [c, v] : o.row_[r]) out.add(r, c, v);
    return out;
}

SparseMatrixQ SparseMatrixQ::operator-() const {
    SparseMatrixQ out(*this);
    for (long r = 0; r < rows_; ++r)
        for (auto& [c, v] : out.row_[r]) v = -v;
    return out;
}

bool SparseMatrixQ::operator==(const SparseMatrixQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (long r = 0; r < rows_; ++r) {
        if (row_[r].size() != o.row_[r].size()) return false;
        auto it = o.row_[r].begin();
        for (const auto& [c, v] : row_[r]) {
            if (it->first != c || !(it->second == v)) return false;
            ++it;
        }
    }
    return true;
}

std::vector<Scalar> SparseMatrixQ::apply(const std::vector<Scalar>& v) const {
    if (static_cast<long>(v.size()) != cols_)
        throw consistency_error("sparse apply shape mismatch");
    std::vector<Scalar> out(rows_);
    for (long r = 0; r < rows_; ++r)
        for (const auto& [c, w] : row_[r]) out[r] += w * v[c];
    return out;
}

SparseMatrixQ SparseMatrixQ::identity(long n) {
    SparseMatrixQ out(n, n);
    for (long i = 0; i < n; ++i) out.set(i, i, Scalar(1));
    return out;
}

std::string SparseMatrixQ::str() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " [";
    for (long r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r])
            os << " (" << r << "," << c << ")=" << v.str();
    os << " ]";
    return os.str();
}

}  // namespace curvedtop
