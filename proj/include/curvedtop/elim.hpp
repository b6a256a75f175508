#pragma once

#include <map>
#include <optional>
#include <vector>

#include "curvedtop/sparse.hpp"

namespace curvedtop::elim {

enum class Mode { serial, parallel, automatic };

struct Options {
    Mode mode = Mode::automatic;
    // pivot preference: 0 = complexity then Markowitz fill, 1 = first nonzero
    // (kept as a knob so gauge-invariance tests can vary the elimination path)
    int pivot_strategy = 0;
};

// Rank over the fraction field (Q or Q(t)).  Sparse Markowitz-style
// elimination; row updates run in parallel when enabled.
long rank(const SparseMatrixQ& a, const Options& opts = {});

// Fraction-free Bareiss elimination on a dense integer copy.  Requires all
// entries to be plain rationals.  Serial and OpenMP variants share the
// one-step Bareiss recurrence; parallel splits the row-update loop.
long rank_bareiss_dense(const SparseMatrixQ& a, const Options& opts = {});

// Incremental row-space echelon over Scalar, used for kernel extraction,
// solving and membership tests on moderate-size systems.
class Echelon {
public:
    Echelon() = default;
    explicit Echelon(long cols) : cols_(cols) {}

    long cols() const { return cols_; }
    long rank() const { return static_cast<long>(order_.size()); }

    // Reduce v against the stored rows and, if a nonzero remainder is left,
    // insert it (normalized).  Returns the new pivot column, or -1 if v was
    // already in the row space.
    long add(const std::vector<Scalar>& v, long tag = -1);
    long add_sparse(const std::map<long, Scalar>& v, long tag = -1);

    // Remainder of v after reduction.  If coeffs is non-null it receives, for
    // every stored row (keyed by its tag), the coefficient used.
    std::map<long, Scalar> reduce(const std::map<long, Scalar>& v,
                                  std::map<long, Scalar>* coeffs = nullptr) const;

    bool contains(const std::map<long, Scalar>& v) const { return reduce(v).empty(); }

    const std::map<long, std::map<long, Scalar>>& rows() const { return rows_; }

private:
    long cols_ = 0;
    std::map<long, std::map<long, Scalar>> rows_;  // pivot col -> normalized row
    std::map<long, long> tags_;                    // pivot col -> caller tag
    std::vector<long> order_;                      // pivot cols in insertion order
};

// Basis of the null space { x : A x = 0 }.  Stops after max_vectors when the
// caller only needs part of the kernel (max_vectors < 0 means all).
std::vector<std::map<long, Scalar>> kernel_basis(const SparseMatrixQ& a,
                                                 long max_vectors = -1);

// One solution of A x = b, if any.
std::optional<std::vector<Scalar>> solve(const SparseMatrixQ& a,
                                         const std::vector<Scalar>& b);

}  // namespace curvedtop::elim
