#include "curvedtop/elim.hpp"

#include <algorithm>
#include <set>

#include "curvedtop/errors.hpp"

#ifdef CURVEDTOP_OPENMP
#include <omp.h>
#endif

namespace curvedtop::elim {

namespace {

bool run_parallel(Mode mode, size_t work) {
#ifdef CURVEDTOP_OPENMP
    if (mode == Mode::serial) return false;
    if (mode == Mode::parallel) return true;
    return work >= 64;
#else
    (void)mode;
    (void)work;
    return false;
#endif
}

struct WorkMatrix {
    std::vector<std::map<long, Scalar>> rows;
    std::vector<std::set<long>> col_rows;  // col -> rows with a nonzero entry
    std::vector<char> row_alive;

    explicit WorkMatrix(const SparseMatrixQ& a)
        : rows(a.rows()), col_rows(a.cols()), row_alive(a.rows(), 1) {
        for (long r = 0; r < a.rows(); ++r) {
            rows[r] = a.row(r);
            for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);
        }
    }
};

}  // namespace

long rank(const SparseMatrixQ& a, const Options& opts) {
    WorkMatrix w(a);
    long rank = 0;
    std::vector<long> live;
    for (long r = 0; r < a.rows(); ++r)
        if (!w.rows[r].empty()) live.push_back(r);

    while (true) {
        // pivot selection: smallest scalar complexity, then smallest
        // Markowitz fill estimate (len(row)-1)*(len(col)-1)
        long pr = -1, pc = -1;
        size_t best_cx = 0;
        long best_fill = 0;
        for (long r : live) {
            if (!w.row_alive[r] || w.rows[r].empty()) continue;
            for (const auto& [c, v] : w.rows[r]) {
                size_t cx = v.complexity();
                long fill = static_cast<long>(w.rows[r].size() - 1) *
                            static_cast<long>(w.col_rows[c].size() - 1);
                bool better;
                if (pr < 0) {
                    better = true;
                } else if (opts.pivot_strategy == 1) {
                    better = false;  // first-nonzero strategy: keep the first
                } else {
                    better = cx < best_cx || (cx == best_cx && fill < best_fill);
                }
                if (better) {
                    pr = r;
                    pc = c;
                    best_cx = cx;
                    best_fill = fill;
                    if (opts.pivot_strategy == 1) break;
                }
            }
            if (opts.pivot_strategy == 1 && pr >= 0) break;
        }
        if (pr < 0) break;
        ++rank;

        std::map<long, Scalar> pivot_row = std::move(w.rows[pr]);
        const Scalar pivot_val = pivot_row.at(pc);
        w.row_alive[pr] = 0;
        for (const auto& [c, v] : pivot_row) w.col_rows[c].erase(pr);

        std::vector<long> targets(w.col_rows[pc].begin(), w.col_rows[pc].end());
        // the arithmetic per target row is independent; index maintenance is
        // patched serially afterwards
        std::vector<std::vector<long>> added(targets.size()), removed(targets.size());

        auto update_one = [&](size_t ti) {
            long r = targets[ti];
            std::map<long, Scalar>& row = w.rows[r];
            Scalar f = row.at(pc) / pivot_val;
            for (const auto& [c, v] : pivot_row) {
                auto it = row.find(c);
                if (it == row.end()) {
                    Scalar nv = -(f * v);
                    if (!nv.is_zero()) {
                        row.emplace(c, std::move(nv));
                        added[ti].push_back(c);
                    }
                } else {
                    it->second -= f * v;
                    if (it->second.is_zero()) {
                        row.erase(it);
                        removed[ti].push_back(c);
                    }
                }
            }
        };

        if (run_parallel(opts.mode, targets.size())) {
#ifdef CURVEDTOP_OPENMP
#pragma omp parallel for schedule(dynamic)
            for (size_t ti = 0; ti < targets.size(); ++ti) update_one(ti);
#endif
        } else {
            for (size_t ti = 0; ti < targets.size(); ++ti) update_one(ti);
        }

        for (size_t ti = 0; ti < targets.size(); ++ti) {
            for (long c : added[ti]) w.col_rows[c].insert(targets[ti]);
            for (long c : removed[ti]) w.col_rows[c].erase(targets[ti]);
        }
        w.col_rows[pc].clear();
    }
    return rank;
}

long rank_bareiss_dense(const SparseMatrixQ& a, const Options& opts) {
    const long nr = a.rows(), nc = a.cols();
    if (nr == 0 || nc == 0) return 0;

    // clear denominators row by row: row scaling preserves rank
    std::vector<std::vector<mpz_class>> m(nr, std::vector<mpz_class>(nc, mpz_class(0)));
    for (long r = 0; r < nr; ++r) {
        mpz_class l(1);
        for (const auto& [c, v] : a.row(r)) {
            if (!v.is_rational())
                throw contract_error("bareiss kernel requires rational entries");
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.rational().get_den().get_mpz_t());
        }
        for (const auto& [c, v] : a.row(r)) {
            Rat q = v.rational();
            m[r][c] = q.get_num() * (l / q.get_den());
        }
    }

    mpz_class prev(1);
    long rank = 0;
    std::vector<long> rowperm(nr);
    for (long i = 0; i < nr; ++i) rowperm[i] = i;

    for (long c = 0; c < nc && rank < nr; ++c) {
        // pivot: nonzero entry of smallest bit length in this column
        long pr = -1;
        size_t best = 0;
        for (long i = rank; i < nr; ++i) {
            const mpz_class& v = m[rowperm[i]][c];
            if (v == 0) continue;
            size_t b = mpz_sizeinbase(v.get_mpz_t(), 2);
            if (pr < 0 || b < best) {
                pr = i;
                best = b;
            }
        }
        if (pr < 0) continue;
        std::swap(rowperm[rank], rowperm[pr]);
        const long prow = rowperm[rank];
        const mpz_class piv = m[prow][c];

        auto update_row = [&](long i) {
            long r = rowperm[i];
            const mpz_class head = m[r][c];
            if (head == 0 && piv == prev) return;  // row would be rescaled by 1
            for (long j = c + 1; j < nc; ++j) {
                mpz_class v = m[r][j] * piv - head * m[prow][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[r][j] = std::move(v);
            }
            m[r][c] = 0;
        };

        const long nrows_left = nr - rank - 1;
        if (run_parallel(opts.mode, static_cast<size_t>(std::max(0L, nrows_left)))) {
#ifdef CURVEDTOP_OPENMP
#pragma omp parallel for schedule(static)
            for (long i = rank + 1; i < nr; ++i) update_row(i);
#endif
        } else {
            for (long i = rank + 1; i < nr; ++i) update_row(i);
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

long Echelon::add(const std::vector<Scalar>& v, long tag) {
    std::map<long, Scalar> s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace(static_cast<long>(i), v[i]);
    return add_sparse(s, tag);
}

long Echelon::add_sparse(const std::map<long, Scalar>& v, long tag) {
    std::map<long, Scalar> rem = reduce(v);
    if (rem.empty()) return -1;
    long pc = rem.begin()->first;
    Scalar inv = rem.begin()->second.inverse();
    for (auto& [c, x] : rem) x *= inv;
    rows_.emplace(pc, std::move(rem));
    tags_.emplace(pc, tag);
    order_.push_back(pc);
    return pc;
}

std::map<long, Scalar> Echelon::reduce(const std::map<long, Scalar>& v,
                                       std::map<long, Scalar>* coeffs) const {
    std::map<long, Scalar> rem = v;
    std::map<long, Scalar> out;  // irreducible part, heads strictly increasing
    while (!rem.empty()) {
        long head = rem.begin()->first;
        auto it = rows_.find(head);
        if (it == rows_.end()) {
            out.emplace(head, std::move(rem.begin()->second));
            rem.erase(rem.begin());
            continue;
        }
        Scalar f = rem.begin()->second;
        if (coeffs) (*coeffs)[tags_.at(head)] += f;
        for (const auto& [c, x] : it->second) {
            auto jt = rem.find(c);
            if (jt == rem.end()) {
                Scalar nv = -(f * x);
                if (!nv.is_zero()) rem.emplace(c, std::move(nv));
            } else {
                jt->second -= f * x;
                if (jt->second.is_zero()) rem.erase(jt);
            }
        }
    }
    return out;
}

std::vector<std::map<long, Scalar>> kernel_basis(const SparseMatrixQ& a, long max_vectors) {
    // forward elimination keeping echelon rows, then back-substitution per
    // free column
    Echelon ech(a.cols());
    std::vector<long> order(a.rows());
    for (long r = 0; r < a.rows(); ++r) order[r] = r;
    std::stable_sort(order.begin(), order.end(), [&](long x, long y) {
        return a.row(x).size() < a.row(y).size();
    });
    for (long r : order)
        if (!a.row(r).empty()) ech.add_sparse(a.row(r));

    std::set<long> pivot_cols;
    for (const auto& [pc, row] : ech.rows()) pivot_cols.insert(pc);

    std::vector<std::map<long, Scalar>> out;
    for (long c = 0; c < a.cols(); ++c) {
        if (pivot_cols.count(c)) continue;
        // x_c = 1, other free vars 0; solve pivots top-down is unnecessary:
        // echelon rows are already inter-reduced lazily via reduce()
        std::map<long, Scalar> x;
        x.emplace(c, Scalar(1));
        // substitute into each pivot row, bottom-up over pivot columns > none:
        // process pivot rows in decreasing pivot column so each solves cleanly
        for (auto it = ech.rows().rbegin(); it != ech.rows().rend(); ++it) {
            const auto& [pc, row] = *it;
            // value of the row at current x
            Scalar acc;
            for (const auto& [col, v] : row) {
                if (col == pc) continue;
                auto jt = x.find(col);
                if (jt != x.end()) acc += v * jt->second;
            }
            if (!acc.is_zero()) x[pc] = -acc;
        }
        out.push_back(std::move(x));
        if (max_vectors >= 0 && static_cast<long>(out.size()) >= max_vectors) break;
    }
    return out;
}

std::optional<std::vector<Scalar>> solve(const SparseMatrixQ& a, const std::vector<Scalar>& b) {
    if (static_cast<long>(b.size()) != a.rows())
        throw consistency_error("solve shape mismatch");
    // eliminate on the transpose-augmented system: work with columns of A as
    // rows plus b, tracking combinations
    // Simpler: echelon of [A | I]-style on rows of A^T.
    SparseMatrixQ at = a.transposed();
    // rows of at are columns of A; we look for x with sum x_c * col_c = b.
    Echelon ech(a.rows());
    std::map<long, std::map<long, Scalar>> combos;  // pivot col of ech -> x-combination
    std::map<long, long> pivot_to_col;
    for (long c = 0; c < at.rows(); ++c) {
        const auto& col = at.row(c);
        if (col.empty()) continue;
        std::map<long, Scalar> track;
        std::map<long, Scalar> rem = ech.reduce(col, &track);
        if (rem.empty()) continue;
        long pc = rem.begin()->first;
        Scalar inv = rem.begin()->second.inverse();
        for (auto& [i, v] : rem) v *= inv;
        // combination producing this echelon row: (col_c - sum track) * inv
        std::map<long, Scalar> combo;
        combo[c] = inv;
        for (const auto& [tag, f] : track) {
            for (const auto& [cc, fv] : combos.at(tag)) combo[cc] -= inv * f * fv;
        }
        combos.emplace(pc, std::move(combo));
        ech.add_sparse(rem, pc);
        pivot_to_col.emplace(pc, c);
    }
    std::map<long, Scalar> bs;
    for (size_t i = 0; i < b.size(); ++i)
        if (!b[i].is_zero()) bs.emplace(static_cast<long>(i), b[i]);
    std::map<long, Scalar> track;
    std::map<long, Scalar> rem = ech.reduce(bs, &track);
    if (!rem.empty()) return std::nullopt;
    std::vector<Scalar> x(a.cols());
    for (const auto& [tag, f] : track)
        for (const auto& [c, fv] : combos.at(tag)) x[c] += f * fv;
    return x;
}

}  // namespace curvedtop::elim
