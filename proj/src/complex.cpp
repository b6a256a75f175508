#include "curvedtop/complex.hpp"

#include <algorithm>
#include <set>

#include "curvedtop/errors.hpp"

#ifdef CURVEDTOP_OPENMP
#include <omp.h>
#endif

namespace curvedtop {

ScalarField ScalarField::rational() { return ScalarField{}; }

ScalarField ScalarField::with_t(int t_degree, int window_min, int window_max) {
    ScalarField f;
    f.mode = Mode::rational_with_t;
    f.t_degree = t_degree;
    f.window_min = window_min;
    f.window_max = window_max;
    f.validate();
    return f;
}

void ScalarField::validate() const {
    if (mode == Mode::rational_with_t) {
        if (t_degree == 0 || t_degree % 2 != 0)
            throw contract_error("t_degree must be even and nonzero");
    }
    if (window_min > 0 || window_max < 0)
        throw contract_error("laurent window must contain 0");
}

long TruncatedComplex::dim(int k) const {
    auto it = basis.find(k);
    return it == basis.end() ? 0 : static_cast<long>(it->second.size());
}

bool TruncatedComplex::in_window(int k) const {
    if (grading == Grading::Z2) return k == 0 || k == 1;
    return k >= lo && k <= hi;
}

int TruncatedComplex::next_deg(int k) const {
    return grading == Grading::Z2 ? (k + 1) % 2 : k + 1;
}

int TruncatedComplex::prev_deg(int k) const {
    return grading == Grading::Z2 ? (k + 1) % 2 : k - 1;
}

const SparseMatrixQ* TruncatedComplex::diff_at(int k) const {
    auto it = diff.find(k);
    return it == diff.end() ? nullptr : &it->second;
}

bool TruncatedComplex::is_certified(int k) const {
    auto it = certified.find(k);
    return it == certified.end() ? true : it->second;
}

void TruncatedComplex::validate() const {
    field.validate();
    for (const auto& [k, m] : diff) {
        if (!in_window(k)) throw window_error("differential at degree outside window");
        if (m.cols() != dim(k) || m.rows() != dim(next_deg(k)))
            throw consistency_error("differential shape mismatch at degree " +
                                    std::to_string(k));
    }
    for (const auto& [k, m] : diff) {
        const SparseMatrixQ* n = diff_at(next_deg(k));
        if (!n) continue;
        if (grading == Grading::Z && next_deg(k) > hi) continue;
        SparseMatrixQ dd = (*n) * m;
        if (!dd.is_zero())
            throw consistency_error("d∘d nonzero inside window at degree " +
                                    std::to_string(k));
    }
}

void ChainMap::validate() const {
    if (source.grading != target.grading)
        throw window_error("chain map grading mismatch");
    if (source.grading == Grading::Z &&
        (source.lo != target.lo || source.hi != target.hi))
        throw window_error("chain map window mismatch");
    for (const auto& [k, f] : maps) {
        if (f.cols() != source.dim(k) || f.rows() != target.dim(k))
            throw consistency_error("chain map shape mismatch at degree " +
                                    std::to_string(k));
    }
    for (const auto& [k, f] : maps) {
        const SparseMatrixQ* ds = source.diff_at(k);
        const SparseMatrixQ* dt = target.diff_at(k);
        auto fn = maps.find(source.next_deg(k));
        if (!ds || !dt || fn == maps.end()) continue;
        SparseMatrixQ lhs = fn->second * (*ds);
        SparseMatrixQ rhs = (*dt) * f;
        if (!(lhs == rhs))
            throw consistency_error("chain map does not commute with d at degree " +
                                    std::to_string(k));
    }
}

namespace {

// homology dimension needs the matrix ranks of the outgoing and incoming
// differentials; a missing differential at a window edge acts as the zero map
long rank_or_zero(const TruncatedComplex& c, int k, const elim::Options& opts,
                  std::map<int, long>& cache) {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    const SparseMatrixQ* d = c.diff_at(k);
    long r = d ? elim::rank(*d, opts) : 0;
    cache[k] = r;
    return r;
}

}  // namespace

HomologyReport homology_dims(const TruncatedComplex& c, const std::vector<int>& degs,
                             const elim::Options& opts) {
    for (int k : degs)
        if (!c.in_window(k))
            throw window_error("requested degree " + std::to_string(k) +
                               " outside window");

    const TruncatedComplex* work = &c;
    TruncatedComplex expanded;
    if (c.field.has_t() && !c.t_localized) {
        expanded = expand_t_slots(c);
        work = &expanded;
    }

    // collect the differentials to eliminate, then run them independently
    std::set<int> need;
    for (int k : degs) {
        need.insert(k);
        need.insert(work->prev_deg(k));
    }
    std::vector<int> order(need.begin(), need.end());
    std::map<int, long> cache;
#ifdef CURVEDTOP_OPENMP
    if (opts.mode != elim::Mode::serial && order.size() > 1) {
        std::vector<long> ranks(order.size());
#pragma omp parallel for schedule(dynamic)
        for (size_t i = 0; i < order.size(); ++i) {
            const SparseMatrixQ* d = work->diff_at(order[i]);
            elim::Options sub = opts;
            sub.mode = elim::Mode::serial;
            ranks[i] = d ? elim::rank(*d, sub) : 0;
        }
        for (size_t i = 0; i < order.size(); ++i) cache[order[i]] = ranks[i];
    }
#endif

    HomologyReport out;
    for (int k : degs) {
        long rk_out = rank_or_zero(*work, k, opts, cache);
        long rk_in = rank_or_zero(*work, work->prev_deg(k), opts, cache);
        long h = work->dim(k) - rk_out - rk_in;
        if (h < 0) throw consistency_error("negative homology dimension: not a complex");
        out.dims[k] = h;
        out.certified[k] = c.is_certified(k);
    }
    return out;
}

TruncatedComplex cone(const ChainMap& f) {
    f.validate();
    const TruncatedComplex& c = f.source;
    const TruncatedComplex& d = f.target;
    if (c.field.mode != d.field.mode) throw window_error("cone field mismatch");

    TruncatedComplex out;
    out.grading = c.grading;
    out.field = c.field;
    out.t_localized = c.t_localized && d.t_localized;
    if (c.grading == Grading::Z) {
        // the shifted copy of C occupies degrees lo-1 .. hi-1
        out.lo = c.lo - 1;
        out.hi = c.hi;
    } else {
        out.lo = 0;
        out.hi = 1;
    }

    auto fmap = [&](int k) -> SparseMatrixQ {
        auto it = f.maps.find(k);
        if (it != f.maps.end()) return it->second;
        return SparseMatrixQ(d.dim(k), c.dim(k));
    };

    for (int k = out.lo; k <= out.hi; ++k) {
        int kc = c.next_deg(k);  // shifted copy of C sits in degree k
        std::vector<std::string> labels;
        for (const auto& s : c.basis.count(kc) ? c.basis.at(kc) : std::vector<std::string>{})
            labels.push_back("c:" + s);
        for (const auto& s : d.basis.count(k) ? d.basis.at(k) : std::vector<std::string>{})
            labels.push_back("d:" + s);
        out.basis[k] = labels;
        bool cert = c.is_certified(kc) && d.is_certified(k);
        out.certified[k] = cert;
    }

    for (int k = out.lo; k <= out.hi; ++k) {
        int kn = out.next_deg(k);
        if (out.grading == Grading::Z && kn > out.hi) continue;
        int kc = c.next_deg(k);
        int kcn = c.next_deg(kc);
        long c_rows = (out.grading == Grading::Z && kcn > c.hi) ? 0 : c.dim(kcn);
        SparseMatrixQ m(out.dim(kn), out.dim(k));
        // block (-d_C) : C^{kc} -> C^{kcn}
        if (const SparseMatrixQ* dc = c.diff_at(kc)) {
            for (long r = 0; r < std::min(dc->rows(), c_rows); ++r)
                for (const auto& [cc, v] : dc->row(r)) m.add(r, cc, -v);
        }
        // block f : C^{kc} -> D^{kc} == D-part of degree kn
        SparseMatrixQ fm = fmap(kc);
        for (long r = 0; r < fm.rows(); ++r)
            for (const auto& [cc, v] : fm.row(r)) m.add(c_rows + r, cc, v);
        // block d_D : D^k -> D^{kn}
        if (const SparseMatrixQ* dd = d.diff_at(k)) {
            for (long r = 0; r < dd->rows(); ++r)
                for (const auto& [cc, v] : dd->row(r)) m.add(c_rows + r, c.dim(kc) + cc, v);
        }
        out.diff[k] = std::move(m);
    }
    return out;
}

TruncatedComplex tensor_complex(const TruncatedComplex& c, const TruncatedComplex& d) {
    if (c.grading != d.grading) throw consistency_error("tensor grading mismatch");
    TruncatedComplex out;
    out.grading = c.grading;
    out.field = c.field.has_t() ? c.field : d.field;
    out.t_localized = c.t_localized || d.t_localized;

    const bool z2 = c.grading == Grading::Z2;
    out.lo = z2 ? 0 : c.lo + d.lo;
    out.hi = z2 ? 1 : c.hi + d.hi;

    // block offsets per (i, j) with i + j = k (Z/2: i + j ≡ k)
    auto blocks_of = [&](int k) {
        std::vector<std::pair<int, int>> blocks;
        if (z2) {
            for (int i = 0; i <= 1; ++i) blocks.push_back({i, (k - i + 2) % 2});
        } else {
            for (int i = c.lo; i <= c.hi; ++i) {
                int j = k - i;
                if (j >= d.lo && j <= d.hi) blocks.push_back({i, j});
            }
        }
        return blocks;
    };
    std::map<int, std::map<std::pair<int, int>, long>> offset;

    for (int k = out.lo; k <= out.hi; ++k) {
        std::vector<std::string> labels;
        bool cert = true;
        for (auto [i, j] : blocks_of(k)) {
            offset[k][{i, j}] = static_cast<long>(labels.size());
            for (long a = 0; a < c.dim(i); ++a)
                for (long b = 0; b < d.dim(j); ++b)
                    labels.push_back(c.basis.at(i)[a] + "(x)" + d.basis.at(j)[b]);
            cert = cert && c.is_certified(i) && d.is_certified(j);
        }
        if (!z2) cert = cert && (k < c.hi + d.hi);
        out.basis[k] = std::move(labels);
        out.certified[k] = cert;
    }

    for (int k = out.lo; k <= out.hi; ++k) {
        int kn = out.next_deg(k);
        if (!z2 && kn > out.hi) continue;
        SparseMatrixQ m(out.dim(kn), out.dim(k));
        for (auto [i, j] : blocks_of(k)) {
            long off_src = offset[k][{i, j}];
            long dj = d.dim(j);
            // d_C ⊗ id
            if (const SparseMatrixQ* dc = c.diff_at(i)) {
                int in = c.next_deg(i);
                auto tgt = offset[kn].find({in, j});
                if (tgt != offset[kn].end()) {
                    for (long r = 0; r < dc->rows(); ++r)
                        for (const auto& [cc, v] : dc->row(r))
                            for (long b = 0; b < dj; ++b)
                                m.add(tgt->second + r * dj + b, off_src + cc * dj + b, v);
                }
            }
            // (-1)^i id ⊗ d_D
            if (const SparseMatrixQ* dd = d.diff_at(j)) {
                int jn = d.next_deg(j);
                auto tgt = offset[kn].find({i, jn});
                if (tgt != offset[kn].end()) {
                    Scalar sign(i % 2 == 0 ? 1 : -1);
                    long djn = d.dim(jn);
                    for (long r = 0; r < dd->rows(); ++r)
                        for (const auto& [cc, v] : dd->row(r))
                            for (long a = 0; a < c.dim(i); ++a)
                                m.add(tgt->second + a * djn + r, off_src + a * dj + cc,
                                      sign * v);
                }
            }
        }
        out.diff[k] = std::move(m);
    }
    return out;
}

TruncatedComplex localize_t(const TruncatedComplex& c) {
    if (!c.field.has_t())
        throw contract_error("localize_t requires rational-with-t scalars");
    TruncatedComplex out = c;
    out.t_localized = true;
    return out;
}

TruncatedComplex expand_t_slots(const TruncatedComplex& c) {
    if (!c.field.has_t()) throw contract_error("expand_t_slots requires t scalars");
    const int jlo = c.t_localized ? c.field.window_min : 0;
    const int jhi = c.field.window_max;

    TruncatedComplex out;
    out.grading = c.grading;
    out.field = ScalarField::rational();
    out.lo = c.lo;
    out.hi = c.hi;
    out.certified = c.certified;

    std::map<int, long> slot_count;
    for (const auto& [k, labels] : c.basis) {
        std::vector<std::string> slots;
        for (int j = jlo; j <= jhi; ++j)
            for (const auto& s : labels) slots.push_back(s + "@t^" + std::to_string(j));
        out.basis[k] = std::move(slots);
        slot_count[k] = static_cast<long>(labels.size());
    }

    for (const auto& [k, m] : c.diff) {
        int kn = c.next_deg(k);
        long nsrc = slot_count.count(k) ? slot_count[k] : 0;
        long ntgt = slot_count.count(kn) ? slot_count[kn] : 0;
        SparseMatrixQ em(out.dim(kn), out.dim(k));
        for (long r = 0; r < m.rows(); ++r) {
            for (const auto& [col, v] : m.row(r)) {
                if (!v.is_laurent())
                    throw consistency_error("non-polynomial entry in t-complex");
                const Laurent& p = v.laurent();
                if (p.is_zero()) continue;
                for (int e = p.lo(); e <= p.hi(); ++e) {
                    Rat coef = p.at(e);
                    if (coef == 0) continue;
                    if (e < 0 && !c.t_localized)
                        throw consistency_error("negative t-power before localization");
                    for (int j = jlo; j <= jhi; ++j) {
                        int tj = j + e;
                        if (tj < jlo || tj > jhi) continue;  // window truncation
                        long src = (j - jlo) * nsrc + col;
                        long tgt = (tj - jlo) * ntgt + r;
                        em.add(tgt, src, Scalar(coef));
                    }
                }
            }
        }
        out.diff[k] = std::move(em);
    }
    return out;
}

std::map<int, long> localized_window_report(const TruncatedComplex& c, int deg_lo,
                                            int deg_hi) {
    if (!c.t_localized) throw contract_error("window report requires a localized complex");
    if (c.grading != Grading::Z)
        throw contract_error("window report is for Z-graded complexes");
    std::vector<int> degs;
    for (int k = c.lo; k <= c.hi; ++k) degs.push_back(k);
    HomologyReport h = homology_dims(c, degs);
    std::map<int, long> out;
    for (int d = deg_lo; d <= deg_hi; ++d) out[d] = 0;
    const int step = std::abs(c.field.t_degree);
    for (const auto& [k, n] : h.dims) {
        if (n == 0) continue;
        for (int d = deg_lo; d <= deg_hi; ++d)
            if (((d - k) % step + step) % step == 0) out[d] += n;
    }
    return out;
}

}  // namespace curvedtop
