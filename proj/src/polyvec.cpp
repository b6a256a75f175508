#include "curvedtop/polyvec.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "curvedtop/errors.hpp"

namespace curvedtop {

namespace {

// letter sequence of a monomial in generator order
std::vector<size_t> letters_of(const Mono& m) {
    std::vector<size_t> out;
    for (size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) out.push_back(i);
    return out;
}

int total_letters(const Mono& m) {
    int n = 0;
    for (int e : m) n += e;
    return n;
}

}  // namespace

PolyContext::PolyContext(const SullivanAlgebra& s) : s_(&s) {
    const FreeGCA& base = s.algebra();
    nbase_ = base.ngens();
    std::vector<GeneratorSpec> gens;
    for (size_t i = 0; i < nbase_; ++i) gens.push_back(base.gen(i));
    for (size_t i = 0; i < nbase_; ++i)
        gens.push_back({"d/d" + base.gen(i).name, 1 - base.gen(i).degree});
    ext_ = std::make_shared<FreeGCA>(std::move(gens));
}

GcaElem PolyContext::embed(const GcaElem& base_elem) const {
    GcaElem out(*ext_);
    for (const auto& [m, c] : base_elem.terms()) {
        Mono em(ext_->ngens(), 0);
        for (size_t i = 0; i < m.size(); ++i) em[i] = m[i];
        out.add_term(em, c);
    }
    return out;
}

GcaElem PolyContext::theta(size_t base_index) const {
    return GcaElem::generator(*ext_, theta_of(base_index));
}

GcaElem PolyContext::vectorfield_of_differential() const {
    GcaElem out(*ext_);
    for (size_t i = 0; i < s_->n_beta(); ++i) {
        const GcaElem& f = s_->f(i);
        if (f.is_zero()) continue;
        out = out + gca_multiply(embed(f), theta(s_->beta_index(i)));
    }
    return out;
}

GcaElem PolyContext::potential_polyvector(const UPoly& w) const {
    GcaElem out(*ext_);
    for (const auto& [mono, c] : w) {
        if (mono.size() != s_->n_beta())
            throw contract_error("potential exponent vector length != number of betas");
        GcaElem term = GcaElem::one(*ext_);
        for (size_t i = 0; i < mono.size(); ++i)
            for (int k = 0; k < mono[i]; ++k)
                term = gca_multiply(term, theta(s_->beta_index(i)));
        out = out + term * Scalar(c);
    }
    return out;
}

namespace {

// [y, z] for single letters in the extension algebra: pairing of a partial
// with its own coordinate
int letter_bracket(const FreeGCA& ext, size_t y, size_t z) {
    size_t n = ext.ngens() / 2;
    if (y >= n && z == y - n) return 1;   // [d/dg, g] = 1
    if (z >= n && y == z - n) return -1;  // [g, d/dg] = -1
    return 0;
}

int tau_parity(const FreeGCA& ext, const Mono& m) {
    return ((mono_degree(ext, m) % 2) + 2) % 2;
}

// [P, q] for a parity-homogeneous P and a single monomial q, by expanding
// the derivation [P, -] over q's letters, then each [P, letter] over P's
// letters through antisymmetry
GcaElem bracket_mono(const FreeGCA& ext, const std::map<Mono, Scalar>& p_terms,
                     int parity_p, const Mono& q) {
    GcaElem out(ext);
    std::vector<size_t> ql = letters_of(q);
    const int der_parity = (parity_p + 1) % 2;  // parity of [P, -]

    int q_prefix_parity = 0;
    for (size_t j = 0; j < ql.size(); ++j) {
        size_t y = ql[j];
        int y_par = ((ext.gen(y).degree % 2) + 2) % 2;
        // shifted antisymmetry: [P, y] = -(-1)^{(P+1)(y+1)} [y, P]
        int e = ((parity_p + 1) % 2) * ((y_par + 1) % 2);
        int flip = (e % 2 == 0) ? -1 : 1;

        GcaElem inner(ext);
        for (const auto& [mp, cp] : p_terms) {
            std::vector<size_t> pl = letters_of(mp);
            int p_prefix_parity = 0;
            for (size_t i = 0; i < pl.size(); ++i) {
                size_t z = pl[i];
                int val = letter_bracket(ext, y, z);
                if (val != 0) {
                    // sign (-1)^{(y+1) * prefix}
                    int s = (((y_par + 1) % 2) * p_prefix_parity) % 2 ? -1 : 1;
                    Mono rest = mp;
                    rest[z] -= 1;
                    Scalar coef = cp * Scalar(Rat(val * s * flip));
                    inner = inner + GcaElem::monomial(ext, rest, coef);
                }
                p_prefix_parity = (p_prefix_parity + ext.gen(z).degree) % 2;
                p_prefix_parity = (p_prefix_parity + 2) % 2;
            }
        }
        if (!inner.is_zero()) {
            // assemble q_prefix * inner * q_suffix with the derivation sign
            Mono pre(q.size(), 0), suf(q.size(), 0);
            for (size_t a = 0; a < j; ++a) pre[ql[a]] += 1;
            for (size_t a = j + 1; a < ql.size(); ++a) suf[ql[a]] += 1;
            GcaElem piece = gca_multiply(
                gca_multiply(GcaElem::monomial(ext, pre), inner),
                GcaElem::monomial(ext, suf));
            int s = (der_parity * q_prefix_parity) % 2 ? -1 : 1;
            out = out + piece * Scalar(Rat(s));
        }
        q_prefix_parity = (q_prefix_parity + ext.gen(y).degree) % 2;
        q_prefix_parity = (q_prefix_parity + 2) % 2;
    }
    return out;
}

}  // namespace

GcaElem schouten(const GcaElem& p, const GcaElem& q) {
    const FreeGCA& ext = p.algebra();
    if (!ext.same_algebra(q.algebra())) throw contract_error("schouten base mismatch");
    // split P by parity
    std::map<Mono, Scalar> even_terms, odd_terms;
    for (const auto& [m, c] : p.terms())
        (tau_parity(ext, m) == 0 ? even_terms : odd_terms).emplace(m, c);
    GcaElem out(ext);
    for (const auto& [mq, cq] : q.terms()) {
        if (!even_terms.empty())
            out = out + bracket_mono(ext, even_terms, 0, mq) * cq;
        if (!odd_terms.empty())
            out = out + bracket_mono(ext, odd_terms, 1, mq) * cq;
    }
    return out;
}

TwistedPolyComplex twisted_poly_complex(const PolyContext& ctx, const UPoly& w,
                                        int weight_cap, int t_cap, bool localized) {
    if (weight_cap < 1) throw contract_error("weight_cap must be >= 1");
    for (const auto& [mono, c] : w) {
        bool constant = true;
        for (int e : mono)
            if (e) constant = false;
        if (constant && c != 0) throw contract_error("potential has a constant term");
    }

    const FreeGCA& ext = ctx.ext();
    TwistedPolyComplex out;
    out.weight_cap = weight_cap;
    out.v = ctx.vectorfield_of_differential();
    out.w_poly = ctx.potential_polyvector(w);
    out.localized = localized;
    out.ctx = &ctx;
    out.upoly = w;
    const bool has_w = !out.w_poly.is_zero();
    out.t_cap = has_w ? t_cap : 0;

    // Maurer-Cartan: [v,v], [v,w], [w,w] must all vanish exactly
    if (!schouten(out.v, out.v).is_zero())
        throw consistency_error("[v,v] != 0: differential does not square to zero");
    if (has_w && !schouten(out.v, out.w_poly).is_zero())
        throw consistency_error("[v,w] != 0: twist is not Maurer-Cartan");
    if (has_w && !schouten(out.w_poly, out.w_poly).is_zero())
        throw consistency_error("[w,w] != 0: twist is not Maurer-Cartan");

    // letter-count shifts of the two twist parts; uniform shifts give the
    // diagonal-line splitting used for per-weight reports
    auto uniform_shift = [&](const GcaElem& op) -> std::pair<bool, int> {
        bool first = true;
        int shift = 0;
        for (const auto& [m, c] : op.terms()) {
            int s = total_letters(m) - 2;
            if (first) {
                shift = s;
                first = false;
            } else if (s != shift) {
                return {false, 0};
            }
        }
        return {true, shift};
    };
    auto [v_ok, v_shift] = uniform_shift(out.v);
    auto [w_ok, w_shift] = uniform_shift(out.w_poly);
    out.line_split_valid = v_ok && (!has_w || w_ok);
    out.shift_v = v_shift;
    out.shift_w = w_shift;

    // degree carried by t: twist must raise total degree by 1
    int tau_w = has_w ? (out.w_poly.is_homogeneous()
                             ? out.w_poly.degree()
                             : throw contract_error("inhomogeneous potential"))
                      : 0;
    out.t_tau = has_w ? 2 - tau_w : 0;

    const int klo = (localized && has_w) ? -t_cap : 0;
    const int khi = has_w ? t_cap : 0;

    TruncatedComplex& c = out.complex;
    c.grading = Grading::Z;
    c.field = ScalarField::rational();

    // Both twist parts raise the potential phi = letters + k*(shift_v -
    // shift_w) by exactly shift_v, so slots with phi > weight_cap form a
    // d-closed set and dropping them is an honest quotient: d∘d stays zero.
    // The t window truncates in the k-increasing direction, also d-closed.
    const long kslope = out.line_split_valid
                            ? static_cast<long>(out.shift_v) - out.shift_w
                            : 0;
    auto phi_of = [&](int letters, int k) -> long {
        return letters + static_cast<long>(k) * kslope;
    };

    long lmax = weight_cap;
    for (int k = klo; k <= khi; ++k)
        lmax = std::max(lmax, weight_cap - static_cast<long>(k) * kslope);
    std::vector<int> ones(ext.ngens(), 1);
    std::vector<Mono> monos;
    for (long wgt = 0; wgt <= lmax; ++wgt)
        for (auto& m : monomials_of_weight(ext, ones, static_cast<int>(wgt)))
            monos.push_back(m);

    std::map<int, std::map<std::pair<Mono, int>, long>> index;
    bool first_deg = true;
    for (const auto& m : monos) {
        int tau = mono_degree(ext, m);
        for (int k = klo; k <= khi; ++k) {
            if (phi_of(total_letters(m), k) > weight_cap) continue;
            int deg = tau + k * out.t_tau;
            long idx = index[deg].size();
            index[deg][{m, k}] = idx;
            if (first_deg || deg < c.lo) c.lo = deg;
            if (first_deg || deg > c.hi) c.hi = deg;
            first_deg = false;
        }
    }
    for (auto& [deg, mp] : index) {
        std::vector<std::string> labels(mp.size());
        std::vector<long> lines(mp.size());
        std::vector<int> lets(mp.size());
        std::vector<int> tp(mp.size());
        for (const auto& [key, idx] : mp) {
            const auto& [m, k] = key;
            std::string lab = mono_str(ext, m);
            if (k != 0) lab += "@t^" + std::to_string(k);
            labels[idx] = lab;
            lets[idx] = total_letters(m);
            tp[idx] = k;
            // invariant of both twist parts: letters - shift_v*deg +
            // k*(shift_v - shift_w); collapses to one line when the shifts
            // are not uniform
            lines[idx] = out.line_split_valid
                             ? total_letters(m) -
                                   static_cast<long>(out.shift_v) * deg +
                                   static_cast<long>(k) * (out.shift_v - out.shift_w)
                             : 0;
        }
        c.basis[deg] = std::move(labels);
        out.slot_line[deg] = std::move(lines);
        out.slot_letters[deg] = std::move(lets);
        out.slot_tpow[deg] = std::move(tp);
    }

    // fill differentials: d(slot) = [v, m] at the same t power plus
    // [w, m] at t power + 1; images of kept slots that fall above a line cut
    // or past the t window are quotient-truncated
    for (auto& [deg, mp] : index) {
        SparseMatrixQ dm(c.dim(deg + 1), c.dim(deg));
        bool have_target = index.count(deg + 1) > 0;
        for (const auto& [key, cidx] : mp) {
            const auto& [m, k] = key;
            GcaElem mono_elem = GcaElem::monomial(ext, m);
            GcaElem dv = schouten(out.v, mono_elem);
            for (const auto& [tm, tc] : dv.terms()) {
                if (!have_target) continue;
                auto it = index[deg + 1].find({tm, k});
                if (it != index[deg + 1].end()) dm.add(it->second, cidx, tc);
            }
            if (has_w && k + 1 <= khi) {
                GcaElem dw = schouten(out.w_poly, mono_elem);
                for (const auto& [tm, tc] : dw.terms()) {
                    if (!have_target) continue;
                    auto it = index[deg + 1].find({tm, k + 1});
                    if (it != index[deg + 1].end()) dm.add(it->second, cidx, tc);
                }
            }
        }
        if (have_target) c.diff[deg] = std::move(dm);
    }

    // a degree is certified when no line passing through it has been cut in
    // its neighbourhood and the t window has a step of slack on both sides
    auto line_cut = [&](long line) -> long {
        if (!out.line_split_valid || out.shift_v <= 0) return 1000000000L;
        long num = weight_cap - line;
        long dv = out.shift_v;
        return num >= 0 ? num / dv : (num - dv + 1) / dv;
    };
    for (auto& [deg, labels] : c.basis) {
        bool cert = true;
        for (int d2 = deg - 1; d2 <= deg + 1; ++d2) {
            if (!out.slot_line.count(d2)) continue;
            for (size_t i = 0; i < out.slot_line[d2].size(); ++i) {
                if (d2 + 1 > line_cut(out.slot_line[d2][i])) cert = false;
                if (has_w) {
                    int k = out.slot_tpow[d2][i];
                    if (k + 1 > khi) cert = false;
                    if (localized && k < klo + 1) cert = false;
                }
            }
        }
        c.certified[deg] = cert;
    }
    return out;
}

std::string IsolatedReport::str() const {
    std::ostringstream os;
    os << "isolated up to cap " << cap << ": " << (isolated_up_to_cap ? "yes" : "no")
       << "\n";
    for (const auto& [w, d] : dims_per_weight)
        os << "  weight " << w << ": dim " << d
           << (weight_certified.count(w) && weight_certified.at(w) ? "" : "  (window-limited)")
           << "\n";
    return os.str();
}

namespace {

// per-degree homology summed over diagonal lines, counting only positions
// strictly below each line's cut, where the letter-direction truncation
// cannot reach
std::map<int, long> clean_degree_dims(const TwistedPolyComplex& c) {
    std::map<long, std::map<int, std::vector<long>>> line_slots;
    for (const auto& [deg, lines] : c.slot_line)
        for (size_t i = 0; i < lines.size(); ++i)
            line_slots[lines[i]][deg].push_back(static_cast<long>(i));
    auto line_cut = [&](long line) -> long {
        if (!c.line_split_valid || c.shift_v <= 0) return 1000000000L;
        long num = c.weight_cap - line;
        long dv = c.shift_v;
        return num >= 0 ? num / dv : (num - dv + 1) / dv;
    };
    std::map<int, long> out;
    for (const auto& [line, per_deg] : line_slots) {
        for (const auto& [deg, cols] : per_deg) {
            if (deg + 1 > line_cut(line)) continue;
            auto restrict = [&](int dsrc) -> SparseMatrixQ {
                const SparseMatrixQ* d = c.complex.diff_at(dsrc);
                auto cit = per_deg.find(dsrc);
                long ncols = cit == per_deg.end() ? 0
                                                  : static_cast<long>(cit->second.size());
                auto tit = per_deg.find(dsrc + 1);
                long nrows = tit == per_deg.end() ? 0
                                                  : static_cast<long>(tit->second.size());
                SparseMatrixQ sub(nrows, ncols);
                if (!d || ncols == 0 || nrows == 0) return sub;
                std::map<long, long> rowpos;
                for (long r = 0; r < nrows; ++r) rowpos[tit->second[r]] = r;
                for (long cc = 0; cc < ncols; ++cc) {
                    long col = cit->second[cc];
                    for (long r = 0; r < d->rows(); ++r) {
                        Scalar v = d->get(r, col);
                        if (v.is_zero()) continue;
                        auto rp = rowpos.find(r);
                        if (rp != rowpos.end()) sub.set(rp->second, cc, v);
                    }
                }
                return sub;
            };
            long h = static_cast<long>(cols.size()) - elim::rank(restrict(deg)) -
                     elim::rank(restrict(deg - 1));
            out[deg] += h;
        }
    }
    return out;
}

}  // namespace

IsolatedReport isolated_up_to(const TwistedPolyComplex& c) {
    IsolatedReport rep;
    rep.cap = c.weight_cap;
    rep.band_width = std::max({std::abs(c.shift_v), std::abs(c.shift_w), 1});
    const bool has_w = !c.w_poly.is_zero();

    // exact per-line dims of the stored window (the twist preserves the
    // diagonal line, so the complex splits)
    std::map<long, std::map<int, std::vector<long>>> line_slots;
    for (const auto& [deg, lines] : c.slot_line)
        for (size_t i = 0; i < lines.size(); ++i)
            line_slots[lines[i]][deg].push_back(static_cast<long>(i));
    auto line_cut = [&](long line) -> long {
        if (!c.line_split_valid || c.shift_v <= 0) return 1000000000L;
        long num = c.weight_cap - line;
        long dv = c.shift_v;
        return num >= 0 ? num / dv : (num - dv + 1) / dv;
    };
    for (const auto& [line, per_deg] : line_slots) {
        long total = 0;
        bool all_cert = true;
        for (const auto& [deg, cols] : per_deg) {
            auto restrict = [&](int dsrc) -> SparseMatrixQ {
                const SparseMatrixQ* d = c.complex.diff_at(dsrc);
                auto cit = per_deg.find(dsrc);
                long ncols = cit == per_deg.end() ? 0
                                                  : static_cast<long>(cit->second.size());
                auto tit = per_deg.find(dsrc + 1);
                long nrows = tit == per_deg.end() ? 0
                                                  : static_cast<long>(tit->second.size());
                SparseMatrixQ sub(nrows, ncols);
                if (!d || ncols == 0 || nrows == 0) return sub;
                std::map<long, long> rowpos;
                for (long r = 0; r < nrows; ++r) rowpos[tit->second[r]] = r;
                for (long cc = 0; cc < ncols; ++cc) {
                    long col = cit->second[cc];
                    for (long r = 0; r < d->rows(); ++r) {
                        Scalar v = d->get(r, col);
                        if (v.is_zero()) continue;
                        auto rp = rowpos.find(r);
                        if (rp != rowpos.end()) sub.set(rp->second, cc, v);
                    }
                }
                return sub;
            };
            long h = static_cast<long>(cols.size()) - elim::rank(restrict(deg)) -
                     elim::rank(restrict(deg - 1));
            if (deg + 1 <= line_cut(line))
                total += h;
            else
                all_cert = false;
        }
        rep.dims_per_weight[line] = total;
        rep.weight_certified[line] = all_cert;
    }

    // stabilization certificate: rebuild with every cap enlarged once and
    // twice, compare the clean per-degree dims on shared degrees
    if (!c.ctx) return rep;
    const int step = std::max(1, std::abs(c.shift_v));
    std::vector<std::map<int, long>> run_dims;
    for (int r = 0; r < 3; ++r) {
        if (r == 0) {
            run_dims.push_back(clean_degree_dims(c));
        } else {
            TwistedPolyComplex built =
                twisted_poly_complex(*c.ctx, c.upoly, c.weight_cap + r * step,
                                     has_w ? c.t_cap + r : c.t_cap, c.localized);
            run_dims.push_back(clean_degree_dims(built));
        }
    }
    bool all_stable = true;
    std::set<int> degs_seen;
    for (const auto& [deg, n] : run_dims[0]) degs_seen.insert(deg);
    for (int deg : degs_seen) {
        auto get = [&](int r) {
            auto it = run_dims[r].find(deg);
            return it == run_dims[r].end() ? 0L : it->second;
        };
        long n = get(0);
        bool stable = get(1) == n && get(2) == n;
        rep.dims_per_degree[deg] = n;
        rep.degree_stable[deg] = stable;
        if (!stable) all_stable = false;
    }

    if (has_w) {
        rep.isolated_up_to_cap = all_stable;
    } else {
        // no Laurent direction: finiteness needs the stabilized dims to die
        // off before the clean range runs out
        int band = 1;
        for (size_t i = 0; i < c.ctx->ext().ngens(); ++i)
            band = std::max(band, std::abs(c.ctx->ext().gen(i).degree));
        int clo = 0, chi = 0;
        bool first = true;
        for (const auto& [deg, n] : run_dims[0]) {
            if (first || deg < clo) clo = deg;
            if (first || deg > chi) chi = deg;
            first = false;
        }
        bool edge_zero = true;
        for (const auto& [deg, n] : rep.dims_per_degree) {
            bool at_edge = deg < clo + band || deg > chi - band;
            if (at_edge && n != 0) edge_zero = false;
        }
        rep.isolated_up_to_cap = all_stable && edge_zero && !first;
    }
    return rep;
}

namespace {



std::vector<int> derive_weights(size_t m, const UPoly& w) {
    // search small positive weight vectors making w quasi-homogeneous
    if (w.empty()) return std::vector<int>(m, 1);
    for (int cap = 1; cap <= 6; ++cap) {
        std::vector<int> wt(m, 1);
        auto ok = [&]() {
            long deg = -1;
            for (const auto& [mono, c] : w) {
                long d = 0;
                for (size_t i = 0; i < m; ++i) d += mono[i] * wt[i];
                if (deg < 0) deg = d;
                if (d != deg) return false;
            }
            return true;
        };
        auto rec = [&](auto&& self, size_t i) -> bool {
            if (i == m) return ok();
            for (int v = 1; v <= cap; ++v) {
                wt[i] = v;
                if (self(self, i + 1)) return true;
            }
            return false;
        };
        if (rec(rec, 0)) return wt;
    }
    throw unsupported_error("potential is not quasi-homogeneous with small weights");
}

}  // namespace

std::string JacobianReport::str() const {
    std::ostringstream os;
    switch (verdict) {
        case Verdict::finite:
            os << "finite, dim " << dim;
            break;
        case Verdict::infinite_certified:
            os << "infinite (certified)";
            break;
        case Verdict::window_limited:
            os << "window-limited (no certificate)";
            break;
    }
    return os.str();
}

JacobianReport jacobian_quotient_dim(size_t m, const UPoly& w, std::vector<int> weights,
                                     int degree_bound) {
    if (weights.empty()) weights = derive_weights(m, w);
    if (weights.size() != m) throw contract_error("weight vector length");
    // verify quasi-homogeneity with the given weights
    long wdeg = -1;
    for (const auto& [mono, c] : w) {
        long d = 0;
        for (size_t i = 0; i < m; ++i) d += mono[i] * weights[i];
        if (wdeg < 0) wdeg = d;
        if (d != wdeg)
            throw unsupported_error("potential not quasi-homogeneous for the weights");
    }

    std::vector<GeneratorSpec> gens;
    for (size_t i = 0; i < m; ++i)
        gens.push_back({"u" + std::to_string(i + 1), 2 * weights[i]});
    FreeGCA alg(gens);

    GcaElem wp(alg);
    for (const auto& [mono, c] : w) wp.add_term(mono, Scalar(c));

    // ideal generators u_i * dw/du_i
    std::vector<GcaElem> igens;
    for (size_t i = 0; i < m; ++i) {
        GcaElem g = gca_multiply(GcaElem::generator(alg, i), partial(wp, i));
        if (!g.is_zero()) igens.push_back(g);
    }

    JacobianReport rep;
    int maxw = *std::max_element(weights.begin(), weights.end());
    int zero_run = 0;
    long total = 0;
    bool finite = false;
    for (int deg = 0; deg <= degree_bound; ++deg) {
        auto monos = monomials_of_weight(alg, weights, deg);
        std::map<Mono, long> idx;
        for (const auto& mn : monos) idx.emplace(mn, static_cast<long>(idx.size()));
        // span of { mono' * gen } in this degree
        SparseMatrixQ span(0, static_cast<long>(monos.size()));
        std::vector<std::map<long, Scalar>> rows;
        for (const auto& g : igens) {
            long gdeg = 0;
            for (const auto& [mn, c] : g.terms()) {
                long d = 0;
                for (size_t i = 0; i < m; ++i) d += mn[i] * weights[i];
                gdeg = d;
                break;
            }
            int rem = deg - static_cast<int>(gdeg);
            if (rem < 0) continue;
            for (const auto& mult : monomials_of_weight(alg, weights, rem)) {
                GcaElem prod = gca_multiply(GcaElem::monomial(alg, mult), g);
                std::map<long, Scalar> row;
                for (const auto& [mn, c] : prod.terms()) row[idx.at(mn)] = c;
                rows.push_back(std::move(row));
            }
        }
        SparseMatrixQ mat(static_cast<long>(rows.size()), static_cast<long>(monos.size()));
        for (size_t r = 0; r < rows.size(); ++r)
            for (const auto& [cc, v] : rows[r]) mat.set(static_cast<long>(r), cc, v);
        long q = static_cast<long>(monos.size()) - elim::rank(mat);
        rep.dims_per_degree[deg] = q;
        total += q;
        if (q == 0) {
            if (++zero_run >= maxw) {
                finite = true;
                break;
            }
        } else {
            zero_run = 0;
        }
    }
    if (finite) {
        rep.verdict = JacobianReport::Verdict::finite;
        rep.dim = total;
        return rep;
    }

    // axis certificate for infinite dimension: all generators vanish along a
    // coordinate axis
    for (size_t i = 0; i < m; ++i) {
        bool all_vanish = true;
        for (const auto& g : igens) {
            for (const auto& [mn, c] : g.terms()) {
                bool on_axis = true;
                for (size_t j = 0; j < m; ++j)
                    if (j != i && mn[j] != 0) on_axis = false;
                if (on_axis) all_vanish = false;
            }
        }
        if (all_vanish) {
            rep.verdict = JacobianReport::Verdict::infinite_certified;
            return rep;
        }
    }
    rep.verdict = JacobianReport::Verdict::window_limited;
    return rep;
}

namespace {

// determinant of a small matrix of u-polynomials by Laplace expansion
UPoly upoly_mul(const UPoly& a, const UPoly& b, size_t m) {
    UPoly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Mono mono(m, 0);
            for (size_t i = 0; i < m; ++i) mono[i] = ma[i] + mb[i];
            out[mono] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

UPoly upoly_scale(const UPoly& a, const Rat& c) {
    UPoly out;
    if (c == 0) return out;
    for (const auto& [mn, v] : a) out[mn] = v * c;
    return out;
}

UPoly upoly_add(const UPoly& a, const UPoly& b) {
    UPoly out = a;
    for (const auto& [mn, v] : b) {
        out[mn] += v;
        if (out[mn] == 0) out.erase(mn);
    }
    return out;
}

UPoly minor_det(const std::vector<std::vector<UPoly>>& mat,
                const std::vector<size_t>& rows, const std::vector<size_t>& cols,
                size_t m) {
    if (rows.empty()) {
        UPoly one;
        one[Mono(m, 0)] = 1;
        return one;
    }
    UPoly out;
    int sign = 1;
    for (size_t j = 0; j < cols.size(); ++j) {
        const UPoly& head = mat[rows[0]][cols[j]];
        if (!head.empty()) {
            std::vector<size_t> r2(rows.begin() + 1, rows.end());
            std::vector<size_t> c2;
            for (size_t jj = 0; jj < cols.size(); ++jj)
                if (jj != j) c2.push_back(cols[jj]);
            UPoly sub = minor_det(mat, r2, c2, m);
            out = upoly_add(out, upoly_scale(upoly_mul(head, sub, m), Rat(sign)));
        }
        sign = -sign;
    }
    return out;
}

std::string upoly_str(const UPoly& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mn, c] : p) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (size_t i = 0; i < mn.size(); ++i) {
            for (int k = 0; k < mn[i]; ++k) os << "*u" << (i + 1);
        }
    }
    return os.str();
}

}  // namespace

std::string StrataReport::str() const {
    std::ostringstream os;
    if (degenerate) os << "degenerate: bracket form is identically zero\n";
    for (size_t k = 0; k < strata.size(); ++k) {
        os << "D_" << k << ": ";
        if (strata[k].empty())
            os << "everything (zero ideal)";
        else {
            os << "V(";
            for (size_t i = 0; i < strata[k].size(); ++i) {
                if (i) os << ", ";
                os << strata[k][i];
            }
            os << ")";
        }
        os << "\n";
    }
    return os.str();
}

StrataReport rank_strata(const LieModel& l) {
    l.validate();
    const size_t n = l.n_odd(), m = l.n_even();
    // B as an n x n matrix of linear u-polynomials
    std::vector<std::vector<UPoly>> b(n, std::vector<UPoly>(n));
    bool all_zero = true;
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < m; ++i)
                if (l.bracket[j][k][i] != 0) {
                    Mono mn(m, 0);
                    mn[i] = 1;
                    b[j][k][mn] = l.bracket[j][k][i];
                    all_zero = false;
                }

    StrataReport rep;
    rep.degenerate = all_zero;
    // D_k cut out by all (k+1)x(k+1) minors, k = 0..n-1
    for (size_t k = 0; k < n; ++k) {
        std::vector<UPoly> minors;
        size_t sz = k + 1;
        std::vector<size_t> rows(sz), cols(sz);
        // iterate over all row and column subsets of size k+1
        std::vector<size_t> ridx(sz);
        auto choose = [&](auto&& self, std::vector<size_t>& sel, size_t start,
                          size_t need, auto&& fn) -> void {
            if (need == 0) {
                fn();
                return;
            }
            for (size_t i = start; i + need <= n; ++i) {
                sel[sel.size() - need] = i;
                self(self, sel, i + 1, need - 1, fn);
            }
        };
        choose(choose, rows, 0, sz, [&]() {
            choose(choose, cols, 0, sz, [&]() {
                UPoly d = minor_det(b, rows, cols, m);
                if (!d.empty()) minors.push_back(d);
            });
        });
        std::vector<std::string> strs;
        for (const auto& p : minors) strs.push_back(upoly_str(p));
        rep.minor_polys.push_back(std::move(minors));
        rep.strata.push_back(std::move(strs));
    }
    return rep;
}

namespace {

// ---- transversality helpers ----

// restrict a u-polynomial to the coordinate subspace with zero set S
UPoly restrict_to(const UPoly& w, const std::set<size_t>& zeros) {
    UPoly out;
    for (const auto& [mn, c] : w) {
        bool kill = false;
        for (size_t i : zeros)
            if (mn[i] != 0) kill = true;
        if (!kill) {
            out[mn] += c;
            if (out[mn] == 0) out.erase(mn);
        }
    }
    return out;
}

UPoly upoly_partial(const UPoly& p, size_t i) {
    UPoly out;
    for (const auto& [mn, c] : p) {
        if (mn[i] == 0) continue;
        Mono m2 = mn;
        m2[i] -= 1;
        out[m2] += c * mn[i];
        if (out[m2] == 0) out.erase(m2);
    }
    return out;
}

// strip monomial content (divide by the largest common u-monomial factor)
UPoly strip_content(const UPoly& p) {
    if (p.empty()) return p;
    Mono low = p.begin()->first;
    for (const auto& [mn, c] : p)
        for (size_t i = 0; i < low.size(); ++i) low[i] = std::min(low[i], mn[i]);
    UPoly out;
    for (const auto& [mn, c] : p) {
        Mono m2 = mn;
        for (size_t i = 0; i < low.size(); ++i) m2[i] -= low[i];
        out[m2] = c;
    }
    return out;
}

// convert a 2-variable u-polynomial into a polynomial in var2 with Laurent
// coefficients in var1
std::vector<Laurent> as_poly_in(const UPoly& p, size_t v1, size_t v2) {
    int deg2 = 0;
    for (const auto& [mn, c] : p) deg2 = std::max(deg2, mn[v2]);
    std::vector<Laurent> out(deg2 + 1);
    for (const auto& [mn, c] : p) out[mn[v2]] = out[mn[v2]] + Laurent(c, mn[v1]);
    return out;
}

// resultant of two univariate polynomials with Laurent coefficients, via
// fraction-free elimination of the Sylvester matrix
bool resultant_is_zero(const std::vector<Laurent>& f, const std::vector<Laurent>& g) {
    int df = static_cast<int>(f.size()) - 1, dg = static_cast<int>(g.size()) - 1;
    while (df >= 0 && f[df].is_zero()) --df;
    while (dg >= 0 && g[dg].is_zero()) --dg;
    if (df < 0 || dg < 0) return true;  // zero polynomial: resultant vanishes
    if (df == 0 && dg == 0) return false;
    int n = df + dg;
    std::vector<std::vector<Laurent>> s(n, std::vector<Laurent>(n));
    for (int i = 0; i < dg; ++i)
        for (int j = 0; j <= df; ++j) s[i][i + j] = f[df - j];
    for (int i = 0; i < df; ++i)
        for (int j = 0; j <= dg; ++j) s[dg + i][i + j] = g[dg - j];
    // fraction-free Gauss over the domain Q[u]: track determinant zeroness
    Laurent prev(Rat(1));
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int r = c; r < n; ++r)
            if (!s[r][c].is_zero()) {
                pr = r;
                break;
            }
        if (pr < 0) return true;  // singular
        std::swap(s[c], s[pr]);
        for (int r = c + 1; r < n; ++r) {
            for (int j = c + 1; j < n; ++j)
                s[r][j] = (s[r][j] * s[c][c] - s[r][c] * s[c][j]).divided_by(prev);
            s[r][c] = Laurent();
        }
        prev = s[c][c];
    }
    return false;  // full pivots: nonzero determinant
}

}  // namespace

std::string TransversalityReport::str() const {
    std::ostringstream os;
    switch (verdict) {
        case Verdict::transversal: os << "transversal"; break;
        case Verdict::fails: os << "fails transversality"; break;
        case Verdict::degenerate: os << "degenerate strata (no proper chain)"; break;
        case Verdict::unsupported: os << "unsupported configuration"; break;
    }
    for (const auto& n : notes) os << "\n  " << n;
    return os.str();
}

TransversalityReport transversality_check(const LieModel& l, const UPoly& w, int k,
                                          long budget) {
    TransversalityReport rep;
    const size_t m = l.n_even();
    if (m > 3) throw resource_error("transversality check supports at most 3 even duals");
    (void)budget;

    StrataReport strata = rank_strata(l);
    if (strata.degenerate) {
        rep.verdict = TransversalityReport::Verdict::degenerate;
        rep.notes.push_back("bracket form vanishes identically; strata are not a chain");
        return rep;
    }
    if (k < 0 || static_cast<size_t>(k) >= strata.minor_polys.size())
        throw contract_error("stratum index out of range");

    const auto& minors_k1 = strata.minor_polys[k];  // cut out D_k
    const auto& minors_k = static_cast<size_t>(k) >= 1
                               ? strata.minor_polys[k - 1]
                               : std::vector<UPoly>{};  // cut out D_{k-1}

    // components of D_k as coordinate subspaces: the subspace with zero set S
    // lies in D_k iff every minor vanishes on it
    bool any_component = false;
    bool all_pass = true;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::set<size_t> zeros;
        for (size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) zeros.insert(i);
        bool in_dk = true;
        for (const auto& p : minors_k1)
            if (!restrict_to(p, zeros).empty()) in_dk = false;
        if (!in_dk) continue;
        // maximality: not contained in a coordinate subspace already counted
        // with fewer free coordinates is fine to skip; but containment in
        // D_{k-1} disqualifies it as a chart of D_k - D_{k-1}
        if (k >= 1) {
            bool in_smaller = true;
            for (const auto& p : minors_k)
                if (!restrict_to(p, zeros).empty()) in_smaller = false;
            if (in_smaller) continue;
        }
        any_component = true;

        std::vector<size_t> free_coords;
        for (size_t i = 0; i < m; ++i)
            if (!zeros.count(i)) free_coords.push_back(i);
        UPoly g = restrict_to(w, zeros);

        if (free_coords.empty()) {
            // the origin stratum: transversal iff the differential of w is
            // nonzero there, i.e. w has a linear term
            bool linear = false;
            for (const auto& [mn, c] : w) {
                int tot = 0;
                for (int e : mn) tot += e;
                if (tot == 1 && c != 0) linear = true;
            }
            if (!linear) {
                all_pass = false;
                rep.notes.push_back("fails at the origin stratum: dw(0) = 0");
            } else {
                rep.notes.push_back("origin stratum: dw(0) != 0");
            }
            continue;
        }

        if (g.empty()) {
            all_pass = false;
            rep.notes.push_back("w vanishes identically on a stratum component");
            continue;
        }

        // singular zeros of g away from the coordinate substrata
        std::vector<UPoly> partials;
        for (size_t i : free_coords) {
            UPoly d = upoly_partial(g, i);
            partials.push_back(strip_content(d));
        }
        bool off_axis_singular = false;
        if (free_coords.size() == 1) {
            // quasi-homogeneous in one variable: derivative is a monomial;
            // it vanishes off zero only if it is the zero polynomial
            off_axis_singular = partials[0].empty();
        } else if (free_coords.size() == 2) {
            if (partials[0].empty() || partials[1].empty()) {
                off_axis_singular = true;
            } else {
                auto f1 = as_poly_in(partials[0], free_coords[0], free_coords[1]);
                auto f2 = as_poly_in(partials[1], free_coords[0], free_coords[1]);
                off_axis_singular = resultant_is_zero(f1, f2);
            }
        } else {
            throw unsupported_error(
                "3-dimensional stratum charts are beyond the exact check");
        }
        if (off_axis_singular) {
            all_pass = false;
            rep.notes.push_back("singular zero of w away from smaller strata");
        } else {
            rep.notes.push_back("chart passes the exact Jacobian criterion");
        }
    }

    if (!any_component) {
        rep.verdict = TransversalityReport::Verdict::degenerate;
        rep.notes.push_back("no coordinate components in this stratum layer");
        return rep;
    }
    rep.verdict = all_pass ? TransversalityReport::Verdict::transversal
                           : TransversalityReport::Verdict::fails;
    return rep;
}

}  // namespace curvedtop
