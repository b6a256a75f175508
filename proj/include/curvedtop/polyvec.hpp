#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "curvedtop/complex.hpp"
#include "curvedtop/gca.hpp"
#include "curvedtop/sullivan.hpp"

namespace curvedtop {

// polynomial in the even duals u_1..u_m: exponent vector -> coefficient
using UPoly = std::map<Mono, Rat>;

/*
 * Polyvector fields on a free graded-commutative algebra: the extension by
 * one formal partial per generator, graded so that the Schouten bracket
 * has degree -1 and twists sit in degree 2.
 */
class PolyContext {
public:
    explicit PolyContext(const SullivanAlgebra& s);

    const SullivanAlgebra& sullivan() const { return *s_; }
    const FreeGCA& ext() const { return *ext_; }
    size_t n_base() const { return nbase_; }
    size_t theta_of(size_t base_index) const { return nbase_ + base_index; }

    GcaElem embed(const GcaElem& base_elem) const;
    GcaElem theta(size_t base_index) const;

    // v = sum f_i * d/d(beta_i); satisfies [v, v] = 0 for a valid input
    GcaElem vectorfield_of_differential() const;

    // substitute u_i -> d/d(beta_i) into a potential
    GcaElem potential_polyvector(const UPoly& w) const;

private:
    const SullivanAlgebra* s_;
    std::shared_ptr<FreeGCA> ext_;
    size_t nbase_;
};

// Schouten bracket on the extension algebra (shifted graded Lie bracket,
// bi-derivation in each slot, [d/dg_i, g_i] = 1)
GcaElem schouten(const GcaElem& p, const GcaElem& q);

struct TwistedPolyComplex {
    TruncatedComplex complex;           // Z-graded by total polyvector degree
    int weight_cap = 0;                 // cap on the d-monotone potential phi
    int t_cap = 0;
    bool localized = false;
    GcaElem v;                          // untwisted part
    GcaElem w_poly;                     // potential as polyvector (no t)
    int t_tau = 0;                      // degree carried by one t power
    // per complex degree: the "diagonal weight" of each basis slot, the
    // letter count, and the t power
    std::map<int, std::vector<long>> slot_line;
    std::map<int, std::vector<int>> slot_letters;
    std::map<int, std::vector<int>> slot_tpow;
    bool line_split_valid = false;      // twist shifts are uniform
    int shift_v = 0, shift_w = 0;       // letter-count shifts of the two parts
    // rebuild data for the stabilization certificate
    const PolyContext* ctx = nullptr;
    UPoly upoly;
};

// The complex (T^poly((t)), [v + t w(d/d beta), -]) truncated by letter count.
// Verifies [twist, twist] = 0 exactly.
TwistedPolyComplex twisted_poly_complex(const PolyContext& ctx, const UPoly& w,
                                        int weight_cap, int t_cap = 4,
                                        bool localized = true);

struct IsolatedReport {
    std::map<long, long> dims_per_weight;  // diagonal-line index -> total dim
    std::map<long, bool> weight_certified;
    // per-degree dims of the base window and their stabilization flags
    // across two enlargements of every cap
    std::map<int, long> dims_per_degree;
    std::map<int, bool> degree_stable;
    bool isolated_up_to_cap = false;
    int cap = 0;
    int band_width = 1;
    std::string str() const;
};

// Verdict rule: with a potential, isolated-up-to-cap means every inspected
// degree's dimension is unchanged under two enlargements of the caps (the
// t-periodicity folds the Laurent direction into finitely many stable
// degrees exactly when the homology is finite over Q((t))).  Without a
// potential it additionally requires vanishing on the window edge bands.
IsolatedReport isolated_up_to(const TwistedPolyComplex& c);

struct JacobianReport {
    enum class Verdict { finite, infinite_certified, window_limited };
    Verdict verdict = Verdict::window_limited;
    long dim = -1;                      // valid when finite
    std::map<int, long> dims_per_degree;
    std::string str() const;
};

// dim of Q[u_1..u_m] / (u_i dw/du_i), degree by degree, with the
// vanishing-window certificate; weights empty means derive them from
// quasi-homogeneity (all-one weights when w is homogeneous)
JacobianReport jacobian_quotient_dim(size_t m, const UPoly& w,
                                     std::vector<int> weights, int degree_bound);

struct StrataReport {
    // strata[k] = generators (as polynomial strings) of the ideal of
    // (k+1)x(k+1) minors; empty generator list means the zero ideal, i.e.
    // D_k is everything
    std::vector<std::vector<std::string>> strata;
    std::vector<std::vector<UPoly>> minor_polys;
    bool degenerate = false;  // B == 0: no proper chain
    std::string str() const;
};

StrataReport rank_strata(const LieModel& l);

struct TransversalityReport {
    enum class Verdict { transversal, fails, degenerate, unsupported };
    Verdict verdict = Verdict::unsupported;
    std::vector<std::string> notes;
    std::string str() const;
};

// exact Jacobian-criterion check of V(w) against the rank-k stratum, away
// from the smaller stratum; coordinate-subspace strata only (m <= 3)
TransversalityReport transversality_check(const LieModel& l, const UPoly& w, int k,
                                          long budget = 100000);

}  // namespace curvedtop
