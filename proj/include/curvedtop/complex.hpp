#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvedtop/elim.hpp"
#include "curvedtop/sparse.hpp"

namespace curvedtop {

/*
 * Scalar field descriptor.  pure_rational is plain Q.  rational_with_t
 * adjoins a formal even-degree variable t with a bounded Laurent window;
 * complexes over it are held in a reduced grading (usually Z/2) and the
 * window governs power-series truncation and localization reports.
 */
struct ScalarField {
    enum class Mode { pure_rational, rational_with_t };
    Mode mode = Mode::pure_rational;
    int t_degree = -2;
    int window_min = 0;
    int window_max = 6;

    static ScalarField rational();
    static ScalarField with_t(int t_degree, int window_min, int window_max);
    void validate() const;
    bool has_t() const { return mode == Mode::rational_with_t; }
};

enum class Grading { Z, Z2 };

struct HomologyReport {
    std::map<int, long> dims;
    std::map<int, bool> certified;
};

/*
 * TruncatedComplex: cohomologically graded (d raises degree by 1; in Z/2
 * mode the differential flips parity), with spaces only inside the window
 * [lo, hi].  Spaces outside the window are treated as zero, so truncation
 * is honest and the certified flags say where that truncation cannot have
 * affected a reported dimension.
 */
class TruncatedComplex {
public:
    Grading grading = Grading::Z;
    ScalarField field;
    int lo = 0, hi = 0;
    std::map<int, std::vector<std::string>> basis;
    // diff[k] : C^k -> C^{k+1}; rows index C^{k+1}, cols index C^k.
    // In Z/2 mode diff[1] maps parity 1 to parity 0.
    std::map<int, SparseMatrixQ> diff;
    std::map<int, bool> certified;
    bool t_localized = false;

    long dim(int k) const;
    bool in_window(int k) const;
    int next_deg(int k) const;
    int prev_deg(int k) const;
    const SparseMatrixQ* diff_at(int k) const;
    bool is_certified(int k) const;

    // shape checks plus d∘d = 0 entry-exactly inside the window
    void validate() const;
};

// degree-0 chain map f : C -> D
struct ChainMap {
    TruncatedComplex source;
    TruncatedComplex target;
    std::map<int, SparseMatrixQ> maps;

    void validate() const;  // commutation with differentials inside windows
};

// dim ker/im per requested degree via exact elimination
HomologyReport homology_dims(const TruncatedComplex& c, const std::vector<int>& degs,
                             const elim::Options& opts = {});

// mapping cone with the standard sign; window shrinks by one at the top in
// Z-graded mode
TruncatedComplex cone(const ChainMap& f);

// tensor product with Koszul signs
TruncatedComplex tensor_complex(const TruncatedComplex& c, const TruncatedComplex& d);

// invert t: the result computes homology as Q(t)-dimensions
TruncatedComplex localize_t(const TruncatedComplex& c);

// expand a rational-with-t complex into plain-Q slots label x t^j.
// Power-series truncation for non-localized complexes (j >= 0); the full
// Laurent window for localized ones.
TruncatedComplex expand_t_slots(const TruncatedComplex& c);

// Report for a localized Z-graded complex: every Q((t))-homology class of
// degree d0 contributes one dimension at each window degree congruent to d0
// modulo t_degree.
std::map<int, long> localized_window_report(const TruncatedComplex& c, int deg_lo,
                                            int deg_hi);

}  // namespace curvedtop
