#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvedtop/complex.hpp"
#include "curvedtop/gca.hpp"

namespace curvedtop {

/*
 * Pure Sullivan algebra: polynomial generators x_1..x_n (even) tensor an
 * exterior part b_1..b_m (odd), with d(x_j) = 0 and d(b_i) = f_i(x).
 */
class SullivanAlgebra {
public:
    SullivanAlgebra(std::vector<GeneratorSpec> xs, std::vector<GeneratorSpec> betas);

    const FreeGCA& algebra() const { return *alg_; }
    std::shared_ptr<const FreeGCA> algebra_ptr() const { return alg_; }

    size_t n_x() const { return n_x_; }
    size_t n_beta() const { return n_beta_; }
    size_t x_index(size_t j) const { return j; }
    size_t beta_index(size_t i) const { return n_x_ + i; }

    void set_differential(size_t beta_i, const GcaElem& f);
    const GcaElem& f(size_t beta_i) const { return images_[n_x_ + beta_i]; }

    Derivation differential() const;
    GcaElem d(const GcaElem& a) const;

private:
    std::shared_ptr<FreeGCA> alg_;
    size_t n_x_, n_beta_;
    std::vector<GcaElem> images_;
};

struct PureSullivanReport {
    bool x_even = true;
    bool beta_odd_gt1 = true;
    bool dx_zero = true;   // structural in this representation
    bool f_in_x_only = true;
    bool f_no_linear_or_constant = true;
    bool degrees_match = true;  // deg f_i == deg b_i + 1
    bool d_squared_zero = true;

    bool pass() const {
        return x_even && beta_odd_gt1 && dx_zero && f_in_x_only &&
               f_no_linear_or_constant && degrees_match && d_squared_zero;
    }
    std::string str() const;
};

PureSullivanReport validate_pure_sullivan(const SullivanAlgebra& s);

// Truncated cohomology: dims of ker d / im d per degree <= max_degree.
// basis_limit guards the monomial enumeration per degree.
std::map<int, long> sullivan_cohomology_dims(const SullivanAlgebra& s, int max_degree,
                                             long basis_limit = 200000);

// Build the cochain complex itself (degrees 0..max_degree+1)
TruncatedComplex sullivan_complex(const SullivanAlgebra& s, int max_degree,
                                  long basis_limit = 200000);

/*
 * Lie-model data: abelian even part u_1..u_m dual to the betas, odd part
 * e_1..e_n dual to the x's, and the symmetric odd-odd bracket with values
 * linear in the u's, read from the quadratic parts of the f_i.
 */
struct LieModel {
    std::vector<std::string> even_names;  // u_i
    std::vector<int> even_degrees;
    std::vector<std::string> odd_names;   // e_j
    std::vector<int> odd_degrees;
    // bracket[j][k][i] = coefficient of u_i in B(e_j, e_k); symmetric in j,k
    std::vector<std::vector<std::vector<Rat>>> bracket;

    size_t n_even() const { return even_names.size(); }
    size_t n_odd() const { return odd_names.size(); }
    void validate() const;
};

LieModel lie_model_of(const SullivanAlgebra& s);

struct FamilySpec {
    enum class Kind { cpn, even_sphere };
    Kind kind;
    int n;
};

struct ModelPair {
    SullivanAlgebra sullivan;
    LieModel lie;
};

// CP^n, even spheres S^{2n}, and products of such factors
ModelPair model_library(const std::vector<FamilySpec>& factors);

}  // namespace curvedtop
