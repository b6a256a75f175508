#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "curvedtop/scalar.hpp"

namespace curvedtop {

struct GeneratorSpec {
    std::string name;
    int degree = 0;
    bool odd() const { return degree % 2 != 0; }
};

/*
 * Free graded-commutative algebra on named generators.  Monomials are
 * exponent vectors in the fixed generator order; odd generators square to
 * zero; all Koszul signs derive from sorting transpositions against that
 * order.
 */
class FreeGCA {
public:
    explicit FreeGCA(std::vector<GeneratorSpec> gens);

    size_t ngens() const { return gens_.size(); }
    const GeneratorSpec& gen(size_t i) const { return gens_[i]; }
    long index_of(const std::string& name) const;  // -1 if absent
    bool same_algebra(const FreeGCA& o) const { return this == &o; }

    std::string str() const;

private:
    std::vector<GeneratorSpec> gens_;
    std::map<std::string, size_t> by_name_;
};

using Mono = std::vector<int>;

int mono_degree(const FreeGCA& a, const Mono& m);
bool mono_valid(const FreeGCA& a, const Mono& m);
std::string mono_str(const FreeGCA& a, const Mono& m);

/*
 * Element of a FreeGCA: normal-form linear combination of monomials.
 * The algebra is referenced, not owned; callers keep it alive.
 */
class GcaElem {
public:
    GcaElem() : alg_(nullptr) {}
    explicit GcaElem(const FreeGCA& a) : alg_(&a) {}

    static GcaElem zero(const FreeGCA& a) { return GcaElem(a); }
    static GcaElem one(const FreeGCA& a);
    static GcaElem generator(const FreeGCA& a, size_t i);
    static GcaElem monomial(const FreeGCA& a, const Mono& m, const Scalar& c = Scalar(1));

    const FreeGCA& algebra() const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, Scalar>& terms() const { return terms_; }

    void add_term(const Mono& m, const Scalar& c);

    GcaElem operator+(const GcaElem& o) const;
    GcaElem operator-(const GcaElem& o) const;
    GcaElem operator-() const;
    GcaElem operator*(const Scalar& c) const;
    bool operator==(const GcaElem& o) const;

    // degree of a homogeneous element; throws if mixed
    int degree() const;
    bool is_homogeneous() const;

    std::string str() const;

private:
    const FreeGCA* alg_;
    std::map<Mono, Scalar> terms_;
};

// normal-form product with Koszul signs
GcaElem gca_multiply(const GcaElem& a, const GcaElem& b);

/*
 * Graded derivation given by its degree and generator images, extended by
 * the Leibniz rule D(xy) = D(x)y + (-1)^{r|x|} x D(y).
 */
struct Derivation {
    const FreeGCA* alg = nullptr;
    int degree = 1;
    std::vector<GcaElem> images;  // one per generator
};

GcaElem apply_derivation(const Derivation& d, const GcaElem& a);

// left partial derivative with respect to generator i (degree -deg(g_i))
GcaElem partial(const GcaElem& a, size_t i);

// all monomials with given total weight, for a strictly positive weight
// vector (weights[i] >= 1)
std::vector<Mono> monomials_of_weight(const FreeGCA& a, const std::vector<int>& weights,
                                      int w);

}  // namespace curvedtop
