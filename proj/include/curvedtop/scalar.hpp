#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace curvedtop {

using Rat = mpq_class;

/*
 * Laurent: an element of Q[t, t^-1], dense coefficients over a contiguous
 * exponent range.  The formal variable t is the only transcendental the
 * library ever adjoins; everything else is exact rational arithmetic.
 */
class Laurent {
public:
    Laurent() = default;
    Laurent(const Rat& c);              // constant
    Laurent(const Rat& c, int exp);     // c * t^exp
    static Laurent t(int exp = 1);

    bool is_zero() const { return coeff_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    // lowest/highest exponent with nonzero coefficient; requires !is_zero()
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(coeff_.size()) - 1; }
    Rat at(int exp) const;
    const Rat& constant_term() const;

    Laurent operator-() const;
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    bool operator==(const Laurent& o) const;

    Laurent shifted(int dexp) const;    // multiply by t^dexp

    // exact division; throws consistency_error if remainder is nonzero
    Laurent divided_by(const Laurent& o) const;

    // content-normalized monic gcd as polynomials (exponents shifted >= 0)
    static Laurent gcd(const Laurent& a, const Laurent& b);

    std::string str(const std::string& var = "t") const;

    // number of stored coefficients (complexity measure for pivoting)
    size_t terms() const;
    size_t bit_size() const;

private:
    // coeff_[i] is the coefficient of t^(lo_+i); invariant: ends nonzero
    std::vector<Rat> coeff_;
    int lo_ = 0;
    void trim();
    friend class Scalar;
};

/*
 * Scalar: an element of the field Q(t), held as num/den with den a
 * polynomial in t normalized to den(0) = 1.  Pure rationals are the
 * common case (den == 1, num constant) and stay cheap.
 */
class Scalar {
public:
    Scalar() : num_(), den_(Rat(1)) {}
    Scalar(int v) : num_(Rat(v)), den_(Rat(1)) {}
    Scalar(const Rat& v) : num_(v), den_(Rat(1)) {}
    Scalar(const Laurent& p) : num_(p), den_(Rat(1)) {}
    Scalar(const Laurent& num, const Laurent& den);

    static Scalar t(int exp = 1) { return Scalar(Laurent::t(exp)); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    bool is_rational() const { return num_.is_constant() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }
    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    Rat rational() const;       // requires is_rational()
    const Laurent& laurent() const;  // requires is_laurent()

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inverse() const;

    // substitute a rational value for t (den must not vanish there)
    Rat eval(const Rat& tval) const;

    size_t complexity() const;   // pivot-selection measure
    std::string str(const std::string& var = "t") const;

private:
    Laurent num_;
    Laurent den_;
    void reduce();
};

inline Scalar operator*(const Rat& a, const Scalar& b) { return Scalar(a) * b; }

}  // namespace curvedtop
