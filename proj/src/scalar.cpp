#include "curvedtop/scalar.hpp"

#include <sstream>

#include "curvedtop/errors.hpp"

namespace curvedtop {

Laurent::Laurent(const Rat& c) {
    if (c != 0) {
        coeff_.push_back(c);
        lo_ = 0;
    }
}

Laurent::Laurent(const Rat& c, int exp) {
    if (c != 0) {
        coeff_.push_back(c);
        lo_ = exp;
    }
}

Laurent Laurent::t(int exp) { return Laurent(Rat(1), exp); }

void Laurent::trim() {
    size_t head = 0;
    while (head < coeff_.size() && coeff_[head] == 0) ++head;
    if (head == coeff_.size()) {
        coeff_.clear();
        lo_ = 0;
        return;
    }
    size_t tail = coeff_.size();
    while (tail > head && coeff_[tail - 1] == 0) --tail;
    if (head > 0 || tail < coeff_.size()) {
        std::vector<Rat> out(coeff_.begin() + head, coeff_.begin() + tail);
        coeff_.swap(out);
        lo_ += static_cast<int>(head);
    }
}

bool Laurent::is_constant() const {
    return coeff_.empty() || (coeff_.size() == 1 && lo_ == 0);
}

bool Laurent::is_one() const {
    return coeff_.size() == 1 && lo_ == 0 && coeff_[0] == 1;
}

Rat Laurent::at(int exp) const {
    if (is_zero() || exp < lo_ || exp > hi()) return Rat(0);
    return coeff_[exp - lo_];
}

const Rat& Laurent::constant_term() const {
    static const Rat zero(0);
    if (is_zero() || lo_ > 0 || hi() < 0) return zero;
    return coeff_[-lo_];
}

Laurent Laurent::operator-() const {
    Laurent r(*this);
    for (auto& c : r.coeff_) c = -c;
    return r;
}

Laurent Laurent::operator+(const Laurent& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int nlo = std::min(lo_, o.lo_);
    int nhi = std::max(hi(), o.hi());
    Laurent r;
    r.lo_ = nlo;
    r.coeff_.assign(static_cast<size_t>(nhi - nlo + 1), Rat(0));
    for (size_t i = 0; i < coeff_.size(); ++i) r.coeff_[lo_ - nlo + i] += coeff_[i];
    for (size_t i = 0; i < o.coeff_.size(); ++i) r.coeff_[o.lo_ - nlo + i] += o.coeff_[i];
    r.trim();
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
    if (is_zero() || o.is_zero()) return Laurent();
    Laurent r;
    r.lo_ = lo_ + o.lo_;
    r.coeff_.assign(coeff_.size() + o.coeff_.size() - 1, Rat(0));
    for (size_t i = 0; i < coeff_.size(); ++i)
        for (size_t j = 0; j < o.coeff_.size(); ++j)
            r.coeff_[i + j] += coeff_[i] * o.coeff_[j];
    r.trim();
    return r;
}

bool Laurent::operator==(const Laurent& o) const {
    return lo_ == o.lo_ && coeff_ == o.coeff_;
}

Laurent Laurent::shifted(int dexp) const {
    Laurent r(*this);
    if (!r.is_zero()) r.lo_ += dexp;
    return r;
}

Laurent Laurent::divided_by(const Laurent& o) const {
    if (o.is_zero()) throw consistency_error("Laurent division by zero");
    if (is_zero()) return Laurent();
    // long division of the polynomial parts; the exponent offset is exact
    std::vector<Rat> rem = coeff_;
    const std::vector<Rat>& div = o.coeff_;
    if (rem.size() < div.size())
        throw consistency_error("Laurent division is not exact");
    std::vector<Rat> quot(rem.size() - div.size() + 1, Rat(0));
    for (size_t k = quot.size(); k-- > 0;) {
        Rat q = rem[k + div.size() - 1] / div.back();
        quot[k] = q;
        if (q != 0)
            for (size_t j = 0; j < div.size(); ++j) rem[k + j] -= q * div[j];
    }
    for (const auto& c : rem)
        if (c != 0) throw consistency_error("Laurent division is not exact");
    Laurent r;
    r.coeff_ = std::move(quot);
    r.lo_ = lo_ - o.lo_;
    r.trim();
    return r;
}

Laurent Laurent::gcd(const Laurent& a, const Laurent& b) {
    if (a.is_zero() && b.is_zero()) return Laurent();
    // work with polynomial parts shifted to exponent 0, monic remainders
    auto poly = [](const Laurent& x) {
        Laurent p(x);
        if (!p.is_zero()) p.lo_ = 0;
        return p;
    };
    Laurent u = poly(a), v = poly(b);
    while (!v.is_zero()) {
        // u mod v by long division
        std::vector<Rat> rem = u.coeff_;
        const std::vector<Rat>& div = v.coeff_;
        if (rem.size() >= div.size()) {
            for (size_t k = rem.size() - div.size() + 1; k-- > 0;) {
                Rat q = rem[k + div.size() - 1] / div.back();
                if (q != 0)
                    for (size_t j = 0; j < div.size(); ++j) rem[k + j] -= q * div[j];
            }
        }
        Laurent r;
        r.coeff_ = std::move(rem);
        r.lo_ = 0;
        r.trim();
        if (!r.is_zero()) r.lo_ = 0;
        u = v;
        v = r;
    }
    if (!u.is_zero()) {
        Rat lead = u.coeff_.back();
        for (auto& c : u.coeff_) c /= lead;
    }
    return u;
}

std::string Laurent::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeff_.size(); ++i) {
        const Rat& c = coeff_[i];
        if (c == 0) continue;
        int e = lo_ + static_cast<int>(i);
        Rat ac = c;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) ac = -c;
        } else if (c < 0) {
            os << "-";
            ac = -c;
        }
        first = false;
        if (e == 0 || ac != 1) os << ac.get_str();
        if (e != 0) {
            if (ac != 1) os << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

size_t Laurent::terms() const {
    size_t n = 0;
    for (const auto& c : coeff_)
        if (c != 0) ++n;
    return n;
}

size_t Laurent::bit_size() const {
    size_t n = 0;
    for (const auto& c : coeff_) {
        if (c == 0) continue;
        n += mpz_sizeinbase(c.get_num().get_mpz_t(), 2);
        n += mpz_sizeinbase(c.get_den().get_mpz_t(), 2);
    }
    return n;
}

Scalar::Scalar(const Laurent& num, const Laurent& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw consistency_error("Scalar with zero denominator");
    reduce();
}

void Scalar::reduce() {
    if (num_.is_zero()) {
        den_ = Laurent(Rat(1));
        return;
    }
    // move the denominator's t-power and leading unit into the numerator
    if (den_.lo() != 0) {
        num_ = num_.shifted(-den_.lo());
        den_ = den_.shifted(-den_.lo());
    }
    if (!den_.is_constant()) {
        Laurent g = Laurent::gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divided_by(g);
            den_ = den_.divided_by(g);
        }
    }
    const Rat c0 = den_.at(den_.lo());
    if (c0 != 1) {
        Laurent unit(Rat(1) / c0);
        num_ = num_ * unit;
        den_ = den_ * unit;
    }
}

Rat Scalar::rational() const {
    if (!is_rational()) throw consistency_error("Scalar is not a plain rational: " + str());
    return num_.is_zero() ? Rat(0) : num_.at(0);
}

const Laurent& Scalar::laurent() const {
    if (!den_.is_one()) throw consistency_error("Scalar has a nontrivial denominator: " + str());
    return num_;
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) return Scalar(num_ + o.num_);
    return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return Scalar();
    if (den_.is_one() && o.den_.is_one()) return Scalar(num_ * o.num_);
    return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw consistency_error("Scalar division by zero");
    if (is_zero()) return Scalar();
    return Scalar(num_ * o.den_, den_ * o.num_);
}

bool Scalar::operator==(const Scalar& o) const {
    return (num_ * o.den_) == (o.num_ * den_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw consistency_error("inverse of zero");
    return Scalar(den_, num_);
}

Rat Scalar::eval(const Rat& tval) const {
    auto eval_poly = [&](const Laurent& p) {
        if (p.is_zero()) return Rat(0);
        if (p.lo() < 0 && tval == 0)
            throw consistency_error("evaluating a Laurent pole at t=0");
        Rat acc(0);
        for (int e = p.hi(); e >= p.lo(); --e) {
            acc *= tval;
            acc += p.at(e);
        }
        // account for the lowest exponent
        if (p.lo() > 0) {
            for (int i = 0; i < p.lo(); ++i) acc *= tval;
        } else if (p.lo() < 0) {
            for (int i = 0; i < -p.lo(); ++i) acc /= tval;
        }
        return acc;
    };
    Rat d = eval_poly(den_);
    if (d == 0) throw consistency_error("denominator vanishes at evaluation point");
    return eval_poly(num_) / d;
}

size_t Scalar::complexity() const {
    return num_.bit_size() + den_.bit_size() + 4 * (num_.terms() + den_.terms());
}

std::string Scalar::str(const std::string& var) const {
    if (den_.is_one()) return num_.str(var);
    std::string n = num_.str(var);
    std::string d = den_.str(var);
    if (num_.terms() > 1) n = "(" + n + ")";
    return n + "/(" + d + ")";
}

}  // namespace curvedtop
