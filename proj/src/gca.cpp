#include "curvedtop/gca.hpp"

#include <sstream>

#include "curvedtop/errors.hpp"

namespace curvedtop {

FreeGCA::FreeGCA(std::vector<GeneratorSpec> gens) : gens_(std::move(gens)) {
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (by_name_.count(gens_[i].name))
            throw contract_error("duplicate generator name: " + gens_[i].name);
        by_name_[gens_[i].name] = i;
    }
}

long FreeGCA::index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : static_cast<long>(it->second);
}

std::string FreeGCA::str() const {
    std::ostringstream os;
    os << "GCA(";
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (i) os << ", ";
        os << gens_[i].name << ":" << gens_[i].degree;
    }
    os << ")";
    return os.str();
}

int mono_degree(const FreeGCA& a, const Mono& m) {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * a.gen(i).degree;
    return d;
}

bool mono_valid(const FreeGCA& a, const Mono& m) {
    if (m.size() != a.ngens()) return false;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0) return false;
        if (a.gen(i).odd() && m[i] > 1) return false;
    }
    return true;
}

std::string mono_str(const FreeGCA& a, const Mono& m) {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (any) os << "*";
        os << a.gen(i).name;
        if (m[i] > 1) os << "^" << m[i];
        any = true;
    }
    return any ? os.str() : "1";
}

GcaElem GcaElem::one(const FreeGCA& a) { return monomial(a, Mono(a.ngens(), 0)); }

GcaElem GcaElem::generator(const FreeGCA& a, size_t i) {
    Mono m(a.ngens(), 0);
    m[i] = 1;
    return monomial(a, m);
}

GcaElem GcaElem::monomial(const FreeGCA& a, const Mono& m, const Scalar& c) {
    if (!mono_valid(a, m)) throw contract_error("invalid monomial");
    GcaElem e(a);
    e.add_term(m, c);
    return e;
}

const FreeGCA& GcaElem::algebra() const {
    if (!alg_) throw contract_error("element without algebra");
    return *alg_;
}

void GcaElem::add_term(const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GcaElem GcaElem::operator+(const GcaElem& o) const {
    if (alg_ && o.alg_ && alg_ != o.alg_) throw contract_error("algebra mismatch");
    if (!alg_) return o;
    GcaElem out = *this;
    if (o.alg_)
        for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

GcaElem GcaElem::operator-(const GcaElem& o) const { return *this + (-o); }

GcaElem GcaElem::operator-() const {
    GcaElem out(*this);
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

GcaElem GcaElem::operator*(const Scalar& c) const {
    GcaElem out(*alg_);
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

bool GcaElem::operator==(const GcaElem& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [m, c] : terms_) {
        if (it->first != m || !(it->second == c)) return false;
        ++it;
    }
    return true;
}

int GcaElem::degree() const {
    if (terms_.empty()) throw contract_error("degree of zero element");
    int d = mono_degree(*alg_, terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (mono_degree(*alg_, m) != d)
            throw contract_error("degree of an inhomogeneous element");
    return d;
}

bool GcaElem::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = mono_degree(*alg_, terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (mono_degree(*alg_, m) != d) return false;
    return true;
}

std::string GcaElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (c.is_one())
            os << mono_str(*alg_, m);
        else
            os << "(" << c.str() << ")*" << mono_str(*alg_, m);
    }
    return os.str();
}

namespace {

// Koszul sign for merging sorted letter sequences a, b into normal form:
// each odd letter of b jumps over the odd letters of a with larger index.
std::pair<int, bool> mono_mult_sign(const FreeGCA& alg, const Mono& a, const Mono& b) {
    long swaps = 0;
    for (size_t j = 0; j < b.size(); ++j) {
        if (b[j] == 0 || !alg.gen(j).odd()) continue;
        if (a[j] != 0) return {0, false};  // odd square
        for (size_t i = j + 1; i < a.size(); ++i)
            if (a[i] != 0 && alg.gen(i).odd()) swaps += static_cast<long>(a[i]) * b[j];
    }
    return {swaps % 2 == 0 ? 1 : -1, true};
}

}  // namespace

GcaElem gca_multiply(const GcaElem& a, const GcaElem& b) {
    const FreeGCA& alg = a.algebra();
    if (!alg.same_algebra(b.algebra())) throw contract_error("algebra mismatch");
    GcaElem out(alg);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            auto [sign, nonzero] = mono_mult_sign(alg, ma, mb);
            if (!nonzero) continue;
            Mono m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            Scalar c = ca * cb;
            if (sign < 0) c = -c;
            out.add_term(m, c);
        }
    }
    return out;
}

GcaElem apply_derivation(const Derivation& d, const GcaElem& a) {
    const FreeGCA& alg = a.algebra();
    if (d.alg != &alg) throw contract_error("derivation algebra mismatch");
    if (d.images.size() != alg.ngens())
        throw contract_error("derivation images missing for some generator");
    GcaElem out(alg);
    const bool d_odd = d.degree % 2 != 0;
    for (const auto& [m, c] : a.terms()) {
        int prefix_deg = 0;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            const int gd = alg.gen(i).degree;
            for (int k = 0; k < m[i]; ++k) {
                if (!d.images[i].is_zero()) {
                    // prefix letters, D(g_i), suffix letters; the sign is the
                    // Koszul cost of moving D past the prefix
                    Mono pre(m.size(), 0), suf(m.size(), 0);
                    for (size_t j = 0; j < i; ++j) pre[j] = m[j];
                    pre[i] = k;
                    suf[i] = m[i] - k - 1;
                    for (size_t j = i + 1; j < m.size(); ++j) suf[j] = m[j];
                    GcaElem piece = gca_multiply(
                        gca_multiply(GcaElem::monomial(alg, pre), d.images[i]),
                        GcaElem::monomial(alg, suf));
                    Scalar coef = c;
                    if (d_odd && prefix_deg % 2 != 0) coef = -coef;
                    out = out + piece * coef;
                }
                prefix_deg += gd;
            }
        }
    }
    return out;
}

GcaElem partial(const GcaElem& a, size_t i) {
    const FreeGCA& alg = a.algebra();
    Derivation d;
    d.alg = &alg;
    d.degree = -alg.gen(i).degree;
    for (size_t j = 0; j < alg.ngens(); ++j)
        d.images.push_back(j == i ? GcaElem::one(alg) : GcaElem::zero(alg));
    return apply_derivation(d, a);
}

std::vector<Mono> monomials_of_weight(const FreeGCA& a, const std::vector<int>& weights,
                                      int w) {
    if (weights.size() != a.ngens()) throw contract_error("weight vector length");
    for (int x : weights)
        if (x < 1) throw contract_error("weights must be >= 1");
    std::vector<Mono> out;
    Mono cur(a.ngens(), 0);
    auto rec = [&](auto&& self, size_t i, int left) -> void {
        if (i == a.ngens()) {
            if (left == 0) out.push_back(cur);
            return;
        }
        int maxe = left / weights[i];
        if (a.gen(i).odd()) maxe = std::min(maxe, 1);
        for (int e = 0; e <= maxe; ++e) {
            cur[i] = e;
            self(self, i + 1, left - e * weights[i]);
        }
        cur[i] = 0;
    };
    if (w >= 0) rec(rec, 0, w);
    return out;
}

}  // namespace curvedtop
