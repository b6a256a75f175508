#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curvedtop/errors.hpp"
#include "curvedtop/polyvec.hpp"

using namespace curvedtop;

namespace {

GcaElem random_poly(const FreeGCA& a, std::mt19937& rng, int letters_max = 3) {
    GcaElem e(a);
    for (int t = 0; t < 2; ++t) {
        Mono m(a.ngens(), 0);
        int total = 0;
        for (size_t i = 0; i < a.ngens() && total < letters_max; ++i) {
            int cap = a.gen(i).odd() ? 1 : 2;
            int v = static_cast<int>(rng() % (cap + 1));
            v = std::min(v, letters_max - total);
            m[i] = v;
            total += v;
        }
        e.add_term(m, Scalar(Rat(static_cast<long>(rng() % 5) - 2)));
    }
    return e;
}

GcaElem random_homog(const FreeGCA& a, std::mt19937& rng) {
    for (int t = 0; t < 60; ++t) {
        GcaElem e = random_poly(a, rng);
        if (e.is_zero()) continue;
        // keep one degree class
        GcaElem out(a);
        int deg = mono_degree(a, e.terms().begin()->first);
        for (const auto& [m, c] : e.terms())
            if (mono_degree(a, m) == deg) out.add_term(m, c);
        if (!out.is_zero()) return out;
    }
    return GcaElem::one(a);
}

int shifted_par(const GcaElem& e) {
    return ((e.degree() % 2) + 2) % 2 == 0 ? 1 : 0;  // parity of (deg - 1)
}

}  // namespace

TEST_CASE("schouten bracket basics") {
    ModelPair mp = model_library({{FamilySpec::Kind::cpn, 1}});
    PolyContext ctx(mp.sullivan);
    const FreeGCA& ext = ctx.ext();

    size_t xi = mp.sullivan.x_index(0);
    size_t bi = mp.sullivan.beta_index(0);
    GcaElem x = GcaElem::generator(ext, xi);
    GcaElem beta = GcaElem::generator(ext, bi);
    GcaElem tx = ctx.theta(xi);
    GcaElem tb = ctx.theta(bi);

    SUBCASE("pairing of a partial with its coordinate") {
        CHECK(schouten(tx, x) == GcaElem::one(ext));
        CHECK(schouten(tb, beta) == GcaElem::one(ext));
        CHECK(schouten(tx, beta).is_zero());
        CHECK(schouten(x, beta).is_zero());  // functions commute
    }
    SUBCASE("functions commute") {
        GcaElem f = gca_multiply(x, x) + x * Scalar(3);
        GcaElem g = gca_multiply(gca_multiply(x, x), beta);
        CHECK(schouten(f, g).is_zero());
    }
    SUBCASE("vector field commutator oracle") {
        // [x^2 d/dbeta, beta d/dx]: compare against the commutator of the
        // corresponding derivations applied to the base generators
        GcaElem p = gca_multiply(gca_multiply(x, x), tb);  // x^2 d/dbeta
        GcaElem q = gca_multiply(beta, tx);                // beta d/dx
        GcaElem br = schouten(p, q);

        // as derivations on the base algebra: P(beta) = x^2, P(x) = 0;
        // Q(x) = beta, Q(beta) = 0
        const FreeGCA& base = mp.sullivan.algebra();
        Derivation P{&base, -1, {GcaElem::zero(base), GcaElem::zero(base)}};
        // degrees: p has tau-degree 2*2 + (1-3) = 2... the derivation acts
        // with degree |x^2| - |beta| = 1; build both as maps
        Derivation Pd{&base, 1, {GcaElem::zero(base),
                                 gca_multiply(GcaElem::generator(base, 0),
                                              GcaElem::generator(base, 0))}};
        Derivation Qd{&base, 1, {GcaElem::generator(base, 1), GcaElem::zero(base)}};
        // commutator [P,Q] = P∘Q - (-1)^{|P||Q|} Q∘P on generators
        auto commutator_on = [&](size_t gen) {
            GcaElem pq = apply_derivation(Pd, Qd.images[gen]);
            GcaElem qp = apply_derivation(Qd, Pd.images[gen]);
            return pq - qp;  // both derivations have odd degree 1: sign +
        };
        // the bracket is itself a vector field: expand as sum f_i d/dg_i
        // and compare images
        for (size_t gen = 0; gen < base.ngens(); ++gen) {
            // extract the coefficient of theta_gen from br
            GcaElem coeff(ext);
            for (const auto& [m, c] : br.terms()) {
                if (m[ctx.theta_of(gen)] != 1) continue;
                Mono m2 = m;
                m2[ctx.theta_of(gen)] = 0;
                int others = 0;
                for (size_t j = ctx.n_base(); j < ext.ngens(); ++j) others += m2[j];
                if (others == 0) coeff.add_term(m2, c);
            }
            GcaElem expect = ctx.embed(commutator_on(gen));
            bool match = coeff == expect || coeff == -expect;
            CHECK(match);
        }
    }
}

TEST_CASE("schouten identities on random polyvectors") {
    ModelPair mp = model_library(
        {{FamilySpec::Kind::even_sphere, 1}, {FamilySpec::Kind::even_sphere, 2}});
    PolyContext ctx(mp.sullivan);
    const FreeGCA& ext = ctx.ext();
    std::mt19937 rng(17);

    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        GcaElem p = random_homog(ext, rng);
        GcaElem q = random_homog(ext, rng);
        GcaElem r = random_homog(ext, rng);
        if (p.is_zero() || q.is_zero() || r.is_zero()) continue;
        int sp = shifted_par(p), sq = shifted_par(q), sr = shifted_par(r);

        // shifted antisymmetry
        GcaElem anti = schouten(q, p);
        if ((sp * sq) % 2 == 0) anti = -anti;  // sign -(-1)^{(p-1)(q-1)}
        CHECK(schouten(p, q) == anti);

        // graded Jacobi: [p,[q,r]] = [[p,q],r] + (-1)^{(p-1)(q-1)}[q,[p,r]]
        GcaElem lhs = schouten(p, schouten(q, r));
        GcaElem rhs = schouten(schouten(p, q), r);
        GcaElem second = schouten(q, schouten(p, r));
        if ((sp * sq) % 2 != 0) second = -second;
        CHECK(lhs == rhs + second);

        // bi-derivation in the second slot:
        // [p, q r] = [p,q] r + (-1)^{(p-1)|q|} q [p,r]
        GcaElem left = schouten(p, gca_multiply(q, r));
        GcaElem t1 = gca_multiply(schouten(p, q), r);
        GcaElem t2 = gca_multiply(q, schouten(p, r));
        int qpar = ((q.degree() % 2) + 2) % 2;
        if ((sp * qpar) % 2 != 0) t2 = -t2;
        CHECK(left == t1 + t2);
        ++checked;
    }
    CHECK(checked > 40);
}

TEST_CASE("vector field of the differential") {
    SUBCASE("cp1") {
        ModelPair mp = model_library({{FamilySpec::Kind::cpn, 1}});
        PolyContext ctx(mp.sullivan);
        GcaElem v = ctx.vectorfield_of_differential();
        // v = x^2 d/dbeta
        const FreeGCA& ext = ctx.ext();
        GcaElem expect = gca_multiply(
            gca_multiply(GcaElem::generator(ext, 0), GcaElem::generator(ext, 0)),
            ctx.theta(mp.sullivan.beta_index(0)));
        CHECK(v == expect);
        CHECK(schouten(v, v).is_zero());
        CHECK(v.degree() == 2);  // twists sit in degree 2
    }
    SUBCASE("zero differential") {
        SullivanAlgebra s({{"x", 2}}, {{"b", 3}});
        PolyContext ctx(s);
        CHECK(ctx.vectorfield_of_differential().is_zero());
    }
    SUBCASE("product of spheres is a two-term sum") {
        ModelPair mp = model_library(
            {{FamilySpec::Kind::even_sphere, 1}, {FamilySpec::Kind::even_sphere, 2}});
        PolyContext ctx(mp.sullivan);
        GcaElem v = ctx.vectorfield_of_differential();
        CHECK(v.terms().size() == 2);
        CHECK(schouten(v, v).is_zero());
    }
}

TEST_CASE("twisted polyvector complexes") {
    ModelPair mp = model_library({{FamilySpec::Kind::cpn, 1}});
    PolyContext ctx(mp.sullivan);

    SUBCASE("w = 0 reduces to the untwisted complex") {
        UPoly w;
        TwistedPolyComplex c = twisted_poly_complex(ctx, w, 4, 3);
        CHECK(c.t_cap == 0);
        for (const auto& [deg, tp] : c.slot_tpow)
            for (int k : tp) CHECK(k == 0);
        c.complex.validate();
    }
    SUBCASE("cp1 with w = u has d squared zero and finite homology window") {
        UPoly w;
        w[{1}] = 1;
        TwistedPolyComplex c = twisted_poly_complex(ctx, w, 6, 3);
        c.complex.validate();
        auto rep = isolated_up_to(c);
        long total = 0;
        for (const auto& [line, d] : rep.dims_per_weight) total += d;
        CHECK(total > 0);
    }
    SUBCASE("weight cap 1 keeps only constants and single letters at t^0") {
        UPoly w;
        w[{1}] = 1;
        TwistedPolyComplex c = twisted_poly_complex(ctx, w, 1, 1);
        for (const auto& [deg, lets] : c.slot_letters)
            for (size_t i = 0; i < lets.size(); ++i)
                if (c.slot_tpow.at(deg)[i] == 0) CHECK(lets[i] <= 1);
    }
    SUBCASE("constant potential rejected") {
        UPoly w;
        w[{0}] = 1;
        CHECK_THROWS_AS(twisted_poly_complex(ctx, w, 3, 2), contract_error);
    }
}

TEST_CASE("isolated singularity criteria") {
    SUBCASE("sphere with w = u^d is isolated") {
        ModelPair mp = model_library({{FamilySpec::Kind::even_sphere, 1}});
        PolyContext ctx(mp.sullivan);
        for (int d = 1; d <= 2; ++d) {
            UPoly w;
            w[{d}] = 1;
            TwistedPolyComplex c = twisted_poly_complex(ctx, w, 7, 4);
            auto rep = isolated_up_to(c);
            CHECK(rep.isolated_up_to_cap);
        }
    }
    SUBCASE("w = 0 is not isolated") {
        ModelPair mp = model_library({{FamilySpec::Kind::even_sphere, 1}});
        PolyContext ctx(mp.sullivan);
        UPoly w;
        TwistedPolyComplex c = twisted_poly_complex(ctx, w, 7, 0);
        auto rep = isolated_up_to(c);
        CHECK(!rep.isolated_up_to_cap);
    }
    SUBCASE("two spheres with w = u1 u2 is not isolated") {
        ModelPair mp = model_library(
            {{FamilySpec::Kind::even_sphere, 1}, {FamilySpec::Kind::even_sphere, 1}});
        PolyContext ctx(mp.sullivan);
        UPoly w;
        w[{1, 1}] = 1;
        TwistedPolyComplex c = twisted_poly_complex(ctx, w, 6, 3);
        auto rep = isolated_up_to(c);
        CHECK(!rep.isolated_up_to_cap);
    }
}

TEST_CASE("jacobian quotient dims") {
    SUBCASE("one variable u^d") {
        for (int d = 1; d <= 4; ++d) {
            UPoly w;
            w[{d}] = 1;
            auto rep = jacobian_quotient_dim(1, w, {}, 30);
            CHECK(rep.verdict == JacobianReport::Verdict::finite);
            CHECK(rep.dim == d);
        }
    }
    SUBCASE("u1^2 + u2^2") {
        UPoly w;
        w[{2, 0}] = 1;
        w[{0, 2}] = 1;
        auto rep = jacobian_quotient_dim(2, w, {}, 30);
        CHECK(rep.verdict == JacobianReport::Verdict::finite);
        CHECK(rep.dim == 4);
    }
    SUBCASE("u1 u2 is infinite, certified") {
        UPoly w;
        w[{1, 1}] = 1;
        auto rep = jacobian_quotient_dim(2, w, {}, 20);
        CHECK(rep.verdict == JacobianReport::Verdict::infinite_certified);
    }
    SUBCASE("non-quasi-homogeneous rejected") {
        UPoly w;
        w[{1, 0}] = 1;
        w[{0, 2}] = 1;
        // weights (2,1) make this homogeneous, so force all-one weights
        CHECK_THROWS_AS(jacobian_quotient_dim(2, w, {1, 1}, 20), unsupported_error);
    }
}

TEST_CASE("rank strata") {
    SUBCASE("two even spheres") {
        ModelPair mp = model_library(
            {{FamilySpec::Kind::even_sphere, 1}, {FamilySpec::Kind::even_sphere, 2}});
        auto rep = rank_strata(mp.lie);
        CHECK(!rep.degenerate);
        REQUIRE(rep.strata.size() == 2);
        // D_0: both 1x1 minors u1, u2; D_1: the 2x2 minor u1 u2
        CHECK(rep.minor_polys[0].size() == 2);
        CHECK(rep.minor_polys[1].size() == 1);
        Mono m12 = {1, 1};
        CHECK(rep.minor_polys[1][0].count(m12) == 1);
    }
    SUBCASE("cp2 has zero bracket") {
        ModelPair mp = model_library({{FamilySpec::Kind::cpn, 2}});
        auto rep = rank_strata(mp.lie);
        CHECK(rep.degenerate);
        CHECK(rep.strata[0].empty());
    }
    SUBCASE("single sphere: D_0 = V(u)") {
        ModelPair mp = model_library({{FamilySpec::Kind::even_sphere, 1}});
        auto rep = rank_strata(mp.lie);
        REQUIRE(rep.strata.size() == 1);
        CHECK(rep.minor_polys[0].size() == 1);
        Mono m1 = {1};
        CHECK(rep.minor_polys[0][0].count(m1) == 1);
    }
}

TEST_CASE("transversality") {
    SUBCASE("single sphere w = u^d at the origin stratum") {
        ModelPair mp = model_library({{FamilySpec::Kind::even_sphere, 1}});
        UPoly w1;
        w1[{1}] = 1;
        CHECK(transversality_check(mp.lie, w1, 0).verdict ==
              TransversalityReport::Verdict::transversal);
        UPoly w2;
        w2[{2}] = 1;
        CHECK(transversality_check(mp.lie, w2, 0).verdict ==
              TransversalityReport::Verdict::fails);
    }
    SUBCASE("two spheres, w = u1 + u2 on D_1") {
        ModelPair mp = model_library(
            {{FamilySpec::Kind::even_sphere, 1}, {FamilySpec::Kind::even_sphere, 1}});
        UPoly w;
        w[{1, 0}] = 1;
        w[{0, 1}] = 1;
        auto rep = transversality_check(mp.lie, w, 1);
        CHECK(rep.verdict == TransversalityReport::Verdict::transversal);
    }
    SUBCASE("degenerate bracket reports degenerate") {
        ModelPair mp = model_library({{FamilySpec::Kind::cpn, 2}});
        UPoly w;
        w[{1}] = 1;
        auto rep = transversality_check(mp.lie, w, 0);
        CHECK(rep.verdict == TransversalityReport::Verdict::degenerate);
    }
}
