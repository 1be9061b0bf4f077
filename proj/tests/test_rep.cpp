#include <set>

#include "doctest.h"
#include "modat/error.hpp"
#include "modat/rep/representation.hpp"
#include "oracles.hpp"

using namespace modat;
using namespace modat::rep;
using gfla::field_make;
using oracle::Perm;

namespace {

Representation regular(const std::vector<Perm>& gens, gfla::FieldPtr f, std::string label) {
    auto m = oracle::regular_matrices(gens, f);
    std::size_t n = m[0].rows();
    return Representation(f, n, std::move(m), std::move(label));
}

Representation perm_module(const std::vector<Perm>& gens, gfla::FieldPtr f) {
    std::vector<FqMatrix> m;
    for (const auto& g : gens) m.push_back(oracle::perm_matrix(g, f));
    return Representation(f, gens[0].size(), std::move(m), "perm");
}

const std::vector<Perm> kS3{{1, 0, 2}, {1, 2, 0}};
const std::vector<Perm> kA4{{1, 2, 0, 3}, {1, 0, 3, 2}};
const std::vector<Perm> kC3{{1, 2, 0}};

Representation c3_gf2() {
    auto f = field_make(2, 1);
    return Representation(f, 2, {FqMatrix::from_rows(f, {{0, 1}, {1, 1}}, 2)}, "c3");
}


std::size_t total_dim(const std::vector<ChopFactor>& c) {
    std::size_t d = 0;
    for (const auto& x : c) d += x.multiplicity * x.simple.dim;
    return d;
}

// span of the rows as a sorted list of encoded vectors
oracle::Lattice::Sub span_set(const oracle::Lattice& L, const FqMatrix& b) {
    oracle::Lattice::Sub s{0};
    for (std::size_t i = 0; i < b.rows(); ++i) {
        std::vector<std::uint32_t> d(b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j) d[j] = b.at(i, j);
        std::uint32_t v = L.encode(d);
        std::set<std::uint32_t> next(s.begin(), s.end());
        for (auto x : s)
            for (std::uint32_t c = 1; c < b.F().q(); ++c) next.insert(L.add(x, L.smul(c, v)));
        s.assign(next.begin(), next.end());
    }
    return s;
}

bool in_lattice(const oracle::Lattice& L, const oracle::Lattice::Sub& s) {
    for (const auto& t : L.subs())
        if (t == s) return true;
    return false;
}

}  // namespace

TEST_CASE("spin") {
    auto f = field_make(3, 1);
    auto r = regular(kS3, f, "S3reg");
    CHECK(spin(r, FqMatrix(f, 0, 6)).rows() == 0);
    FqMatrix ones(f, 1, 6);
    for (std::size_t j = 0; j < 6; ++j) ones.set(0, j, 1);
    auto s = spin(r, ones);
    CHECK(s.rows() == 1);
    CHECK(s == ones);
    CHECK(spin(r, FqMatrix::identity(f, 6)).is_identity());
    CHECK_THROWS_AS(spin(r, FqMatrix(f, 1, 5)), Error);
}

TEST_CASE("split") {
    auto f = field_make(3, 1);
    auto r = regular(kS3, f, "S3reg");
    FqMatrix ones(f, 1, 6);
    for (std::size_t j = 0; j < 6; ++j) ones.set(0, j, 1);
    auto [s, q] = split(r, ones);
    CHECK(s.dim == 1);
    CHECK(q.dim == 5);
    auto [s2, q2] = split(r, FqMatrix::identity(f, 6));
    CHECK(s2.dim == 6);
    CHECK(q2.dim == 0);
    auto [s3, q3] = split(r, FqMatrix(f, 0, 6));
    CHECK(s3.dim == 0);
    CHECK(q3.dim == 6);
    CHECK(q3.gens[0] == r.gens[0]);
    FqMatrix e0(f, 1, 6);
    e0.set(0, 0, 1);
    try {
        split(r, e0);
        FAIL("expected NotInvariant");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInvariant);
    }

    // quotient generators really are the induced action
    auto sp = split_ex(r, ones);
    FqMatrix full = vstack(sp.sub_basis, sp.complement);
    auto inv = gfla::inverse(full);
    REQUIRE(inv);
    for (std::size_t g = 0; g < r.ngens(); ++g) {
        FqMatrix y = full * r.gens[g] * *inv;
        CHECK(y.block(1, 6, 1, 6) == sp.quot.gens[g]);
        CHECK(y.block(0, 1, 0, 1) == sp.sub.gens[g]);
        CHECK(y.block(0, 1, 1, 6).is_zero());
    }
}

TEST_CASE("is_irreducible") {
    auto f2 = field_make(2, 1);
    auto one = Representation(f2, 1, {FqMatrix::identity(f2, 1)}, "t");
    CHECK(is_irreducible(one, 1).irreducible);
    CHECK(is_irreducible(c3_gf2(), 1).irreducible);
    auto tt = direct_sum(trivial_rep(f2, 1), trivial_rep(f2, 1));
    auto res = is_irreducible(tt, 1);
    CHECK_FALSE(res.irreducible);
    CHECK(res.submodule.rows() == 1);
    try {
        is_irreducible(Representation(f2, 0, {FqMatrix(f2, 0, 0)}), 1);
        FAIL("expected ZeroModule");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroModule);
    }
    // over GF(4) the C3 module splits
    auto f4 = field_make(2, 2);
    auto c = Representation(f4, 2, {FqMatrix::from_rows(f4, {{0, 1}, {1, 1}}, 2)}, "c3");
    CHECK_FALSE(is_irreducible(c, 3).irreducible);
    // determinism
    auto r = regular(kS3, field_make(3, 1), "S3reg");
    CHECK(is_irreducible(r, 9).submodule == is_irreducible(r, 9).submodule);
}

TEST_CASE("word stream") {
    auto f = field_make(5, 1);
    WordStream a(7, 3, f), b(7, 3, f);
    for (int i = 0; i < 700; ++i) {
        auto x = a.next(), y = b.next();
        CHECK(x.to_string() == y.to_string());
        for (const auto& t : x.terms) {
            CHECK(t.coeff != 0);
            CHECK(t.coeff < 5);
            CHECK(t.letters.size() <= std::min<std::size_t>(12, 2 + 2 * (i / 200)));
        }
    }
    auto f2 = field_make(2, 1);
    auto r = Representation(f2, 1, {FqMatrix::identity(f2, 1), FqMatrix::identity(f2, 1)});
    try {
        is_irreducible(direct_sum(r, r), 1, 0);
        FAIL("expected Undecided");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Undecided);
    }
}

TEST_CASE("chop S3 regular over GF(3) against the submodule lattice") {
    auto f = field_make(3, 1);
    auto r = regular(kS3, f, "S3reg");
    auto c = chop(r, 1);
    CHECK(chop_summary(c) == "trivial:3 sign:3");
    CHECK(total_dim(c) == 6);

    oracle::Lattice L(f, r.gens);
    CHECK(L.length() == 6);
    std::map<std::vector<std::uint32_t>, std::size_t> count;
    for (const auto& sc : L.linear_factors()) ++count[sc];
    REQUIRE(count.size() == 2);
    for (const auto& x : c) {
        std::vector<std::uint32_t> sc;
        for (const auto& g : x.simple.gens) sc.push_back(g.at(0, 0));
        CHECK(count[sc] == x.multiplicity);
    }
    for (std::uint64_t seed : {2, 3, 17}) CHECK(chop_summary(chop(r, seed)) == "trivial:3 sign:3");
}

TEST_CASE("chop A4 natural over GF(4)") {
    auto f = field_make(2, 2);
    auto r = perm_module(kA4, f);
    auto c = chop(r, 1);
    CHECK(chop_summary(c) == "trivial:2 1a:1 1b:1");
    oracle::Lattice L(f, r.gens);
    std::map<std::vector<std::uint32_t>, std::size_t> count;
    for (const auto& sc : L.linear_factors()) ++count[sc];
    CHECK(count.size() == 3);
    for (const auto& x : c) {
        std::vector<std::uint32_t> sc;
        for (const auto& g : x.simple.gens) sc.push_back(g.at(0, 0));
        CHECK(count[sc] == x.multiplicity);
    }
    // over GF(2) the two nontrivial linear modules fuse into one 2-dim simple
    auto c2 = chop(perm_module(kA4, field_make(2, 1)), 1);
    CHECK(chop_summary(c2) == "trivial:2 2a:1");
}

TEST_CASE("chop of a simple module") {
    auto c = chop(c3_gf2(), 4);
    REQUIRE(c.size() == 1);
    CHECK(c[0].multiplicity == 1);
    CHECK(iso(c[0].simple, c3_gf2()));
    CHECK(chop(Representation(field_make(2, 1), 0, {FqMatrix(field_make(2, 1), 0, 0)}), 1).empty());
}

TEST_CASE("iso") {
    auto a = c3_gf2();
    auto t = iso(a, a);
    REQUIRE(t);
    CHECK(gfla::rank(*t) == 2);
    // b generated by g^2 in a conjugated basis: still the same module up to relabelling of g
    auto f = a.field;
    FqMatrix P = FqMatrix::from_rows(f, {{1, 1}, {0, 1}}, 2);
    auto b = change_basis(a, P);
    auto t2 = iso(a, b);
    REQUIRE(t2);
    CHECK(a.gens[0] * *t2 == *t2 * b.gens[0]);
    CHECK(gfla::rank(*t2) == 2);
    auto g2 = Representation(f, 2, {a.gens[0] * a.gens[0]});
    auto t3 = iso(g2, change_basis(g2, P));
    REQUIRE(t3);
    CHECK(!iso(a, Representation(f, 1, {FqMatrix::identity(f, 1)})));
    auto two = Representation(f, 2, {a.gens[0], a.gens[0]});
    CHECK_THROWS_AS(iso(a, two), Error);
    // non-isomorphic modules of equal dimension over GF(4)
    auto f4 = field_make(2, 2);
    Fq w = f4->generator();
    auto x = Representation(f4, 1, {FqMatrix::from_rows(f4, {{w}}, 1)});
    auto y = Representation(f4, 1, {FqMatrix::from_rows(f4, {{f4->mul(w, w)}}, 1)});
    CHECK(!iso(x, y));
}

TEST_CASE("dual") {
    auto f = field_make(3, 1);
    auto p = perm_module(kS3, f);
    auto d = dual(p);
    for (std::size_t i = 0; i < p.ngens(); ++i) CHECK(d.gens[i] == p.gens[i]);
    auto f4 = field_make(2, 2);
    Fq w = f4->generator();
    auto x = Representation(f4, 1, {FqMatrix::from_rows(f4, {{w}}, 1)});
    CHECK(dual(x).gens[0].at(0, 0) == f4->mul(w, w));
    auto a = c3_gf2();
    CHECK(iso(dual(dual(a)), a));
    auto sing = Representation(f, 1, {FqMatrix(f, 1, 1)});
    try {
        dual(sing);
        FAIL("expected SingularGenerator");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SingularGenerator);
    }
}

TEST_CASE("tensor") {
    auto a = c3_gf2();
    auto t = tensor(a, trivial_rep(a.field, 1));
    CHECK(t.dim == 2);
    CHECK(iso(t, a));
    auto aa = tensor(a, a);
    CHECK(aa.dim == 4);
    auto c = chop(aa, 1);
    CHECK(chop_summary(c) == "trivial:2 2a:1");
    oracle::Lattice L(a.field, aa.gens);
    CHECK(L.length() == 3);
    auto f3 = field_make(3, 1);
    auto s = perm_module(kS3, f3);
    auto two = Representation(f3, 2, {FqMatrix::identity(f3, 2), FqMatrix::identity(f3, 2)});
    CHECK(tensor(two, s).dim == 6);
    CHECK_THROWS_AS(tensor(a, two), Error);
    CHECK_THROWS_AS(tensor(a, Representation(field_make(3, 1), 1, {FqMatrix::identity(f3, 1)})), Error);

    // argument order: every factor of one side has an isomorphic factor on the other
    auto f4 = field_make(2, 2);
    auto nat = perm_module(kA4, f4);
    auto reg = regular(kA4, f4, "A4reg");
    auto sub = chop(reg, 1);
    auto x = chop(tensor(nat, sub.back().simple), 5);
    auto y = chop(tensor(sub.back().simple, nat), 5);
    REQUIRE(x.size() == y.size());
    for (const auto& u : x) {
        bool found = false;
        for (const auto& v : y)
            if (u.simple.dim == v.simple.dim && u.multiplicity == v.multiplicity && iso(u.simple, v.simple)) found = true;
        CHECK(found);
    }
}

TEST_CASE("hom") {
    auto f = field_make(2, 1);
    auto a = c3_gf2();
    // brute force over all 2x2 matrices
    std::size_t brute = 0;
    for (std::uint32_t m = 0; m < 16; ++m) {
        FqMatrix t = FqMatrix::from_values(f, 2, 2, {m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1});
        brute += a.gens[0] * t == t * a.gens[0];
    }
    auto h = hom(a, a);
    CHECK((std::size_t(1) << h.size()) == brute);
    for (const auto& t : h) CHECK(a.gens[0] * t == t * a.gens[0]);

    auto f3 = field_make(3, 1);
    auto triv = trivial_rep(f3, 2);
    auto sgn = Representation(f3, 1, {FqMatrix::from_rows(f3, {{2}}, 1), FqMatrix::identity(f3, 1)});
    CHECK(hom(triv, triv).size() == 1);
    CHECK(hom(triv, sgn).size() == 0);
    CHECK(hom(direct_sum(triv, triv), triv).size() == 2);
    CHECK_THROWS_AS(hom(triv, Representation(f, 1, {FqMatrix::identity(f, 1), FqMatrix::identity(f, 1)})), Error);

    // Schur vs socle multiplicity
    auto r = regular(kS3, f3, "S3reg");
    auto layers = socle_series(r, {triv, sgn}, 1);
    CHECK(hom(triv, r).size() == layers[0].multiplicity[0]);
    CHECK(hom(sgn, r).size() == layers[0].multiplicity[1]);
}

TEST_CASE("socle series") {
    auto f2 = field_make(2, 1);
    auto jordan = Representation(f2, 2, {FqMatrix::from_rows(f2, {{1, 1}, {0, 1}}, 2)});
    auto t2 = trivial_rep(f2, 1);
    auto l = socle_series(jordan, {t2}, 1);
    REQUIRE(l.size() == 2);
    CHECK(l[0].multiplicity == std::vector<std::size_t>{1});
    CHECK(l[1].multiplicity == std::vector<std::size_t>{1});

    auto ss = direct_sum(t2, t2);
    CHECK(socle_series(ss, {t2}, 1).size() == 1);

    auto f3 = field_make(3, 1);
    auto r = regular(kS3, f3, "S3reg");
    auto triv = trivial_rep(f3, 2);
    auto sgn = Representation(f3, 1, {FqMatrix::from_rows(f3, {{2}}, 1), FqMatrix::identity(f3, 1)});
    auto layers = socle_series(r, {triv, sgn}, 1);
    REQUIRE(layers.size() == 3);
    oracle::Lattice L(f3, r.gens);
    auto dims = L.socle_dims();
    REQUIRE(dims.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(layers[i].multiplicity == std::vector<std::size_t>{1, 1});
        CHECK(layers[i].dim == dims[i]);
    }
    try {
        socle_series(r, {triv}, 1);
        FAIL("expected IncompleteSimplesList");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::IncompleteSimplesList);
    }

    // A4 regular over GF(2): layers concatenate to the chop multiset
    auto rr = regular(kA4, f2, "A4reg");
    auto c = chop(rr, 1);
    std::vector<Representation> simples;
    for (const auto& x : c) simples.push_back(x.simple);
    auto al = socle_series(rr, simples, 1);
    std::vector<std::size_t> total(simples.size(), 0);
    for (const auto& layer : al)
        for (std::size_t i = 0; i < simples.size(); ++i) total[i] += layer.multiplicity[i];
    for (std::size_t i = 0; i < simples.size(); ++i) CHECK(total[i] == c[i].multiplicity);
}

TEST_CASE("composition series") {
    auto f3 = field_make(3, 1);
    auto r = regular(kS3, f3, "S3reg");
    auto s = composition_series(r, 1);
    CHECK(s.factors.size() == 6);
    CHECK(s.chain.size() == 7);
    for (std::size_t i = 1; i < s.chain.size(); ++i) CHECK(s.chain[i].rows() == i);
    auto inv = gfla::inverse(s.adapted_basis);
    REQUIRE(inv);
    std::size_t off = 0;
    for (std::size_t k = 0; k < s.factors.size(); ++k) {
        for (std::size_t g = 0; g < r.ngens(); ++g) {
            FqMatrix y = s.adapted_basis * r.gens[g] * *inv;
            CHECK(y.block(off, off + 1, off, off + 1) == s.factors[k].gens[g]);
            CHECK(y.block(off, off + 1, off + 1, 6).is_zero());
        }
        ++off;
    }
    std::set<std::size_t> classes(s.factor_class.begin(), s.factor_class.end());
    CHECK(classes.size() == 2);

    oracle::Lattice L(f3, r.gens);
    for (const auto& c : s.chain) CHECK(in_lattice(L, span_set(L, c)));
}

TEST_CASE("check_generation") {
    auto f3 = field_make(3, 1);
    auto r = regular(kS3, f3, "S3reg");
    auto s = composition_series(r, 1);
    auto g = check_generation(s, {r.gens[0] * r.gens[1], r.gens[1] * r.gens[1] * r.gens[0]});
    CHECK(g.preserved);
    CHECK(g.diag_isos_consistent);
    FqMatrix bad(f3, 6, 6);
    bad.set(0, 1, 1);
    bad.set(1, 0, 1);
    for (std::size_t i = 2; i < 6; ++i) bad.set(i, i, 1);
    // bad swaps two coordinates; at least one chain space moves unless it happens to be stable
    auto gb = check_generation(s, {bad});
    bool stable = true;
    for (const auto& c : s.chain) stable = stable && gfla::rank(vstack(c, c * bad)) == c.rows();
    CHECK(gb.preserved == stable);
    CHECK_THROWS_AS(check_generation(s, {FqMatrix::identity(f3, 5)}), Error);

    // subalgebra of the GF(4) group algebra of C3 generated by g + g^2
    auto f4 = field_make(2, 2);
    auto reg = regular(kC3, f4, "C3reg");
    FqMatrix gg = reg.gens[0];
    auto sub = Representation(f4, 3, {gg + gg * gg}, "sub");
    auto ser = composition_series(sub, 1);
    auto v = check_generation(ser, {gg});

    oracle::Lattice L(f4, {gg});
    bool brute_preserved = true;
    for (const auto& c : ser.chain) brute_preserved = brute_preserved && in_lattice(L, span_set(L, c));
    CHECK(v.preserved == brute_preserved);
    if (brute_preserved) {
        // g acts on each 1-dim factor by a scalar; isomorphic subalgebra factors must carry equal scalars
        auto inv = gfla::inverse(ser.adapted_basis);
        FqMatrix y = ser.adapted_basis * gg * *inv;
        bool consistent = true;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                if (ser.factor_class[i] == ser.factor_class[j] && y.at(i, i) != y.at(j, j)) consistent = false;
        CHECK(v.diag_isos_consistent == consistent);
    }
    CHECK_FALSE((v.preserved && v.diag_isos_consistent));
    CHECK(check_generation(composition_series(reg, 1), {gg * gg}).preserved);
}

TEST_CASE("peakwords") {
    auto f2 = field_make(2, 1);
    auto c = chop(regular(kA4, f2, "A4reg"), 1);
    std::vector<Representation> simples;
    for (const auto& x : c) simples.push_back(x.simple);
    REQUIRE(simples.size() == 2);
    auto pw = peakwords(simples, 1);
    for (std::size_t i = 0; i < simples.size(); ++i) {
        std::size_t e = hom(simples[i], simples[i]).size();
        for (std::size_t j = 0; j < simples.size(); ++j) {
            FqMatrix m = gfla::poly_eval(pw[i].factor, pw[i].word.eval(simples[j]));
            std::size_t nullity = simples[j].dim - gfla::rank(m);
            CHECK(nullity == (i == j ? e : 0));
        }
    }
}
