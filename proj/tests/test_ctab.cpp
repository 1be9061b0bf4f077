#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "modat/ctab/char_table.hpp"
#include "modat/error.hpp"

using namespace modat;
using namespace modat::ctab;
using cyclo::parse_value;
using grp::parse_cycles;
using grp::PermGroup;

namespace {

PermGroup S3() { return grp::enumerate({parse_cycles("(1,2,3)"), parse_cycles("(1,2)", 3)}); }
PermGroup S4() { return grp::enumerate({parse_cycles("(1,2,3,4)"), parse_cycles("(1,2)", 4)}); }
PermGroup A4() { return grp::enumerate({parse_cycles("(1,2,3)", 4), parse_cycles("(1,2)(3,4)", 4)}); }
PermGroup A5() { return grp::enumerate({parse_cycles("(1,2,3,4,5)"), parse_cycles("(1,2,3)", 5)}); }

Character ch(std::vector<std::string> v, CharKind k = CharKind::Ordinary) {
    Character c;
    c.kind = k;
    for (auto& s : v) c.values.push_back(parse_value(s));
    return c;
}

// S3 by hand: classes 1A (1), 2A (3), 3A (2)
CharTable s3_by_hand() {
    CharTable t;
    t.order = 6;
    t.classes = {{1, 1, "1A", true}, {3, 2, "2A", true}, {2, 3, "3A", true}};
    t.chars = {ch({"1", "1", "1"}), ch({"1", "-1", "1"}), ch({"2", "0", "-1"})};
    return t;
}

std::vector<Cyclotomic> degrees(const CharTable& t) {
    std::vector<Cyclotomic> d;
    for (auto& c : t.chars) d.push_back(c.degree());
    return d;
}

// decomposition matrix of the computed ordinary table into the computed Brauer table
ZMatrix decomposition(const CharTable& t, const BrauerTable& bt) {
    BasicSet bs{bt.chars, BasicSet::Role::BrauerSide};
    ZMatrix d;
    for (auto& c : t.chars) d.push_back(decompose_basic(restrict_p_regular(t, c), bs));
    return d;
}

// blocks as connected components of "shares a Brauer constituent"
std::vector<std::vector<std::size_t>> linkage(const ZMatrix& d) {
    std::size_t n = d.size();
    std::vector<std::size_t> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) { return comp[x] == x ? x : comp[x] = root(comp[x]); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < d[i].size(); ++k)
                if (d[i][k] != 0 && d[j][k] != 0) comp[root(i)] = root(j);
    std::map<std::size_t, std::vector<std::size_t>> m;
    for (std::size_t i = 0; i < n; ++i) m[root(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [r, v] : m) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

// equal after permuting rows within equal labels and permuting columns
bool same_up_to_perm(const ZMatrix& a, const ZMatrix& b, const std::vector<Integer>& la, const std::vector<Integer>& lb) {
    if (a.size() != b.size() || a.empty() || a[0].size() != b[0].size()) return false;
    std::size_t nc = a[0].size();
    std::vector<std::size_t> cp(nc);
    std::iota(cp.begin(), cp.end(), 0);
    do {
        std::vector<bool> used(b.size());
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
            bool found = false;
            for (std::size_t j = 0; j < b.size() && !found; ++j) {
                if (used[j] || la[i] != lb[j]) continue;
                bool eq = true;
                for (std::size_t k = 0; k < nc; ++k) eq = eq && a[i][k] == b[j][cp[k]];
                if (eq) used[j] = found = true;
            }
            ok = found;
        }
        if (ok) return true;
    } while (std::next_permutation(cp.begin(), cp.end()));
    return false;
}

std::vector<Integer> int_degrees(const CharTable& t) {
    std::vector<Integer> d;
    for (auto& c : t.chars) d.push_back(c.degree().integer());
    return d;
}

}  // namespace

TEST_CASE("scalar products, restriction and products on S3") {
    auto t = s3_by_hand();
    t.validate();
    CHECK(rows_orthogonal(t));
    CHECK(columns_orthogonal(t));
    CHECK(scalar(t, t.chars[2], t.chars[2]) == 1);
    CHECK(product(t.chars[2], t.chars[0]).values == t.chars[2].values);
    // 2 x 2 = 1 + sign + 2
    auto sq = expand(t, product(t.chars[2], t.chars[2]));
    CHECK(sq == std::vector<Rational>{1, 1, 1});

    CHECK_THROWS_AS(restrict_p_regular(t, t.chars[2]), Error);
    try {
        restrict_p_regular(t, t.chars[2]);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MissingPrime);
    }
    auto t3 = with_prime(t, 3);
    auto r = restrict_p_regular(t3, t3.chars[2]);
    CHECK(r.values == std::vector<Cyclotomic>{2, 0});
    CHECK(restrict_p_regular(t3, t3.chars[0]).values == std::vector<Cyclotomic>{1, 1});
    auto t5 = with_prime(t, 5);
    CHECK(restrict_p_regular(t5, t5.chars[2]).values == t.chars[2].values);
}

TEST_CASE("induction from C2 to S3") {
    auto t = s3_by_hand();
    CharTable c2;
    c2.order = 2;
    c2.classes = {{1, 1, "1A", true}, {1, 2, "2A", true}};
    c2.chars = {ch({"1", "1"}), ch({"1", "-1"})};
    auto ind = induce(c2, t, {0, 1}, c2.chars[1]);
    CHECK(ind.values == std::vector<Cyclotomic>{3, -1, 0});
    CHECK(expand(t, ind) == std::vector<Rational>{0, 1, 1});
    // Frobenius reciprocity against restriction
    for (auto& chi : t.chars) {
        Character res = ch({"0", "0"});
        res.values = {chi.values[0], chi.values[1]};
        CHECK(scalar(t, ind, chi) == scalar(c2, c2.chars[1], res));
    }
    CHECK_THROWS_AS(induce(c2, t, {0}, c2.chars[1]), Error);
    CHECK_THROWS_AS(induce(c2, t, {0, 2}, c2.chars[1]), Error);  // 2A into an order-3 class
}

TEST_CASE("computed ordinary tables") {
    auto s3 = S3();
    auto t = ordinary_table(s3, grp::conjugacy_classes(s3, 0));
    CHECK(t.chars.size() == 3);
    // same table as by hand, class order 1A 2A 3A in both
    auto hand = s3_by_hand();
    for (std::size_t i = 0; i < 3; ++i) CHECK(t.chars[i].values == hand.chars[i].values);

    for (auto g : {A4(), S4(), A5()}) {
        auto cd = grp::conjugacy_classes(g, 0);
        auto tab = ordinary_table(g, cd);
        tab.validate();
        CHECK(tab.chars.size() == cd.count());
        CHECK(rows_orthogonal(tab));
        CHECK(columns_orthogonal(tab));
        Integer s = 0;
        for (auto& c : tab.chars) s += c.degree().integer() * c.degree().integer();
        CHECK(s == Integer(g.order()));
        // the natural permutation character is a nonnegative integral combination
        Character pi;
        for (std::size_t c = 0; c < cd.count(); ++c) {
            long fix = 0;
            const auto& e = g.element(cd.reps[c]);
            for (std::size_t i = 0; i < e.size(); ++i) fix += e[i] == i;
            pi.values.push_back(fix);
        }
        auto co = expand(tab, pi);
        CHECK(co[0] == 1);  // transitive
        for (auto& x : co) CHECK((x >= 0 && denominator(x) == 1));
    }
    auto a5 = ordinary_table(A5(), grp::conjugacy_classes(A5(), 0));
    std::vector<Cyclotomic> want{1, 3, 3, 4, 5};
    CHECK(degrees(a5) == want);
    auto g = A5();
    auto cd = grp::conjugacy_classes(g, 0);
    // golden ratio values on the 5-elements of the degree-3 characters
    bool seen = false;
    for (std::size_t c = 0; c < cd.count(); ++c)
        if (cd.orders[c] == 5) seen = seen || a5.chars[1].values[c] == parse_value("-b5") || a5.chars[1].values[c] == parse_value("-b5*");
    CHECK(seen);
}

TEST_CASE("modular reduction is a ring map") {
    std::mt19937_64 rng(3);
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{2, 15}, {3, 12}, {2, 20}, {5, 30}, {3, 7}}) {
        ModularReduction red(p, n);
        const auto& F = *red.field();
        auto rnd = [&] {
            std::vector<Rational> c(n);
            for (auto& x : c) x = long(rng() % 7) - 3;
            return Cyclotomic::from_exponents(n, c);
        };
        for (int k = 0; k < 20; ++k) {
            auto x = rnd(), y = rnd();
            CHECK(red(x * y) == F.mul(red(x), red(y)));
            CHECK(red(x + y) == F.add(red(x), red(y)));
        }
        CHECK(red(Cyclotomic(p)) == 0);
        CHECK(F.pow(red(Cyclotomic::zeta(n)), n) == 1);
    }
}

TEST_CASE("blocks") {
    auto hand = s3_by_hand();
    auto b = blocks(hand, 3);
    REQUIRE(b.blocks.size() == 1);
    CHECK(b.defect[0] == 1);
    CHECK(b.k(0) == 3);
    auto b5 = blocks(hand, 5);
    CHECK(b5.blocks.size() == 3);
    for (auto d : b5.defect) CHECK(d == 0);
    auto h = heights(b, hand);
    CHECK(h == std::vector<int>{0, 0, 0});

    // regular character projects to itself in the only block
    auto t3 = with_prime(hand, 3);
    Character reg = ch({"6", "0", "0"});
    CHECK(block_project(t3, b, 0, reg).values == reg.values);
    CHECK(block_project(t3, b, 0, hand.chars[2]).values == hand.chars[2].values);

    // against linkage through the computed decomposition matrix
    struct Case {
        PermGroup g;
        std::uint32_t p;
    };
    for (auto& [g, p] : std::vector<Case>{{A5(), 2}, {A5(), 3}, {A5(), 5}, {S4(), 2}, {S4(), 3}, {A4(), 2}, {A4(), 3}}) {
        auto cd = grp::conjugacy_classes(g, p);
        auto t = with_prime(ordinary_table(g, grp::conjugacy_classes(g, 0)), p);
        auto bt = brauer_table(g, cd);
        auto bl = blocks(t, p);
        auto parts = bl.blocks;
        std::sort(parts.begin(), parts.end());
        CHECK(parts == linkage(decomposition(t, bt)));
        // total count and defect-zero singletons
        std::size_t k = 0;
        for (std::size_t i = 0; i < bl.blocks.size(); ++i) {
            k += bl.k(i);
            if (bl.defect[i] == 0) CHECK(bl.k(i) == 1);
            CHECK(bl.defect[i] <= nu(t.order, p));
        }
        CHECK(k == t.chars.size());
    }

    auto a5 = with_prime(ordinary_table(A5(), grp::conjugacy_classes(A5(), 0)), 2);
    auto ba = blocks(a5, 2);
    REQUIRE(ba.blocks.size() == 2);
    CHECK(ba.blocks[0] == std::vector<std::size_t>{0, 1, 2, 4});  // 1, 3a, 3b, 5
    CHECK(ba.defect[0] == 2);
    CHECK(ba.blocks[1] == std::vector<std::size_t>{3});  // 4
    CHECK(ba.defect[1] == 0);
    CHECK(heights(ba, a5) == std::vector<int>{0, 0, 0, 0, 0});
}

TEST_CASE("heights from degrees") {
    // degree-only data: HN, the non-principal 2-block of defect 4
    CharTable t;
    t.order = Integer("273030912000000");
    t.classes = {{1, 1, "1A", true}};
    for (auto d : {"214016", "1361920", "1361920", "1361920", "1575936", "2985984", "3200000", "4561920"})
        t.chars.push_back(ch({d}));
    CHECK(nu(t.order, 2) == 14);
    auto b = blocks_from_partition(t, 2, {{0, 1, 2, 3, 4, 5, 6, 7}});
    CHECK(b.defect[0] == 4);
    auto h = heights(b, t);
    CHECK(h[0] == 0);  // 214016 = 2^10 * 209
    CHECK(h[1] == 1);  // 1361920 = 2^11 * 665
    CHECK(h[5] == 2);  // 2985984 = 2^12 * 729
    CHECK(std::count(h.begin(), h.end(), 0) == 4);
    CHECK_THROWS_AS(blocks_from_partition(t, 2, {{0, 1}, {1}}), Error);
}

TEST_CASE("decompose into a basic set") {
    // Brauer-side characters as coordinate vectors over the irreducible Brauer characters
    BasicSet bs{{ch({"1", "0", "0"}), ch({"0", "1", "0"}), ch({"0", "0", "1"})}, BasicSet::Role::BrauerSide};
    auto c37 = ch({"1", "1", "0"});
    CHECK(decompose_basic(c37, bs) == std::vector<Integer>{1, 1, 0});
    CHECK(decompose_basic(bs.members[1], bs) == std::vector<Integer>{0, 1, 0});
    CHECK(decompose_basic(scale(bs.members[0], 2), bs) == std::vector<Integer>{2, 0, 0});

    BasicSet skew{{ch({"2", "0"}), ch({"0", "1"})}, BasicSet::Role::BrauerSide};
    try {
        decompose_basic(ch({"1", "0"}), skew);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonIntegral);
    }
    BasicSet thin{{ch({"1", "1", "0"})}, BasicSet::Role::BrauerSide};
    try {
        decompose_basic(ch({"1", "0", "0"}), thin);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInSpan);
    }
    BasicSet dep{{ch({"1", "0"}), ch({"2", "0"})}, BasicSet::Role::BrauerSide};
    CHECK_THROWS_AS(decompose_basic(ch({"1", "0"}), dep), Error);

    // irrational values: A5 mod 2, 3a' over the irreducible Brauer characters
    auto g = A5();
    auto t = with_prime(ordinary_table(g, grp::conjugacy_classes(g, 0)), 2);
    auto bt = brauer_table(g, grp::conjugacy_classes(g, 2));
    auto d = decomposition(t, bt);
    // Brauer degrees 1, 2, 2, 4: 3a' = 1 + 2a, 5' = 1 + 2a + 2b
    std::vector<Cyclotomic> bdeg;
    for (auto& c : bt.chars) bdeg.push_back(c.degree());
    CHECK(bdeg == std::vector<Cyclotomic>{1, 2, 2, 4});
    for (std::size_t i = 0; i < d.size(); ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < d[i].size(); ++j) {
            CHECK(d[i][j] >= 0);
            s += d[i][j] * bdeg[j].integer();
        }
        CHECK(s == t.chars[i].degree().integer());
    }
}

TEST_CASE("index-2 extensions") {
    using T = OrdinaryFusion::Type;
    // C3 -> S3 mod 2: Brauer characters 1, w, w^2 with w and w^2 swapped
    ZMatrix dc3 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::vector<OrdinaryFusion> fc3 = {{T::Extension, 0, 0, 1}, {T::Extension, 0, 0, -1}, {T::Induced, 1, 2, 1}};
    auto r = clifford_index2(dc3, {0, 2, 1}, fc3, 2);
    CHECK(r.l == 2);
    CHECK(r.d == ZMatrix{{1, 0}, {1, 0}, {0, 1}});
    {
        auto g = S3();
        auto t = with_prime(ordinary_table(g, grp::conjugacy_classes(g, 0)), 2);
        auto d = decomposition(t, brauer_table(g, grp::conjugacy_classes(g, 2)));
        CHECK(same_up_to_perm(r.d, d, {1, 1, 2}, int_degrees(t)));
    }

    // A4 -> S4 mod 3: both Brauer characters invariant, 1a and 1b fuse
    ZMatrix da4 = {{1, 0}, {1, 0}, {1, 0}, {0, 1}};
    std::vector<OrdinaryFusion> fa4 = {{T::Extension, 0, 0, 1}, {T::Extension, 0, 0, -1}, {T::Induced, 1, 2, 1},
                                       {T::Extension, 3, 0, 1}, {T::Extension, 3, 0, -1}};
    auto r3 = clifford_index2(da4, {0, 1}, fa4, 3, nullptr, true);
    CHECK(r3.l == 4);
    CHECK(std::all_of(r3.row_determined.begin(), r3.row_determined.end(), [](bool b) { return b; }));
    {
        auto g = S4();
        auto t = with_prime(ordinary_table(g, grp::conjugacy_classes(g, 0)), 3);
        auto bt = brauer_table(g, grp::conjugacy_classes(g, 3));
        CHECK(bt.chars.size() == 4);
        auto d = decomposition(t, bt);
        CHECK(same_up_to_perm(r3.d, d, {1, 1, 2, 3, 3}, int_degrees(t)));
    }
    auto r3u = clifford_index2(da4, {0, 1}, fa4, 3);
    CHECK_FALSE(r3u.row_determined[0]);
    CHECK(r3u.row_determined[2]);

    // identity action at p = 2 keeps l
    auto same = clifford_index2(dc3, {0, 1, 2}, {{T::Extension, 0, 0, 1}}, 2);
    CHECK(same.l == 3);

    try {
        clifford_index2(dc3, {1, 2, 0}, fc3, 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ActionNotInvolution);
    }
    try {
        std::vector<Integer> deg{1, 1, 2};
        clifford_index2(dc3, {0, 2, 1}, fc3, 2, &deg);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FusionDegreeMismatch);
    }
    try {
        clifford_index2(dc3, {0, 2, 1}, {{T::Extension, 1, 0, 1}}, 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FusionDegreeMismatch);
    }
}
