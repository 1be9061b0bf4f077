#include <algorithm>
#include <numeric>

#include "modat/ctab/char_table.hpp"
#include "modat/error.hpp"

namespace modat::ctab {

namespace {

std::uint64_t exponent(const grp::ClassData& cd) {
    std::uint64_t e = 1;
    for (auto o : cd.orders) e = std::lcm<std::uint64_t>(e, o);
    return e;
}

std::vector<Character> characters_of(const std::vector<rep::ChopFactor>& parts, const grp::PermGroup& g,
                                     const std::vector<std::size_t>& classes, const grp::ClassData& cd,
                                     CharKind kind, std::vector<rep::Representation>* simples) {
    struct Item {
        Character ch;
        rep::Representation r;
    };
    std::vector<Item> items;
    for (const auto& f : parts) {
        Item it;
        it.ch.kind = kind;
        for (std::size_t c : classes) it.ch.values.push_back(cyclo::brauer_char_value(f.simple, g.word(cd.reps[c])));
        it.r = f.simple;
        items.push_back(std::move(it));
    }
    auto is_trivial = [](const Character& c) {
        return std::all_of(c.values.begin(), c.values.end(), [](const Cyclotomic& v) { return v == Cyclotomic(1); });
    };
    std::stable_sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
        bool ta = is_trivial(a.ch), tb = is_trivial(b.ch);
        if (ta != tb) return ta;
        if (a.r.dim != b.r.dim) return a.r.dim < b.r.dim;
        return a.ch.values < b.ch.values;
    });
    std::vector<Character> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        items[i].ch.name = (kind == CharKind::Ordinary ? "chi" : "phi") + std::to_string(i + 1);
        out.push_back(items[i].ch);
        if (simples) simples->push_back(items[i].r);
    }
    return out;
}

}  // namespace

CharTable ordinary_table(const grp::PermGroup& g, const grp::ClassData& cd, std::uint64_t seed) {
    std::uint64_t e = exponent(cd);
    std::uint64_t r = e + 1;
    while (!gfla::is_prime(r)) r += e;
    if (r >= gfla::kMaxFieldOrder) fail(Errc::FieldTooLarge, "no small prime = 1 mod " + std::to_string(e));
    auto field = gfla::field_make(std::uint32_t(r), 1);
    auto parts = rep::chop(grp::regular_rep(g, field), seed);
    std::vector<std::size_t> all(cd.count());
    std::iota(all.begin(), all.end(), 0);
    auto chars = characters_of(parts, g, all, cd, CharKind::Ordinary, nullptr);
    if (chars.size() != cd.count())
        fail(Errc::Undecided, "found " + std::to_string(chars.size()) + " characters for " + std::to_string(cd.count()) +
                                  " classes");
    CharTable t = table_from_group(g, cd, std::move(chars));
    t.p = 0;
    for (auto& c : t.classes) c.p_regular = true;
    return t;
}

BrauerTable brauer_table(const grp::PermGroup& g, const grp::ClassData& cd, std::uint64_t seed) {
    std::uint32_t p = cd.p;
    if (p == 0) fail(Errc::MissingPrime, "class data carries no prime");
    std::uint64_t e = exponent(cd);
    while (e % p == 0) e /= p;
    std::uint32_t m = e == 1 ? 1 : gfla::order_mod(p, e);
    auto field = gfla::field_make(p, m);
    auto parts = rep::chop(grp::regular_rep(g, field), seed);
    BrauerTable bt;
    bt.chars = characters_of(parts, g, cd.regular_classes(), cd, CharKind::Brauer, &bt.simples);
    if (bt.chars.size() != cd.regular_classes().size())
        fail(Errc::Undecided, "found " + std::to_string(bt.chars.size()) + " Brauer characters for " +
                                  std::to_string(cd.regular_classes().size()) + " p-regular classes");
    return bt;
}

}  // namespace modat::ctab
