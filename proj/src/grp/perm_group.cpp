#include "modat/grp/perm_group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>

#include "modat/error.hpp"

namespace modat::grp {

Perm perm_identity(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

Perm perm_mul(const Perm& p, const Perm& q) {
    if (p.size() != q.size()) fail(Errc::ShapeMismatch, "permutation degrees differ");
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = std::uint32_t(i);
    return r;
}

Perm perm_pow(const Perm& p, std::int64_t e) {
    Perm base = e < 0 ? perm_inverse(p) : p;
    std::uint64_t k = e < 0 ? std::uint64_t(-e) : std::uint64_t(e);
    Perm r = perm_identity(p.size());
    while (k) {
        if (k & 1) r = perm_mul(r, base);
        base = perm_mul(base, base);
        k >>= 1;
    }
    return r;
}

bool perm_is_identity(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

std::size_t perm_order(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    std::size_t o = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        o = std::lcm(o, len);
    }
    return o;
}

Perm parse_cycles(const std::string& s, std::size_t n) {
    std::vector<std::vector<std::uint32_t>> cycles;
    std::size_t maxpt = 0, i = 0;
    auto bad = [&](const std::string& why) { fail(Errc::Format, "bad permutation '" + s + "': " + why); };
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        if (s[i] != '(') bad("expected '('");
        ++i;
        std::vector<std::uint32_t> cyc;
        for (;;) {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            if (i < s.size() && s[i] == ')') {
                ++i;
                break;
            }
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) bad("expected a point");
            unsigned long v = std::stoul(s.substr(i, j - i));
            if (v == 0) bad("points are 1-based");
            cyc.push_back(std::uint32_t(v - 1));
            maxpt = std::max<std::size_t>(maxpt, v);
            i = j;
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            if (i < s.size() && s[i] == ',') ++i;
        }
        cycles.push_back(std::move(cyc));
    }
    if (n == 0) n = std::max<std::size_t>(maxpt, 1);
    if (maxpt > n) bad("point beyond degree " + std::to_string(n));
    Perm p = perm_identity(n);
    std::vector<bool> used(n, false);
    for (const auto& c : cycles)
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (used[c[k]]) bad("repeated point");
            used[c[k]] = true;
            p[c[k]] = c[(k + 1) % c.size()];
        }
    return p;
}

std::string format_cycles(const Perm& p) {
    std::ostringstream s;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) continue;
        s << '(';
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            if (j != i) s << ',';
            s << j + 1;
        }
        s << ')';
    }
    std::string out = s.str();
    return out.empty() ? "()" : out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) h = (h ^ x) * 1099511628211ull;
    return h;
}

std::optional<std::size_t> PermGroup::index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t PermGroup::mul(std::size_t i, std::size_t j) const { return index_.at(perm_mul(elements_[i], elements_[j])); }

std::size_t PermGroup::inverse(std::size_t i) const { return index_.at(perm_inverse(elements_[i])); }

PermGroup enumerate(std::vector<Perm> gens, std::size_t bound) {
    if (gens.empty()) fail(Errc::InvalidArgument, "a group needs at least one generator");
    std::size_t n = gens[0].size();
    for (const auto& g : gens) {
        if (g.size() != n) fail(Errc::ShapeMismatch, "generators of different degree");
        std::vector<bool> hit(n, false);
        for (auto x : g) {
            if (x >= n || hit[x]) fail(Errc::InvalidArgument, "not a permutation");
            hit[x] = true;
        }
    }
    std::vector<Perm> els{perm_identity(n)};
    std::vector<std::vector<std::uint32_t>> words{{}};
    std::unordered_map<Perm, std::size_t, PermHash> idx{{els[0], 0}};
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t g = 0; g < gens.size(); ++g) {
            Perm y = perm_mul(els[i], gens[g]);
            if (idx.count(y)) continue;
            if (els.size() >= bound) fail(Errc::GroupTooLarge, "group order exceeds " + std::to_string(bound));
            idx.emplace(y, els.size());
            auto w = words[i];
            w.push_back(std::uint32_t(g));
            els.push_back(std::move(y));
            words.push_back(std::move(w));
        }
    std::vector<std::size_t> order(els.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return els[a] < els[b]; });
    PermGroup G;
    G.degree_ = n;
    G.gens_ = std::move(gens);
    for (auto o : order) {
        G.index_.emplace(els[o], G.elements_.size());
        G.elements_.push_back(std::move(els[o]));
        G.words_.push_back(std::move(words[o]));
    }
    G.rmul_.assign(G.gens_.size(), std::vector<std::uint32_t>(G.elements_.size()));
    for (std::size_t g = 0; g < G.gens_.size(); ++g)
        for (std::size_t i = 0; i < G.elements_.size(); ++i)
            G.rmul_[g][i] = std::uint32_t(G.index_.at(perm_mul(G.elements_[i], G.gens_[g])));
    return G;
}

std::vector<std::size_t> ClassData::regular_classes() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < count(); ++c)
        if (p_regular[c]) out.push_back(c);
    return out;
}

ClassData conjugacy_classes(const PermGroup& g, std::uint32_t p) {
    const std::size_t N = g.order();
    std::vector<std::size_t> cls(N, SIZE_MAX);
    struct Raw {
        std::size_t rep, size, order;
    };
    std::vector<Raw> raw;
    std::vector<Perm> ginv;
    for (const auto& x : g.gens()) ginv.push_back(perm_inverse(x));
    for (std::size_t i = 0; i < N; ++i) {
        if (cls[i] != SIZE_MAX) continue;
        std::size_t id = raw.size();
        std::vector<std::size_t> todo{i};
        cls[i] = id;
        std::size_t size = 0;
        while (!todo.empty()) {
            std::size_t x = todo.back();
            todo.pop_back();
            ++size;
            for (std::size_t k = 0; k < ginv.size(); ++k) {
                std::size_t y = *g.index_of(perm_mul(perm_mul(ginv[k], g.element(x)), g.gens()[k]));
                if (cls[y] == SIZE_MAX) {
                    cls[y] = id;
                    todo.push_back(y);
                }
            }
        }
        raw.push_back({i, size, perm_order(g.element(i))});
    }
    std::vector<std::size_t> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return raw[a].order != raw[b].order ? raw[a].order < raw[b].order : raw[a].rep < raw[b].rep;
    });
    std::vector<std::size_t> newid(raw.size());
    for (std::size_t k = 0; k < perm.size(); ++k) newid[perm[k]] = k;
    ClassData cd;
    cd.p = p;
    std::map<std::size_t, char> letter;
    for (auto k : perm) {
        cd.reps.push_back(raw[k].rep);
        cd.sizes.push_back(raw[k].size);
        cd.orders.push_back(raw[k].order);
        char& l = letter.try_emplace(raw[k].order, 'A').first->second;
        cd.labels.push_back(std::to_string(raw[k].order) + l);
        ++l;
        cd.p_regular.push_back(p == 0 || raw[k].order % p != 0);
    }
    cd.class_of.resize(N);
    for (std::size_t i = 0; i < N; ++i) cd.class_of[i] = newid[cls[i]];
    std::size_t m = N;
    for (std::uint32_t r = 2; m > 1; ++r) {
        if (m % r) continue;
        while (m % r == 0) m /= r;
        std::vector<std::size_t> pm;
        for (auto rep : cd.reps) pm.push_back(cd.class_of[*g.index_of(perm_pow(g.element(rep), r))]);
        cd.power_maps[r] = std::move(pm);
    }
    return cd;
}

PermGroup subgroup(const PermGroup& g, const std::vector<Perm>& h_gens) {
    std::vector<Perm> gens = h_gens;
    if (gens.empty()) gens.push_back(perm_identity(g.degree()));
    for (const auto& x : gens)
        if (x.size() != g.degree() || !g.contains(x)) fail(Errc::NotSubgroup, "generator " + format_cycles(x) + " is not in the group");
    return enumerate(std::move(gens), g.order() + 1);
}

CosetAction coset_action(const PermGroup& g, const std::vector<Perm>& h_gens) {
    PermGroup h = subgroup(g, h_gens);
    const std::size_t N = g.order();
    std::vector<std::size_t> coset(N, SIZE_MAX);
    CosetAction out;
    for (std::size_t i = 0; i < N; ++i) {
        if (coset[i] != SIZE_MAX) continue;
        for (const auto& x : h.elements()) coset[*g.index_of(perm_mul(x, g.element(i)))] = out.reps.size();
        out.reps.push_back(i);
    }
    for (std::size_t k = 0; k < g.gens().size(); ++k) {
        Perm act(out.reps.size());
        for (std::size_t c = 0; c < out.reps.size(); ++c) act[c] = std::uint32_t(coset[g.right_mul(out.reps[c], k)]);
        out.gens.push_back(std::move(act));
    }
    return out;
}

DoubleCosets double_cosets(const PermGroup& g, const std::vector<Perm>& h_gens) {
    PermGroup h = subgroup(g, h_gens);
    const std::size_t N = g.order();
    std::vector<bool> seen(N, false);
    DoubleCosets out;
    for (std::size_t i = 0; i < N; ++i) {
        if (seen[i]) continue;
        std::size_t size = 0;
        for (const auto& a : h.elements()) {
            Perm ax = perm_mul(a, g.element(i));
            for (const auto& b : h.elements()) {
                std::size_t y = *g.index_of(perm_mul(ax, b));
                if (!seen[y]) {
                    seen[y] = true;
                    ++size;
                }
            }
        }
        out.reps.push_back(i);
        out.sizes.push_back(size);
    }
    return out;
}

namespace {

constexpr std::size_t kMaxPermRepEntries = std::size_t(1) << 28;

}  // namespace

rep::Representation perm_rep(const std::vector<Perm>& gens, gfla::FieldPtr field, std::string label) {
    if (gens.empty()) fail(Errc::InvalidArgument, "no generators");
    const std::size_t n = gens[0].size();
    if (n * n * field->width() > kMaxPermRepEntries) fail(Errc::TooLarge, "permutation module of degree " + std::to_string(n));
    std::vector<gfla::FqMatrix> m;
    for (const auto& p : gens) {
        if (p.size() != n) fail(Errc::ShapeMismatch, "generators of different degree");
        gfla::FqMatrix x(field, n, n);
        for (std::size_t i = 0; i < n; ++i) x.set(i, p[i], 1);
        m.push_back(std::move(x));
    }
    return rep::Representation(field, n, std::move(m), std::move(label));
}

rep::Representation perm_rep(const PermGroup& g, gfla::FieldPtr field) { return perm_rep(g.gens(), std::move(field)); }

rep::Representation regular_rep(const PermGroup& g, gfla::FieldPtr field) {
    const std::size_t N = g.order();
    if (N * N * field->width() > kMaxPermRepEntries) fail(Errc::TooLarge, "regular module of dimension " + std::to_string(N));
    std::vector<Perm> act;
    for (std::size_t k = 0; k < g.gens().size(); ++k) {
        Perm a(N);
        for (std::size_t i = 0; i < N; ++i) a[i] = std::uint32_t(g.right_mul(i, k));
        act.push_back(std::move(a));
    }
    return perm_rep(act, std::move(field), "regular");
}

gfla::FqMatrix element_matrix(const rep::Representation& r, const PermGroup& g, std::size_t element) {
    if (r.ngens() != g.gens().size()) fail(Errc::GeneratorCountMismatch, "representation and group generators differ");
    gfla::FqMatrix m = gfla::FqMatrix::identity(r.field, r.dim);
    for (auto k : g.word(element)) m = m * r.gens[k];
    return m;
}

}  // namespace modat::grp
