#pragma once

// Slow, independent reference code for tests. Nothing here calls into the
// library's linear algebra; only Field arithmetic is shared.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "modat/gfla/field.hpp"
#include "modat/gfla/matrix.hpp"

namespace oracle {

using Perm = std::vector<std::uint32_t>;

// p then q
inline Perm compose(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
}

inline std::vector<Perm> closure(const std::vector<Perm>& gens) {
    Perm id(gens[0].size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = std::uint32_t(i);
    std::set<Perm> seen{id};
    std::vector<Perm> todo{id};
    while (!todo.empty()) {
        Perm x = todo.back();
        todo.pop_back();
        for (const auto& g : gens) {
            Perm y = compose(x, g);
            if (seen.insert(y).second) todo.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

inline std::size_t perm_order(const Perm& p) {
    Perm x = p;
    std::size_t n = 1;
    for (;;) {
        bool id = true;
        for (std::size_t i = 0; i < x.size(); ++i) id = id && x[i] == i;
        if (id) return n;
        x = compose(x, p);
        ++n;
    }
}

// right-regular action matrices: e_x -> e_{x g}
inline std::vector<modat::gfla::FqMatrix> regular_matrices(const std::vector<Perm>& gens, modat::gfla::FieldPtr f) {
    auto els = closure(gens);
    std::map<Perm, std::size_t> idx;
    for (std::size_t i = 0; i < els.size(); ++i) idx[els[i]] = i;
    std::vector<modat::gfla::FqMatrix> out;
    for (const auto& g : gens) {
        modat::gfla::FqMatrix m(f, els.size(), els.size());
        for (std::size_t i = 0; i < els.size(); ++i) m.set(i, idx[compose(els[i], g)], 1);
        out.push_back(std::move(m));
    }
    return out;
}

inline modat::gfla::FqMatrix perm_matrix(const Perm& p, modat::gfla::FieldPtr f) {
    modat::gfla::FqMatrix m(f, p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m.set(i, p[i], 1);
    return m;
}

// Every vector of F^n as an integer; submodules as sorted member lists.
class Lattice {
public:
    using Sub = std::vector<std::uint32_t>;

    Lattice(modat::gfla::FieldPtr f, std::vector<modat::gfla::FqMatrix> gens)
        : f_(std::move(f)), gens_(std::move(gens)), n_(gens_.at(0).rows()) {
        total_ = 1;
        for (std::size_t i = 0; i < n_; ++i) total_ *= f_->q();
        img_.resize(gens_.size(), std::vector<std::uint32_t>(total_));
        for (std::size_t g = 0; g < gens_.size(); ++g)
            for (std::uint32_t v = 0; v < total_; ++v) img_[g][v] = act(v, gens_[g]);
        build();
    }

    std::size_t size() const { return subs_.size(); }
    const std::vector<Sub>& subs() const { return subs_; }
    std::uint32_t total() const { return total_; }

    std::vector<std::uint32_t> digits(std::uint32_t v) const {
        std::vector<std::uint32_t> d(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            d[i] = v % f_->q();
            v /= f_->q();
        }
        return d;
    }
    std::uint32_t encode(const std::vector<std::uint32_t>& d) const {
        std::uint32_t v = 0;
        for (std::size_t i = n_; i-- > 0;) v = v * f_->q() + d[i];
        return v;
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        auto x = digits(a), y = digits(b);
        for (std::size_t i = 0; i < n_; ++i) x[i] = f_->add(x[i], y[i]);
        return encode(x);
    }
    std::uint32_t smul(std::uint32_t c, std::uint32_t a) const {
        auto x = digits(a);
        for (auto& e : x) e = f_->mul(c, e);
        return encode(x);
    }
    std::uint32_t image(std::size_t g, std::uint32_t v) const { return img_[g][v]; }

    std::size_t dim_of(const Sub& s) const {
        std::size_t d = 0, k = s.size();
        while (k > 1) {
            k /= f_->q();
            ++d;
        }
        return d;
    }

    // smallest submodule containing s and v
    Sub close(const Sub& s, std::uint32_t v) const {
        std::vector<char> in(total_, 0);
        std::vector<std::uint32_t> members;
        for (auto x : s) {
            in[x] = 1;
            members.push_back(x);
        }
        std::vector<std::uint32_t> todo{v};
        while (!todo.empty()) {
            std::uint32_t x = todo.back();
            todo.pop_back();
            if (in[x]) continue;
            // add the whole coset family x + members and its images
            std::vector<std::uint32_t> fresh;
            std::size_t m = members.size();
            for (std::uint32_t c = 1; c < f_->q(); ++c) {
                std::uint32_t cx = smul(c, x);
                for (std::size_t i = 0; i < m; ++i) {
                    std::uint32_t y = add(cx, members[i]);
                    if (!in[y]) {
                        in[y] = 1;
                        fresh.push_back(y);
                    }
                }
            }
            for (auto y : fresh) members.push_back(y);
            for (auto y : fresh)
                for (std::size_t g = 0; g < gens_.size(); ++g)
                    if (!in[img_[g][y]]) todo.push_back(img_[g][y]);
        }
        std::sort(members.begin(), members.end());
        return members;
    }

    // composition length along any maximal chain
    std::size_t length() const {
        std::map<Sub, std::size_t> memo;
        return chain_len(subs_.front(), memo);
    }

    // socle layer dims via minimal covers
    std::vector<std::size_t> socle_dims() const {
        std::vector<std::size_t> out;
        Sub cur = subs_.front();
        while (cur.size() < total_) {
            Sub next = cur;
            for (const auto& s : subs_) {
                if (!contains(s, cur) || s.size() == cur.size()) continue;
                bool minimal = true;
                for (const auto& t : subs_)
                    if (t.size() > cur.size() && t.size() < s.size() && contains(t, cur) && contains(s, t)) {
                        minimal = false;
                        break;
                    }
                if (minimal) next = join(next, s);
            }
            out.push_back(dim_of(next) - dim_of(cur));
            cur = next;
        }
        return out;
    }

    // scalars by which the generators act on the 1-dim factors of a maximal chain
    std::vector<std::vector<std::uint32_t>> linear_factors() const {
        std::vector<std::vector<std::uint32_t>> out;
        Sub cur = subs_.front();
        while (cur.size() < total_) {
            const Sub* best = nullptr;
            for (const auto& s : subs_)
                if (contains(s, cur) && s.size() > cur.size() && (!best || s.size() < best->size())) best = &s;
            if (best->size() != cur.size() * f_->q()) return {};
            std::uint32_t w = 0;
            for (auto x : *best)
                if (!std::binary_search(cur.begin(), cur.end(), x)) {
                    w = x;
                    break;
                }
            std::vector<std::uint32_t> sc;
            for (std::size_t g = 0; g < gens_.size(); ++g)
                for (std::uint32_t l = 1; l < f_->q(); ++l) {
                    std::uint32_t d = add(img_[g][w], smul(f_->neg(l), w));
                    if (std::binary_search(cur.begin(), cur.end(), d)) {
                        sc.push_back(l);
                        break;
                    }
                }
            out.push_back(sc);
            cur = *best;
        }
        return out;
    }

    static bool contains(const Sub& big, const Sub& small) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
    }
    Sub join(const Sub& a, const Sub& b) const {
        Sub s = a;
        for (auto x : b)
            if (!std::binary_search(s.begin(), s.end(), x)) s = close(s, x);
        return s;
    }

private:
    std::uint32_t act(std::uint32_t v, const modat::gfla::FqMatrix& g) const {
        auto d = digits(v);
        std::vector<std::uint32_t> r(n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            if (d[i])
                for (std::size_t j = 0; j < n_; ++j) r[j] = f_->add(r[j], f_->mul(d[i], g.at(i, j)));
        return encode(r);
    }

    void build() {
        std::set<Sub> cyc;
        Sub zero{0};
        for (std::uint32_t v = 1; v < total_; ++v) cyc.insert(close(zero, v));
        std::set<Sub> seen{zero};
        std::vector<Sub> todo{zero};
        while (!todo.empty()) {
            Sub s = todo.back();
            todo.pop_back();
            for (const auto& c : cyc) {
                if (contains(s, c)) continue;
                Sub t = join(s, c);
                if (seen.insert(t).second) todo.push_back(t);
            }
        }
        subs_.assign(seen.begin(), seen.end());
        std::stable_sort(subs_.begin(), subs_.end(), [](const Sub& a, const Sub& b) { return a.size() < b.size(); });
    }

    std::size_t chain_len(const Sub& s, std::map<Sub, std::size_t>& memo) const {
        if (s.size() == total_) return 0;
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;
        std::size_t best = 0;
        for (const auto& t : subs_)
            if (t.size() > s.size() && contains(t, s)) best = std::max(best, 1 + chain_len(t, memo));
        memo[s] = best;
        return best;
    }

    modat::gfla::FieldPtr f_;
    std::vector<modat::gfla::FqMatrix> gens_;
    std::size_t n_;
    std::uint32_t total_ = 1;
    std::vector<std::vector<std::uint32_t>> img_;
    std::vector<Sub> subs_;
};

}  // namespace oracle
