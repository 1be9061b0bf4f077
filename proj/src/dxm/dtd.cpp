#include <algorithm>
#include <cmath>
#include <functional>

#include "modat/dxm/dxm.hpp"
#include "modat/error.hpp"

namespace modat::dxm {

std::vector<ZMatrix> dtd_solve(const CartanInstance& inst) {
    const std::size_t l = inst.c.size();
    if (l == 0) fail(Errc::InvalidArgument, "empty Cartan matrix");
    std::vector<std::vector<long long>> c(l, std::vector<long long>(l));
    for (std::size_t i = 0; i < l; ++i) {
        if (inst.c[i].size() != l) fail(Errc::NotSquare, "Cartan matrix is not square");
        for (std::size_t j = 0; j < l; ++j) c[i][j] = inst.c[i][j].convert_to<long long>();
    }
    for (std::size_t i = 0; i < l; ++i) {
        if (c[i][i] < 1) fail(Errc::InvalidArgument, "Cartan diagonal entry below 1");
        for (std::size_t j = 0; j < l; ++j)
            if (c[i][j] != c[j][i] || c[i][j] < 0) fail(Errc::InvalidArgument, "Cartan matrix not symmetric nonnegative");
    }

    // candidate rows v with v v^T <= C entrywise, decreasing lexicographically
    std::vector<std::vector<long long>> cand;
    std::vector<long long> v(l, 0), top(l);
    for (std::size_t i = 0; i < l; ++i) top[i] = (long long)std::sqrt((double)c[i][i] + 0.5);
    std::function<void(std::size_t)> gen = [&](std::size_t i) {
        if (i == l) {
            if (std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; })) cand.push_back(v);
            return;
        }
        for (long long x = 0; x <= top[i]; ++x) {
            bool ok = x * x <= c[i][i];
            for (std::size_t j = 0; j < i && ok; ++j) ok = x * v[j] <= c[i][j];
            if (!ok) break;
            v[i] = x;
            gen(i + 1);
        }
        v[i] = 0;
    };
    gen(0);
    std::sort(cand.begin(), cand.end(), std::greater<>());
    std::vector<std::size_t> lead(cand.size());
    for (std::size_t r = 0; r < cand.size(); ++r)
        lead[r] = std::size_t(std::find_if(cand[r].begin(), cand[r].end(), [](long long x) { return x != 0; }) - cand[r].begin());

    std::vector<ZMatrix> out;
    std::vector<std::size_t> chosen;
    auto& rem = c;
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t left) {
        long long tr = 0;
        for (std::size_t i = 0; i < l; ++i) tr += rem[i][i];
        if (left == 0) {
            bool zero = true;
            for (std::size_t i = 0; i < l && zero; ++i)
                for (std::size_t j = 0; j < l && zero; ++j) zero = rem[i][j] == 0;
            if (zero) {
                ZMatrix d;
                for (auto r : chosen) d.emplace_back(cand[r].begin(), cand[r].end());
                out.push_back(std::move(d));
                if (out.size() > kMaxCandidates) fail(Errc::TooManyCandidates, "more than 10^6 solutions");
            }
            return;
        }
        if (tr < (long long)left) return;
        for (std::size_t r = start; r < cand.size(); ++r) {
            // later rows start at column lead[r] or further right: earlier columns must be complete
            bool ok = true;
            for (std::size_t i = 0; i < lead[r] && ok; ++i)
                for (std::size_t j = 0; j < l && ok; ++j) ok = rem[i][j] == 0;
            if (!ok) break;
            const auto& w = cand[r];
            for (std::size_t i = lead[r]; i < l && ok; ++i)
                if (w[i])
                    for (std::size_t j = lead[r]; j < l && ok; ++j) ok = w[i] * w[j] <= rem[i][j];
            if (!ok) continue;
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = 0; j < l; ++j) rem[i][j] -= w[i] * w[j];
            chosen.push_back(r);
            dfs(r, left - 1);
            chosen.pop_back();
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = 0; j < l; ++j) rem[i][j] += w[i] * w[j];
        }
    };
    dfs(0, inst.k);
    if (out.empty()) fail(Errc::Infeasible, "no nonnegative solution of D^T D = C with " + std::to_string(inst.k) + " rows");
    return out;
}

}  // namespace modat::dxm
