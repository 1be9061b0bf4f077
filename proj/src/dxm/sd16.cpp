#include <algorithm>

#include "modat/dxm/dxm.hpp"
#include "modat/error.hpp"

namespace modat::dxm {

namespace {

using Delta = std::array<int, 4>;

const std::array<Delta, 4> kCases = {{{1, 1, -1, -1}, {1, -1, -1, 1}, {-1, 1, -1, 1}, {1, 1, -1, 1}}};

struct Labeling {
    std::array<std::size_t, 4> chi;
    Delta delta;
    bool operator<(const Labeling& o) const { return std::tie(chi, delta) < std::tie(o.chi, o.delta); }
    bool operator==(const Labeling& o) const { return chi == o.chi && delta == o.delta; }
};

// delta1 chi1 <-> -delta4 chi4, delta2 chi2 <-> -delta3 chi3
Labeling flip(const Labeling& a) {
    return {{a.chi[3], a.chi[2], a.chi[1], a.chi[0]}, {-a.delta[3], -a.delta[2], -a.delta[1], -a.delta[0]}};
}

}  // namespace

SD16Result sd16_analyze(const SD16Instance& inst) {
    const std::size_t k = inst.degrees.size();
    if (inst.heights.size() != k) fail(Errc::ShapeMismatch, "one height per character");
    std::vector<std::size_t> h0, h1, h2;
    for (std::size_t i = 0; i < k; ++i) {
        switch (inst.heights[i]) {
            case 0: h0.push_back(i); break;
            case 1: h1.push_back(i); break;
            case 2: h2.push_back(i); break;
            default: fail(Errc::InvalidArgument, "height " + std::to_string(inst.heights[i]) + " in a block of defect 4");
        }
    }
    if (h0.size() != 4 || h1.size() != 3 || h2.size() != 1)
        fail(Errc::InvalidArgument, "expected four characters of height 0, three of height 1, one of height 2");
    const Integer star = inst.degrees[h1[0]], hat = inst.degrees[h2[0]];
    for (auto i : h1)
        if (inst.degrees[i] != star) fail(Errc::NoConsistentSigns, "height-one characters of different degrees");

    std::vector<Labeling> sols;
    auto perm = h0;
    std::sort(perm.begin(), perm.end());
    do {
        for (int m = 0; m < 16; ++m) {
            Delta d;
            for (int t = 0; t < 4; ++t) d[t] = (m >> (3 - t)) & 1 ? -1 : 1;
            auto deg = [&](int t) { return Integer(d[t]) * inst.degrees[perm[t]]; };
            if (deg(0) + deg(1) == star && -deg(2) - deg(3) == star && deg(1) + deg(3) == hat && -deg(0) - deg(2) == hat)
                sols.push_back({{perm[0], perm[1], perm[2], perm[3]}, d});
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (sols.empty()) fail(Errc::NoConsistentSigns, "no labeling satisfies the degree relations");

    // one representative per symmetry orbit, restricted to the admissible sign cases
    std::vector<Labeling> reps;
    for (const auto& s : sols) {
        Labeling best{};
        bool any = false;
        for (const auto& c : {s, flip(s)})
            if (std::find(kCases.begin(), kCases.end(), c.delta) != kCases.end() && (!any || c < best)) {
                best = c;
                any = true;
            }
        if (any && std::find(reps.begin(), reps.end(), best) == reps.end()) reps.push_back(best);
    }
    if (reps.empty()) fail(Errc::NoConsistentSigns, "no labeling falls in an admissible sign case");
    if (reps.size() > 1) fail(Errc::AmbiguousCase, std::to_string(reps.size()) + " labelings are consistent with the degrees");

    const auto& L = reps[0];
    const auto& d = L.delta;
    SD16Result r;
    r.chi = L.chi;
    r.delta = d;
    r.star = h1;
    r.hat = h2[0];

    // coordinates over (chi_2', chi*', chi^')
    std::vector<std::array<int, 3>> x(k);
    x[L.chi[0]] = {-d[0] * d[1], d[0], 0};
    x[L.chi[1]] = {1, 0, 0};
    x[L.chi[2]] = {d[1] * d[2], -d[2], -d[2]};
    x[L.chi[3]] = {-d[1] * d[3], 0, d[3]};
    for (auto i : h1) x[i] = {0, 1, 0};
    x[r.hat] = {0, 0, 1};

    // basic sets: {chi_i', chi*', chi^'} first, then any unimodular triple of the six restrictions
    const std::array<std::size_t, 6> pool = {L.chi[0], L.chi[1], L.chi[2], L.chi[3], h1[0], r.hat};
    std::vector<std::array<std::size_t, 3>> tries;
    for (std::size_t i = 0; i < 4; ++i) tries.push_back({i, 4, 5});
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b)
            for (std::size_t c = b + 1; c < 6; ++c)
                if (!(c == 5 && b == 4 && a < 4)) tries.push_back({a, b, c});
    for (std::size_t t = 0; t < tries.size(); ++t) {
        QMatrix m(3, QVector(3));  // rows: basis members over (chi_2', chi*', chi^')
        for (std::size_t u = 0; u < 3; ++u)
            for (std::size_t v = 0; v < 3; ++v) m[u][v] = x[pool[tries[t][u]]][v];
        auto inv = ctab::q_inverse(m);
        if (!inv) continue;
        ZMatrix out(k, ZVector(3));
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j)
            for (std::size_t v = 0; v < 3 && ok; ++v) {
                Rational y = 0;
                for (std::size_t u = 0; u < 3; ++u) y += x[j][u] * (*inv)[u][v];
                ok = denominator(y) == 1 && y >= 0;
                if (ok) out[j][v] = numerator(y);
            }
        if (!ok) continue;
        r.basis_index = t < 4 ? t + 1 : 0;
        for (auto u : tries[t]) r.basis.push_back(pool[u]);
        r.matrix = std::move(out);
        return r;
    }
    fail(Errc::NoConsistentSigns, "no basic set of restrictions gives a nonnegative integral matrix");
}

}  // namespace modat::dxm
