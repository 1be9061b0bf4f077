#include <algorithm>
#include <functional>
#include <numeric>

#include "modat/dxm/dxm.hpp"
#include "modat/error.hpp"

namespace modat::dxm {

namespace {

std::string zstr(const Integer& z) { return z.str(); }

std::string vec_str(const ZVector& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + (x == 0 ? std::string(".") : x.str());
    return "(" + s + ")";
}

Integer ceil_div(const Integer& a, const Integer& b) { return (a + b - 1) / b; }

}  // namespace

ZMatrix DecompState::proj_matrix() const {
    ZMatrix m(k(), ZVector(l()));
    for (std::size_t j = 0; j < l(); ++j)
        for (std::size_t i = 0; i < k(); ++i) m[i][j] = proj_basic[j].v.at(i);
    return m;
}

void DecompState::check() const {
    if (degrees.size() != chars.size()) fail(Errc::ShapeMismatch, "one degree per character");
    for (const auto& c : proj_basic)
        if (c.v.size() != k()) fail(Errc::ShapeMismatch, "projective '" + c.name + "' has the wrong length");
    for (auto i : brauer_basic)
        if (i >= k()) fail(Errc::InvalidArgument, "Brauer basic set refers to a missing character");
    if (!brauer_basic.empty() && !proj_basic.empty() && brauer_basic.size() != l())
        fail(Errc::ShapeMismatch, "basic sets of different sizes");
    for (const auto& d : candidates) {
        if (d.size() != k()) fail(Errc::ShapeMismatch, "candidate with the wrong number of rows");
        for (const auto& r : d)
            if (r.size() != l()) fail(Errc::ShapeMismatch, "candidate with the wrong number of columns");
    }
}

ZVector decompose_projective(const DecompState& s, const ZVector& v) {
    if (v.size() != s.k()) fail(Errc::ShapeMismatch, "projective character of the wrong length");
    auto sol = ctab::q_solve(ctab::to_q(s.proj_matrix()), ctab::to_q({v})[0]);
    if (sol.status == ctab::SolveStatus::Inconsistent) fail(Errc::NotInSpan, vec_str(v) + " is not in the span of the basic set");
    if (sol.status == ctab::SolveStatus::Underdetermined) fail(Errc::InvalidArgument, "projective basic set is dependent");
    if (!ctab::all_integral(sol.x)) fail(Errc::NonIntegral, vec_str(v) + " decomposes with non-integral coefficients");
    return ctab::to_z(sol.x);
}

QMatrix brauer_expansion(const DecompState& s) {
    if (s.brauer_basic.size() != s.l()) fail(Errc::ShapeMismatch, "Brauer basic set has the wrong size");
    auto p = ctab::to_q(s.proj_matrix());
    QMatrix pb;
    for (auto i : s.brauer_basic) pb.push_back(p[i]);
    auto inv = ctab::q_inverse(pb);
    if (!inv) fail(Errc::InvalidArgument, "Brauer basic set is not a basis");
    return ctab::q_mul(p, *inv);
}

FittingResult fitting_match(const DecompState& s, const FittingInput& in) {
    const std::size_t rows = in.e_dec.size();
    if (in.psi.size() != s.k()) fail(Errc::ShapeMismatch, "one multiplicity per character");
    std::vector<Integer> rdeg(rows, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        if (in.e_dec[r].size() != in.simple_dims.size()) fail(Errc::ShapeMismatch, "row length differs from simple count");
        for (std::size_t j = 0; j < in.simple_dims.size(); ++j) rdeg[r] += in.e_dec[r][j] * in.simple_dims[j];
    }
    std::vector<std::size_t> met;
    for (std::size_t c = 0; c < s.k(); ++c)
        if (in.psi[c] > 0) met.push_back(c);
    FittingResult res;
    if (met.size() != rows) fail(Errc::NoAdmissibleMatching, std::to_string(rows) + " rows for " + std::to_string(met.size()) + " characters met");

    std::vector<std::size_t> assign(rows, SIZE_MAX);
    std::vector<bool> used(s.k(), false);
    for (auto [r, c] : in.pinned) {
        if (r >= rows || c >= s.k() || in.psi[c] != rdeg[r] || used[c] || assign[r] != SIZE_MAX)
            fail(Errc::NoAdmissibleMatching, "pinned pair is not admissible");
        assign[r] = c;
        used[c] = true;
    }
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
        if (r == rows) {
            ++res.admissible;
            FittingMatch m;
            m.row_to_char = assign;
            for (std::size_t j = 0; j < in.simple_dims.size(); ++j) {
                ZVector col(s.k(), 0);
                for (std::size_t rr = 0; rr < rows; ++rr) col[assign[rr]] = in.e_dec[rr][j];
                try {
                    decompose_projective(s, col);
                } catch (const Error& e) {
                    if (e.code() == Errc::NonIntegral || e.code() == Errc::NotInSpan) return;
                    throw;
                }
                m.columns.push_back(std::move(col));
            }
            res.survivors.push_back(std::move(m));
            return;
        }
        if (assign[r] != SIZE_MAX) return rec(r + 1);
        for (auto c : met) {
            if (used[c] || in.psi[c] != rdeg[r]) continue;
            assign[r] = c;
            used[c] = true;
            rec(r + 1);
            used[c] = false;
            assign[r] = SIZE_MAX;
        }
    };
    rec(0);
    if (res.survivors.empty())
        fail(Errc::NoAdmissibleMatching, "none of " + std::to_string(res.admissible) + " admissible matchings is integral");
    return res;
}

DecompState apply_fitting(DecompState s, const FittingMatch& m, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < m.columns.size(); ++i) {
        const auto& col = m.columns[i];
        auto y = decompose_projective(s, col);
        std::size_t j = 0;
        while (j < s.l() && (s.proj_basic[j].indecomposable || abs(y[j]) != 1)) ++j;
        if (j == s.l()) fail(Errc::NoInferencePossible, "no basic-set member can be exchanged for " + vec_str(col));
        std::string name = i < names.size() ? names[i] : "Phi" + std::to_string(j + 1);
        s.note("fitting", name + " = " + vec_str(col) + " is projective indecomposable (Fitting correspondent) and replaces " +
                              s.proj_basic[j].name);
        s.proj_basic[j] = {name, col, true, "Fitting correspondent"};
    }
    return s;
}

DecompState refine_by_relation(DecompState s, const ZVector& psi_new, const std::string& name) {
    auto y = decompose_projective(s, psi_new);
    std::string expr;
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] == 0) continue;
        std::string c = abs(y[j]) == 1 ? "" : zstr(abs(y[j])) + "*";
        expr += (y[j] < 0 ? " - " : expr.empty() ? "" : " + ") + c + s.proj_basic[j].name;
    }
    std::vector<std::size_t> neg, pos_open;
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] < 0) neg.push_back(j);
        if (y[j] > 0 && !s.proj_basic[j].indecomposable) pos_open.push_back(j);
    }
    if (neg.empty()) {
        s.note("refine", name + " = " + expr + " has no negative coefficient; nothing to infer");
        return s;
    }
    if (neg.size() != 1 || !s.proj_basic[neg[0]].indecomposable || pos_open.size() != 1)
        fail(Errc::NoInferencePossible, name + " = " + expr + " does not single out one member");
    std::size_t t = neg[0], j = pos_open[0];
    Integer sub = ceil_div(-y[t], y[j]);
    auto& col = s.proj_basic[j];
    for (std::size_t i = 0; i < s.k(); ++i) col.v[i] -= sub * s.proj_basic[t].v[i];
    std::string old = col.name;
    col.name = old + "'";
    col.origin = old + " - " + (sub == 1 ? "" : zstr(sub) + "*") + s.proj_basic[t].name;
    s.note("refine", name + " = " + expr + "; since " + s.proj_basic[t].name + " is projective indecomposable, " +
                         col.name + " := " + col.origin + " is a projective character");
    return s;
}

DecompState enumerate_candidates(DecompState s, const SubtractionBounds& bounds) {
    std::vector<std::size_t> ind, open;
    for (std::size_t j = 0; j < s.l(); ++j) (s.proj_basic[j].indecomposable ? ind : open).push_back(j);

    struct Option {
        ZVector col;
        std::string label;
    };
    std::vector<std::vector<Option>> opts;
    for (auto j : open) {
        std::vector<Option> o;
        ZVector cur = s.proj_basic[j].v;
        std::vector<Integer> mult(ind.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t t) {
            if (t == ind.size()) {
                if (std::all_of(cur.begin(), cur.end(), [](const Integer& x) { return x == 0; })) return;
                std::string lab = s.proj_basic[j].name;
                for (std::size_t u = 0; u < ind.size(); ++u)
                    if (mult[u] != 0)
                        lab += " - " + (mult[u] == 1 ? std::string() : zstr(mult[u]) + "*") + s.proj_basic[ind[u]].name;
                o.push_back({cur, lab});
                return;
            }
            const auto& phi = s.proj_basic[ind[t]].v;
            Integer top = -1;  // unbounded
            for (std::size_t i = 0; i < s.k(); ++i)
                if (phi[i] > 0) {
                    Integer q = cur[i] / phi[i];
                    if (top < 0 || q < top) top = q;
                }
            auto bi = bounds.find({j, ind[t]});
            if (bi != bounds.end() && (top < 0 || bi->second < top)) top = bi->second;
            if (top < 0) fail(Errc::InvalidArgument, "zero indecomposable column " + s.proj_basic[ind[t]].name);
            for (Integer x = 0; x <= top; ++x) {
                mult[t] = x;
                rec(t + 1);
                for (std::size_t i = 0; i < s.k(); ++i) cur[i] -= phi[i];
            }
            for (std::size_t i = 0; i < s.k(); ++i) cur[i] += (top + 1) * phi[i];
            mult[t] = 0;
        };
        rec(0);
        opts.push_back(std::move(o));
    }
    Integer total = 1;
    for (auto& o : opts) total *= o.size();
    if (total > kMaxCandidates) fail(Errc::TooManyCandidates, total.str() + " candidates");

    s.candidates.clear();
    s.candidate_labels.clear();
    ZMatrix base = s.proj_matrix();
    std::vector<std::size_t> pick(opts.size(), 0);
    std::function<void(std::size_t)> prod = [&](std::size_t u) {
        if (u == opts.size()) {
            ZMatrix d = base;
            std::string lab;
            for (std::size_t w = 0; w < opts.size(); ++w) {
                const auto& op = opts[w][pick[w]];
                for (std::size_t i = 0; i < s.k(); ++i) d[i][open[w]] = op.col[i];
                lab += (lab.empty() ? "" : "; ") + op.label;
            }
            s.candidates.push_back(std::move(d));
            s.candidate_labels.push_back(lab.empty() ? "all columns indecomposable" : lab);
            return;
        }
        for (pick[u] = 0; pick[u] < opts[u].size(); ++pick[u]) prod(u + 1);
    };
    if (total > 0) prod(0);
    s.solved = s.candidates.size() == 1;
    s.note("enumerate", std::to_string(s.candidates.size()) + " possibilities for the decomposition matrix");
    return s;
}

std::optional<ZVector> implied_degrees(const ZMatrix& d, const ZVector& degrees) {
    if (d.size() != degrees.size() || d.empty()) return std::nullopt;
    auto sol = ctab::q_solve(ctab::to_q(d), ctab::to_q({degrees})[0]);
    if (sol.status != ctab::SolveStatus::Unique || !ctab::all_integral(sol.x)) return std::nullopt;
    auto z = ctab::to_z(sol.x);
    for (const auto& x : z)
        if (x <= 0) return std::nullopt;
    return z;
}

DecompState import_brauer_degrees(DecompState s, const ZVector& known) {
    std::vector<ZMatrix> keep;
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < s.candidates.size(); ++c) {
        auto deg = implied_degrees(s.candidates[c], s.degrees);
        if (!deg) continue;
        auto have = *deg;
        bool ok = true;
        for (const auto& x : known) {
            auto it = std::find(have.begin(), have.end(), x);
            if (it == have.end()) {
                ok = false;
                break;
            }
            have.erase(it);
        }
        if (ok) {
            keep.push_back(s.candidates[c]);
            labels.push_back(s.candidate_labels.at(c));
        }
    }
    if (keep.empty()) fail(Errc::AllEliminated, "no candidate has the known Brauer degrees");
    std::string ks;
    for (const auto& x : known) ks += (ks.empty() ? "" : ", ") + x.str();
    s.note("import", "known Brauer degrees {" + ks + "} leave " + std::to_string(keep.size()) + " of " +
                         std::to_string(s.candidates.size()) + " candidates");
    s.candidates = std::move(keep);
    s.candidate_labels = std::move(labels);
    s.solved = s.candidates.size() == 1;
    return s;
}

DecompState eliminate_by_atom(DecompState s, const Integer& atom, std::size_t position) {
    if (position >= s.l()) fail(Errc::InvalidArgument, "no Brauer character " + std::to_string(position + 1));
    if (atom <= 0) {
        s.note("eliminate", "atom of degree " + atom.str() + " gives no bound");
        return s;
    }
    std::vector<ZMatrix> keep;
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < s.candidates.size(); ++c) {
        auto deg = implied_degrees(s.candidates[c], s.degrees);
        if (deg && (*deg)[position] >= atom) {
            keep.push_back(s.candidates[c]);
            labels.push_back(s.candidate_labels.at(c));
        }
    }
    if (keep.empty())
        fail(Errc::AllEliminated, "atom of degree " + atom.str() + " exceeds every candidate degree at position " +
                                      std::to_string(position + 1));
    s.note("eliminate", "atom of degree " + atom.str() + " at position " + std::to_string(position + 1) + " leaves " +
                            std::to_string(keep.size()) + " of " + std::to_string(s.candidates.size()) + " candidates");
    s.candidates = std::move(keep);
    s.candidate_labels = std::move(labels);
    s.solved = s.candidates.size() == 1;
    return s;
}

QMatrix atoms(const AtomProblem& pr) {
    const std::size_t n = pr.a.size();
    for (const auto& r : pr.a)
        if (r.size() != n) fail(Errc::NotSquare, "A is not square");
    if (pr.b.size() != n) fail(Errc::ShapeMismatch, "one character per module");
    auto inv = ctab::q_inverse(ctab::to_q(pr.a));
    if (!inv) fail(Errc::SingularA, "A is singular");
    std::size_t m = n ? pr.b[0].size() : 0;
    QMatrix out(n, QVector(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((*inv)[j][i] != 0) {
                if (pr.b[j].size() != m) fail(Errc::ShapeMismatch, "characters of different length");
                for (std::size_t c = 0; c < m; ++c) out[i][c] += pr.b[j][c] * (*inv)[j][i];
            }
    for (std::size_t i = 0; i < n; ++i)
        if (!ctab::all_integral(out[i])) fail(Errc::NonIntegralAtoms, "atom " + std::to_string(i + 1) + " is not integral");
    return out;
}

bool verify_matrix(const ZMatrix& d, const std::vector<std::vector<ctab::Cyclotomic>>& chi,
                   const std::vector<std::vector<ctab::Cyclotomic>>& phi) {
    if (d.size() != chi.size()) return false;
    for (const auto& r : d) {
        if (r.size() != phi.size()) return false;
        for (const auto& x : r)
            if (x < 0) return false;
    }
    // D^T D symmetric
    const std::size_t l = phi.size();
    for (std::size_t a = 0; a < l; ++a)
        for (std::size_t b = a + 1; b < l; ++b) {
            Integer x = 0, y = 0;
            for (const auto& r : d) {
                x += r[a] * r[b];
                y += r[b] * r[a];
            }
            if (x != y) return false;
        }
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::vector<ctab::Cyclotomic> s(chi[i].size());
        for (std::size_t j = 0; j < l; ++j) {
            if (phi[j].size() != chi[i].size()) return false;
            if (d[i][j] == 0) continue;
            for (std::size_t c = 0; c < s.size(); ++c) s[c] += ctab::Cyclotomic(Rational(d[i][j])) * phi[j][c];
        }
        if (s != chi[i]) return false;
    }
    return true;
}

std::optional<ZVector> back_substitute_degrees(const ZMatrix& d, const ZVector& degrees) {
    if (d.empty() || d.size() != degrees.size()) return std::nullopt;
    const std::size_t l = d[0].size();
    QMatrix rows;
    QVector rhs;
    for (std::size_t i = 0; i < d.size() && rows.size() < l; ++i) {
        auto trial = rows;
        trial.push_back(ctab::to_q({d[i]})[0]);
        if (ctab::q_rank(trial) == trial.size()) {
            rows = std::move(trial);
            rhs.push_back(Rational(degrees[i]));
        }
    }
    if (rows.size() != l) return std::nullopt;
    auto sol = ctab::q_solve(rows, rhs);
    if (sol.status != ctab::SolveStatus::Unique || !ctab::all_integral(sol.x)) return std::nullopt;
    auto z = ctab::to_z(sol.x);
    for (const auto& x : z)
        if (x <= 0) return std::nullopt;
    return z;
}

bool verify_degrees(const ZMatrix& d, const ZVector& degrees) {
    auto phi = back_substitute_degrees(d, degrees);
    if (!phi) return false;
    std::vector<std::vector<ctab::Cyclotomic>> chi, ph;
    for (const auto& x : degrees) chi.push_back({ctab::Cyclotomic(Rational(x))});
    for (const auto& x : *phi) ph.push_back({ctab::Cyclotomic(Rational(x))});
    return verify_matrix(d, chi, ph);
}

std::vector<Projective> projectives_from_products(const ctab::CharTable& t, const ctab::BlockData& b, std::size_t block,
                                                  const std::vector<ctab::Character>& induced) {
    if (block >= b.blocks.size()) fail(Errc::InvalidArgument, "no block " + std::to_string(block));
    const auto& members = b.blocks[block];
    std::vector<Projective> out;
    auto push = [&](const ctab::Character& c, const std::string& origin) {
        auto co = ctab::expand(t, c);
        Projective pr;
        pr.origin = origin;
        Integer g = 0;
        for (auto i : members) {
            if (denominator(co[i]) != 1 || co[i] < 0) fail(Errc::InvalidArgument, origin + " is not a character");
            pr.coeffs.push_back(numerator(co[i]));
            g = gcd(g, pr.coeffs.back());
        }
        if (g == 0) return;
        if (g > 1) {
            for (auto& x : pr.coeffs) x /= g;
            pr.divided_by = g;
            pr.origin = "(" + origin + ")/" + g.str();
        }
        for (const auto& o : out)
            if (o.coeffs == pr.coeffs) return;
        out.push_back(std::move(pr));
    };
    auto nm = [&](std::size_t i) { return t.chars[i].name.empty() ? "chi" + std::to_string(i + 1) : t.chars[i].name; };
    for (std::size_t z = 0; z < b.blocks.size(); ++z) {
        if (b.defect[z] != 0) continue;
        std::size_t j = b.blocks[z][0];
        for (std::size_t i = 0; i < t.chars.size(); ++i)
            push(ctab::product(t.chars[i], t.chars[j]), "(" + nm(i) + " * " + nm(j) + ") . 1_B");
    }
    for (std::size_t i = 0; i < induced.size(); ++i)
        push(induced[i], (induced[i].name.empty() ? "induced " + std::to_string(i + 1) : induced[i].name) + " . 1_B");
    return out;
}

}  // namespace modat::dxm
