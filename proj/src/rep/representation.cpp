#include "modat/rep/representation.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>

#include "modat/error.hpp"

namespace modat::rep {

using gfla::EchelonBasis;

Representation::Representation(FieldPtr f, std::size_t d, std::vector<FqMatrix> g, std::string lbl)
    : field(std::move(f)), dim(d), gens(std::move(g)), label(std::move(lbl)) {
    for (const auto& m : gens) {
        if (m.rows() != dim || m.cols() != dim) fail(Errc::ShapeMismatch, "generator is not " + std::to_string(dim) + "x" + std::to_string(dim));
        if (!gfla::same_field(m.F(), *field)) fail(Errc::FieldMismatch, "generator over " + m.F().name());
    }
}

Representation trivial_rep(FieldPtr f, std::size_t ngens) {
    std::vector<FqMatrix> g(ngens, FqMatrix::identity(f, 1));
    return Representation(f, 1, std::move(g), "trivial");
}

Representation direct_sum(const Representation& a, const Representation& b) {
    if (a.ngens() != b.ngens()) fail(Errc::GeneratorCountMismatch, "direct sum");
    std::vector<FqMatrix> g;
    for (std::size_t i = 0; i < a.ngens(); ++i) {
        FqMatrix m(a.field, a.dim + b.dim, a.dim + b.dim);
        for (std::size_t r = 0; r < a.dim; ++r)
            for (std::size_t c = 0; c < a.dim; ++c) m.set(r, c, a.gens[i].at(r, c));
        for (std::size_t r = 0; r < b.dim; ++r)
            for (std::size_t c = 0; c < b.dim; ++c) m.set(a.dim + r, a.dim + c, b.gens[i].at(r, c));
        g.push_back(std::move(m));
    }
    return Representation(a.field, a.dim + b.dim, std::move(g), a.label + "+" + b.label);
}

Representation change_basis(const Representation& r, const FqMatrix& basis) {
    auto inv = gfla::inverse(basis);
    if (!inv) fail(Errc::InvalidArgument, "basis is singular");
    std::vector<FqMatrix> g;
    for (const auto& m : r.gens) g.push_back(basis * m * *inv);
    return Representation(r.field, r.dim, std::move(g), r.label);
}

FqMatrix AlgebraWord::eval(const Representation& r) const {
    FqMatrix acc(r.field, r.dim, r.dim);
    for (const auto& t : terms) {
        FqMatrix p = FqMatrix::identity(r.field, r.dim);
        for (auto l : t.letters) {
            if (l >= r.ngens()) fail(Errc::GeneratorCountMismatch, "word letter out of range");
            p = p * r.gens[l];
        }
        acc = acc + gfla::scalar_mul(t.coeff, p);
    }
    return acc;
}

std::string AlgebraWord::to_string() const {
    std::ostringstream s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) s << " + ";
        s << terms[i].coeff << '*';
        if (terms[i].letters.empty()) s << '1';
        for (std::size_t j = 0; j < terms[i].letters.size(); ++j) s << (j ? "." : "") << 'g' << terms[i].letters[j];
    }
    return s.str();
}

WordStream::WordStream(std::uint64_t seed, std::size_t ngens, FieldPtr f)
    : rng_(seed * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull), seed_(seed), ngens_(ngens), f_(std::move(f)) {}

AlgebraWord WordStream::next() {
    std::size_t maxlen = std::min<std::size_t>(12, 2 + 2 * (count_ / 200));
    AlgebraWord w;
    w.seed = seed_;
    std::size_t nterms = 1 + rng_() % 3;
    const std::uint32_t p = f_->p();
    for (std::size_t t = 0; t < nterms; ++t) {
        AlgebraWord::Term term;
        term.coeff = p == 2 ? 1 : Fq(1 + rng_() % (p - 1));
        std::size_t len = 1 + rng_() % maxlen;
        for (std::size_t i = 0; i < len; ++i) term.letters.push_back(std::uint32_t(rng_() % std::max<std::size_t>(ngens_, 1)));
        w.terms.push_back(std::move(term));
    }
    ++count_;
    return w;
}

FqMatrix spin(const Representation& r, const FqMatrix& seeds) {
    if (seeds.rows() == 0) return FqMatrix(r.field, 0, r.dim);
    if (seeds.cols() != r.dim) fail(Errc::ShapeMismatch, "seed width " + std::to_string(seeds.cols()) + " vs dim " + std::to_string(r.dim));
    EchelonBasis b(r.field, r.dim);
    for (std::size_t i = 0; i < seeds.rows(); ++i) b.add(seeds, i);
    for (std::size_t i = 0; i < b.dim() && b.dim() < r.dim; ++i) {
        FqMatrix v = b.rows().row_block(i, i + 1);
        for (const auto& g : r.gens) {
            FqMatrix w = v * g;
            b.add(w, 0);
        }
    }
    return b.basis();
}

SplitResult split_ex(const Representation& r, const FqMatrix& sub) {
    SplitResult out;
    FqMatrix basis = gfla::row_space(sub);
    if (sub.rows() > 0 && sub.cols() != r.dim) fail(Errc::ShapeMismatch, "subspace width");
    if (basis.rows() == 0) basis = FqMatrix(r.field, 0, r.dim);
    const std::size_t m = basis.rows(), n = r.dim;
    const FqMatrix& given = gfla::rank(sub) == sub.rows() && sub.rows() == m ? sub : basis;
    gfla::Coordinates coords(given);
    std::vector<FqMatrix> sg, qg;
    auto ech = gfla::echelonize(basis);
    std::vector<bool> is_piv(n, false);
    for (auto c : ech.pivots) is_piv[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_piv[c]) free.push_back(c);
    FqMatrix comp(r.field, free.size(), n);
    for (std::size_t i = 0; i < free.size(); ++i) comp.set(i, free[i], 1);
    const auto& F = r.F();
    for (const auto& g : r.gens) {
        FqMatrix img = given * g;
        FqMatrix s(r.field, m, m);
        for (std::size_t i = 0; i < m; ++i) {
            auto c = coords.solve(img, i);
            if (!c) fail(Errc::NotInvariant, "subspace is not invariant");
            s.set_row(i, *c);
        }
        sg.push_back(std::move(s));
        FqMatrix q(r.field, free.size(), free.size());
        for (std::size_t i = 0; i < free.size(); ++i) {
            FqMatrix v = g.row_block(free[i], free[i] + 1);
            for (std::size_t t = 0; t < m; ++t) {
                Fq x = v.at(0, ech.pivots[t]);
                if (x) v.row_axpy(0, basis, t, F.neg(x));
            }
            for (std::size_t j = 0; j < free.size(); ++j) q.set(i, j, v.at(0, free[j]));
        }
        qg.push_back(std::move(q));
    }
    out.sub = Representation(r.field, m, std::move(sg), r.label + "/sub");
    out.quot = Representation(r.field, free.size(), std::move(qg), r.label + "/quot");
    out.sub_basis = given;
    out.complement = comp;
    return out;
}

std::pair<Representation, Representation> split(const Representation& r, const FqMatrix& sub) {
    auto s = split_ex(r, sub);
    return {std::move(s.sub), std::move(s.quot)};
}

namespace {

Representation transposed(const Representation& r) {
    std::vector<FqMatrix> g;
    for (const auto& m : r.gens) g.push_back(gfla::transpose(m));
    return Representation(r.field, r.dim, std::move(g), r.label + "^T");
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t n) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (n + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

IrreducibilityResult is_irreducible(const Representation& r, std::uint64_t seed, std::size_t budget) {
    if (r.dim == 0) fail(Errc::ZeroModule, "is_irreducible on a zero module");
    IrreducibilityResult res;
    const std::size_t n = r.dim;
    if (r.ngens() == 0) {
        if (n == 1) {
            res.irreducible = true;
            res.cert.factor = FqPolynomial(r.field, {0, 1});
            res.cert.kernel = FqMatrix::identity(r.field, 1);
            return res;
        }
        res.submodule = FqMatrix::identity(r.field, n).row_block(0, 1);
        return res;
    }
    WordStream ws(seed, r.ngens(), r.field);
    std::optional<Representation> tr;
    while (ws.count() < budget) {
        AlgebraWord w = ws.next();
        FqMatrix W = w.eval(r);
        auto fs = gfla::factor(gfla::char_poly(W));
        std::stable_sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return a.factor.degree() < b.factor.degree(); });
        for (const auto& pf : fs) {
            FqMatrix M = gfla::poly_eval(pf.factor, W);
            FqMatrix N = gfla::left_kernel(M);
            FqMatrix S = spin(r, N.row_block(0, 1));
            if (S.rows() < n) {
                res.submodule = S;
                return res;
            }
            if (N.rows() != std::size_t(pf.factor.degree())) continue;
            if (!tr) tr = transposed(r);
            FqMatrix Nt = gfla::nullspace(M);
            FqMatrix St = spin(*tr, Nt.row_block(0, 1));
            if (St.rows() < n) {
                res.submodule = gfla::nullspace(St);
                return res;
            }
            res.irreducible = true;
            res.cert = {w, pf.factor, N};
            return res;
        }
    }
    fail(Errc::Undecided, "no Norton witness within " + std::to_string(budget) + " words (" + r.label + ")");
}

namespace {

struct Script {
    FqMatrix basis;
    std::vector<std::pair<std::size_t, std::size_t>> steps;  // (source row, generator)
};

Script standard_basis(const Representation& r, const FqMatrix& v) {
    Script s{FqMatrix(r.field, 0, r.dim), {}};
    EchelonBasis eb(r.field, r.dim);
    eb.add(v, 0);
    s.basis.append_rows(v);
    for (std::size_t i = 0; i < s.basis.rows() && s.basis.rows() < r.dim; ++i) {
        FqMatrix src = s.basis.row_block(i, i + 1);
        for (std::size_t g = 0; g < r.ngens(); ++g) {
            FqMatrix w = src * r.gens[g];
            if (eb.add(w, 0)) {
                s.basis.append_rows(w);
                s.steps.emplace_back(i, g);
                if (s.basis.rows() == r.dim) break;
            }
        }
    }
    return s;
}

FqMatrix replay(const Representation& r, const Script& s, const FqMatrix& u) {
    FqMatrix b = u;
    for (auto [i, g] : s.steps) b.append_rows(b.row_block(i, i + 1) * r.gens[g]);
    return b;
}

bool intertwines(const Representation& a, const Representation& b, const FqMatrix& t) {
    for (std::size_t g = 0; g < a.ngens(); ++g)
        if (a.gens[g] * t != t * b.gens[g]) return false;
    return true;
}

std::optional<FqMatrix> iso_with_cert(const Representation& a, const NortonCertificate& cert, const Representation& b) {
    if (a.dim != b.dim) return std::nullopt;
    if (a.ngens() != b.ngens()) fail(Errc::GeneratorCountMismatch, "iso");
    if (!gfla::same_field(a.F(), b.F())) fail(Errc::FieldMismatch, "iso");
    if (a.dim == 0) return FqMatrix(a.field, 0, 0);
    FqMatrix Nb = gfla::left_kernel(gfla::poly_eval(cert.factor, cert.word.eval(b)));
    if (Nb.rows() != cert.kernel.rows()) return std::nullopt;
    Script sa = standard_basis(a, cert.kernel.row_block(0, 1));
    if (sa.basis.rows() != a.dim) return std::nullopt;
    auto sa_inv = gfla::inverse(sa.basis);
    const auto& F = a.F();
    const std::size_t e = Nb.rows();
    double count = 1;
    for (std::size_t i = 1; i < e; ++i) count *= F.q();
    if (count > 1e5) fail(Errc::Undecided, "iso: kernel too large for exhaustive search");
    // coefficient vectors with leading 1, lexicographic
    std::vector<Fq> c(e, 0);
    for (std::size_t lead = 0; lead < e; ++lead) {
        std::fill(c.begin(), c.end(), 0);
        c[lead] = 1;
        for (;;) {
            FqMatrix u(a.field, 1, a.dim);
            for (std::size_t i = 0; i < e; ++i)
                if (c[i]) u.row_axpy(0, Nb, i, c[i]);
            FqMatrix sb = replay(b, sa, u);
            if (gfla::rank(sb) == b.dim) {
                FqMatrix t = *sa_inv * sb;
                if (intertwines(a, b, t)) return t;
            }
            std::size_t i = e;
            while (i-- > lead + 1) {
                if (++c[i] < F.q()) break;
                c[i] = 0;
            }
            if (i == lead) break;
        }
    }
    return std::nullopt;
}

bool is_trivial_module(const Representation& r) {
    if (r.dim != 1) return false;
    for (const auto& g : r.gens)
        if (g.at(0, 0) != 1) return false;
    return true;
}

bool is_sign_like(const Representation& r) {
    if (r.dim != 1 || r.F().p() == 2) return false;
    Fq m1 = r.F().neg(1);
    bool any = false;
    for (const auto& g : r.gens) {
        Fq x = g.at(0, 0);
        if (x != 1 && x != m1) return false;
        any = any || x == m1;
    }
    return any;
}

}  // namespace

std::vector<ChopFactor> chop(const Representation& r, std::uint64_t seed, std::size_t budget) {
    struct Cls {
        Representation rep;
        NortonCertificate cert;
        std::size_t mult;
    };
    std::vector<Cls> classes;
    std::size_t counter = 0;
    std::function<void(const Representation&)> rec = [&](const Representation& m) {
        if (m.dim == 0) return;
        auto res = is_irreducible(m, mix(seed, counter++), budget);
        if (!res.irreducible) {
            auto sp = split(m, res.submodule);
            rec(sp.first);
            rec(sp.second);
            return;
        }
        for (auto& c : classes) {
            if (c.rep.dim != m.dim) continue;
            if (iso_with_cert(c.rep, c.cert, m)) {
                ++c.mult;
                return;
            }
        }
        classes.push_back({m, res.cert, 1});
    };
    rec(r);
    std::stable_sort(classes.begin(), classes.end(), [](const Cls& a, const Cls& b) {
        if (a.rep.dim != b.rep.dim) return a.rep.dim < b.rep.dim;
        return is_trivial_module(a.rep) && !is_trivial_module(b.rep);
    });
    std::size_t signs = 0;
    for (const auto& c : classes) signs += is_sign_like(c.rep);
    std::vector<ChopFactor> out;
    std::map<std::size_t, char> letter;
    for (auto& c : classes) {
        std::string name;
        if (is_trivial_module(c.rep))
            name = "trivial";
        else if (signs == 1 && is_sign_like(c.rep))
            name = "sign";
        else {
            char& l = letter.try_emplace(c.rep.dim, 'a').first->second;
            name = std::to_string(c.rep.dim) + l;
            ++l;
        }
        c.rep.label = name;
        out.push_back({c.rep, c.mult, name});
    }
    return out;
}

std::string chop_summary(const std::vector<ChopFactor>& f) {
    std::string s;
    for (const auto& c : f) {
        if (!s.empty()) s += ' ';
        s += c.name + ':' + std::to_string(c.multiplicity);
    }
    return s;
}

std::optional<FqMatrix> iso(const Representation& a, const Representation& b, std::uint64_t seed) {
    if (a.ngens() != b.ngens()) fail(Errc::GeneratorCountMismatch, "iso");
    if (!gfla::same_field(a.F(), b.F())) fail(Errc::FieldMismatch, "iso");
    if (a.dim != b.dim) return std::nullopt;
    if (a.dim == 0) return FqMatrix(a.field, 0, 0);
    auto res = is_irreducible(a, seed);
    if (!res.irreducible) fail(Errc::Undecided, "iso: first module is not simple");
    return iso_with_cert(a, res.cert, b);
}

Representation dual(const Representation& r) {
    std::vector<FqMatrix> g;
    for (const auto& m : r.gens) {
        auto inv = gfla::inverse(m);
        if (!inv) fail(Errc::SingularGenerator, "dual of a singular generator (" + r.label + ")");
        g.push_back(gfla::transpose(*inv));
    }
    return Representation(r.field, r.dim, std::move(g), r.label + "*");
}

Representation tensor(const Representation& a, const Representation& b) {
    if (!gfla::same_field(a.F(), b.F())) fail(Errc::FieldMismatch, "tensor");
    if (a.ngens() != b.ngens()) fail(Errc::GeneratorCountMismatch, "tensor");
    std::vector<FqMatrix> g;
    for (std::size_t i = 0; i < a.ngens(); ++i) g.push_back(gfla::kron(a.gens[i], b.gens[i]));
    return Representation(a.field, a.dim * b.dim, std::move(g), a.label + "x" + b.label);
}

std::vector<FqMatrix> hom(const Representation& a, const Representation& b) {
    if (!gfla::same_field(a.F(), b.F())) fail(Errc::FieldMismatch, "hom");
    if (a.ngens() != b.ngens()) fail(Errc::GeneratorCountMismatch, "hom");
    const std::size_t da = a.dim, db = b.dim, nu = da * db;
    if (nu == 0) return {};
    const auto& F = a.F();
    FqMatrix E(a.field, a.ngens() * nu, nu);
    for (std::size_t g = 0; g < a.ngens(); ++g) {
        const auto& A = a.gens[g];
        const auto& B = b.gens[g];
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j) {
                std::size_t row = (g * da + i) * db + j;
                for (std::size_t k = 0; k < da; ++k) {
                    Fq x = A.at(i, k);
                    if (x) E.set(row, k * db + j, F.add(E.at(row, k * db + j), x));
                }
                for (std::size_t l = 0; l < db; ++l) {
                    Fq x = B.at(l, j);
                    if (x) E.set(row, i * db + l, F.sub(E.at(row, i * db + l), x));
                }
            }
    }
    FqMatrix ns = gfla::nullspace(E);
    std::vector<FqMatrix> out;
    for (std::size_t r = 0; r < ns.rows(); ++r) {
        FqMatrix t(a.field, da, db);
        for (std::size_t k = 0; k < nu; ++k) t.set(k / db, k % db, ns.at(r, k));
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<SocleLayer> socle_series(const Representation& r, const std::vector<Representation>& simples, std::uint64_t seed) {
    auto factors = chop(r, seed);
    for (const auto& f : factors) {
        bool found = false;
        for (const auto& s : simples)
            if (s.dim == f.simple.dim && iso(f.simple, s, seed)) {
                found = true;
                break;
            }
        if (!found) fail(Errc::IncompleteSimplesList, "composition factor " + f.name + " missing from the simples list");
    }
    std::vector<std::size_t> end_dim;
    for (const auto& s : simples) end_dim.push_back(hom(s, s).size());
    std::vector<SocleLayer> layers;
    Representation m = r;
    while (m.dim > 0) {
        SocleLayer layer;
        FqMatrix soc(r.field, 0, m.dim);
        for (std::size_t i = 0; i < simples.size(); ++i) {
            auto h = hom(simples[i], m);
            layer.multiplicity.push_back(end_dim[i] ? h.size() / end_dim[i] : 0);
            for (const auto& t : h) soc.append_rows(t);
        }
        FqMatrix basis = gfla::row_space(soc);
        if (basis.rows() == 0) fail(Errc::IncompleteSimplesList, "empty socle layer");
        layer.dim = basis.rows();
        layers.push_back(layer);
        m = split(m, basis).second;
    }
    return layers;
}

namespace {

void series_rec(const Representation& m, std::uint64_t seed, std::size_t& counter, FqMatrix& basis_out,
                std::vector<std::size_t>& sizes) {
    if (m.dim == 0) {
        basis_out = FqMatrix(m.field, 0, 0);
        return;
    }
    auto res = is_irreducible(m, mix(seed, counter++));
    if (res.irreducible) {
        basis_out = FqMatrix::identity(m.field, m.dim);
        sizes.push_back(m.dim);
        return;
    }
    auto sp = split_ex(m, res.submodule);
    FqMatrix bs, bq;
    series_rec(sp.sub, seed, counter, bs, sizes);
    series_rec(sp.quot, seed, counter, bq, sizes);
    basis_out = vstack(bs * sp.sub_basis, bq * sp.complement);
}

bool lower_triangular_blocks(const FqMatrix& y, const std::vector<std::size_t>& sizes) {
    std::size_t r0 = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        std::size_t r1 = r0 + sizes[i];
        for (std::size_t r = r0; r < r1; ++r)
            for (std::size_t c = r1; c < y.cols(); ++c)
                if (y.at(r, c)) return false;
        r0 = r1;
    }
    return true;
}

}  // namespace

CompositionSeries composition_series(const Representation& r, std::uint64_t seed) {
    CompositionSeries s;
    s.module = r;
    std::size_t counter = 0;
    FqMatrix b;
    series_rec(r, seed, counter, b, s.block_sizes);
    if (r.dim == 0) b = FqMatrix(r.field, 0, 0);
    s.adapted_basis = b;
    s.chain.push_back(FqMatrix(r.field, 0, r.dim));
    std::size_t acc = 0;
    for (auto sz : s.block_sizes) {
        acc += sz;
        s.chain.push_back(gfla::row_space(b.row_block(0, acc)));
    }
    Representation adapted = r.dim ? change_basis(r, b) : r;
    acc = 0;
    std::vector<NortonCertificate> certs;
    std::vector<std::size_t> class_rep;
    for (auto sz : s.block_sizes) {
        std::vector<FqMatrix> g;
        for (const auto& m : adapted.gens) g.push_back(m.block(acc, acc + sz, acc, acc + sz));
        Representation f(r.field, sz, std::move(g), r.label + "/factor");
        auto cert = is_irreducible(f, mix(seed, counter++)).cert;
        std::size_t cls = class_rep.size();
        for (std::size_t c = 0; c < class_rep.size(); ++c) {
            const auto& rep = s.factors[class_rep[c]];
            if (rep.dim == f.dim && iso_with_cert(rep, certs[c], f)) {
                cls = c;
                break;
            }
        }
        if (cls == class_rep.size()) {
            class_rep.push_back(s.factors.size());
            certs.push_back(cert);
        }
        s.factor_class.push_back(cls);
        s.factors.push_back(std::move(f));
        acc += sz;
    }
    return s;
}

GenerationCheck check_generation(const CompositionSeries& s, const std::vector<FqMatrix>& extra) {
    const std::size_t n = s.module.dim;
    for (const auto& x : extra)
        if (x.rows() != n || x.cols() != n) fail(Errc::ShapeMismatch, "extra matrix shape");
    GenerationCheck out{true, true};
    if (n == 0) return out;
    auto inv = gfla::inverse(s.adapted_basis);
    std::vector<FqMatrix> ys;
    for (const auto& x : extra) {
        ys.push_back(s.adapted_basis * x * *inv);
        if (!lower_triangular_blocks(ys.back(), s.block_sizes)) out.preserved = false;
    }
    std::vector<std::size_t> off{0};
    for (auto sz : s.block_sizes) off.push_back(off.back() + sz);
    for (std::size_t i = 0; i < s.factors.size(); ++i)
        for (std::size_t j = i + 1; j < s.factors.size(); ++j) {
            if (s.factor_class[i] != s.factor_class[j]) continue;
            auto t = iso(s.factors[i], s.factors[j]);
            if (!t) continue;
            for (const auto& y : ys) {
                FqMatrix yi = y.block(off[i], off[i + 1], off[i], off[i + 1]);
                FqMatrix yj = y.block(off[j], off[j + 1], off[j], off[j + 1]);
                if (yi * *t != *t * yj) out.diag_isos_consistent = false;
            }
        }
    return out;
}

std::vector<Peakword> peakwords(const std::vector<Representation>& simples, std::uint64_t seed, std::size_t budget) {
    std::vector<Peakword> out(simples.size());
    std::vector<bool> done(simples.size(), false);
    if (simples.empty()) return out;
    std::vector<std::size_t> e;
    for (const auto& s : simples) e.push_back(hom(s, s).size());
    WordStream ws(seed, simples[0].ngens(), simples[0].field);
    std::size_t left = simples.size();
    while (left && ws.count() < budget) {
        AlgebraWord w = ws.next();
        std::vector<FqMatrix> W;
        for (const auto& s : simples) W.push_back(w.eval(s));
        for (std::size_t i = 0; i < simples.size(); ++i) {
            if (done[i]) continue;
            for (const auto& pf : gfla::factor(gfla::min_poly(W[i]))) {
                if (gfla::left_kernel(gfla::poly_eval(pf.factor, W[i])).rows() != e[i]) continue;
                bool clean = true;
                for (std::size_t j = 0; j < simples.size() && clean; ++j)
                    if (j != i && gfla::rank(gfla::poly_eval(pf.factor, W[j])) != simples[j].dim) clean = false;
                if (!clean) continue;
                out[i] = {w, pf.factor};
                done[i] = true;
                --left;
                break;
            }
        }
    }
    if (left) fail(Errc::Undecided, "peakword search exhausted its budget");
    return out;
}

}  // namespace modat::rep
