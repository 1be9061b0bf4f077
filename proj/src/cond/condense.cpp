#include "modat/cond/condense.hpp"

#include <boost/container_hash/hash.hpp>
#include <unordered_map>

#include "modat/error.hpp"

namespace modat::cond {

namespace {

struct ValuesHash {
    std::size_t operator()(const std::vector<gfla::Fq>& v) const noexcept { return boost::hash_range(v.begin(), v.end()); }
};

// all products of the generators, identity first
std::vector<FqMatrix> closure(const gfla::FieldPtr& f, std::size_t n, const std::vector<FqMatrix>& gens) {
    std::vector<FqMatrix> out{FqMatrix::identity(f, n)};
    std::unordered_map<std::vector<gfla::Fq>, std::size_t, ValuesHash> seen{{out[0].values(), 0}};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& g : gens) {
            FqMatrix y = out[i] * g;
            auto key = y.values();
            if (seen.count(key)) continue;
            if (out.size() >= kMaxSubgroupOrder)
                fail(Errc::TooLarge, "subgroup has more than " + std::to_string(kMaxSubgroupOrder) + " elements");
            seen.emplace(std::move(key), out.size());
            out.push_back(std::move(y));
        }
    return out;
}

void check_group(const gfla::FieldPtr& f, std::size_t n, const std::vector<FqMatrix>& el) {
    std::unordered_map<std::vector<gfla::Fq>, std::size_t, ValuesHash> seen;
    for (std::size_t i = 0; i < el.size(); ++i) {
        if (!gfla::inverse(el[i])) fail(Errc::NotAGroup, "element " + std::to_string(i + 1) + " is singular");
        seen.emplace(el[i].values(), i);
    }
    if (!seen.count(FqMatrix::identity(f, n).values())) fail(Errc::NotAGroup, "identity missing");
    for (const auto& x : el)
        for (const auto& y : el)
            if (!seen.count((x * y).values())) fail(Errc::NotAGroup, "element list not closed under products");
}

gfla::Fq inverse_order(const gfla::Field& F, std::size_t order) {
    gfla::Fq o = F.from_int(std::int64_t(order % F.p()));
    if (o == 0)
        fail(Errc::OrderDivisibleByP, "|K| = " + std::to_string(order) + " is divisible by " + std::to_string(F.p()));
    return F.inv(o);
}

FqMatrix average(const gfla::FieldPtr& f, std::size_t n, const std::vector<FqMatrix>& el) {
    FqMatrix e(f, n, n);
    for (const auto& k : el) e = e + k;
    return gfla::scalar_mul(inverse_order(*f, el.size()), e);
}

std::vector<std::size_t> pivots_of(const FqMatrix& rref) {
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < rref.rows(); ++i) {
        std::size_t j = 0;
        while (j < rref.cols() && rref.at(i, j) == 0) ++j;
        piv.push_back(j);
    }
    return piv;
}

// coordinates of rows lying in the span of an RREF basis
FqMatrix coords(const FqMatrix& rref, const FqMatrix& x) {
    auto piv = pivots_of(rref);
    FqMatrix m(rref.field(), x.rows(), rref.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < piv.size(); ++j) m.set(i, j, x.at(i, piv[j]));
    return m;
}

}  // namespace

FqMatrix eval_word(const Representation& r, const Word& w) {
    FqMatrix m = FqMatrix::identity(r.field, r.dim);
    for (auto k : w) {
        if (k >= r.ngens()) fail(Errc::GeneratorCountMismatch, "word letter " + std::to_string(k + 1) + " out of range");
        m = m * r.gens[k];
    }
    return m;
}

std::vector<Word> words_of(const grp::PermGroup& g, const std::vector<grp::Perm>& elements) {
    std::vector<Word> out;
    for (const auto& p : elements) {
        auto i = g.index_of(p);
        if (!i) fail(Errc::NotSubgroup, grp::format_cycles(p) + " is not in the group");
        out.push_back(g.word(*i));
    }
    return out;
}

CondensationSetup make_idempotent(const Representation& v, const std::vector<Word>& k, KInput input) {
    CondensationSetup s;
    s.ambient = v;
    s.k_words = k;
    std::vector<FqMatrix> mats;
    for (const auto& w : k) mats.push_back(eval_word(v, w));
    std::vector<FqMatrix> el;
    if (input == KInput::Generators) {
        el = closure(v.field, v.dim, mats);
    } else {
        check_group(v.field, v.dim, mats);
        el = std::move(mats);
    }
    s.k_order = el.size();
    s.projector = average(v.field, v.dim, el);
    if (s.projector * s.projector != s.projector) fail(Errc::InvalidArgument, "projector is not idempotent");
    s.image_basis = gfla::row_space(s.projector);
    return s;
}

FqMatrix condense_matrix(const CondensationSetup& s, const FqMatrix& g) {
    if (g.rows() != s.ambient.dim || g.cols() != s.ambient.dim) fail(Errc::ShapeMismatch, "element of the wrong size");
    return coords(s.image_basis, s.image_basis * g * s.projector);
}

FqMatrix condense_element(const CondensationSetup& s, const Word& g) { return condense_matrix(s, eval_word(s.ambient, g)); }

Representation CondensedAlgebraSlice::module(gfla::FieldPtr f, std::string label) const {
    std::size_t n = gens.empty() ? 0 : gens[0].rows();
    return Representation(std::move(f), n, gens, std::move(label));
}

CondensedAlgebraSlice condense_slice(const CondensationSetup& s, const std::vector<Word>& gs, bool known_full) {
    CondensedAlgebraSlice out;
    out.known_full = known_full;
    for (const auto& w : gs) {
        out.gens.push_back(condense_element(s, w));
        out.words.push_back(w);
    }
    return out;
}

CondensedAlgebraSlice double_coset_slice(const CondensationSetup& s, const grp::PermGroup& g,
                                         const std::vector<grp::Perm>& k_gens) {
    auto dc = grp::double_cosets(g, k_gens);
    std::vector<Word> ws;
    for (auto r : dc.reps) ws.push_back(g.word(r));
    return condense_slice(s, ws, true);
}

PermCondensation condense_perm(const std::vector<grp::Perm>& k_gens, const std::vector<grp::Perm>& elements,
                               gfla::FieldPtr f) {
    std::size_t n = !k_gens.empty() ? k_gens[0].size() : !elements.empty() ? elements[0].size() : 0;
    for (const auto& p : k_gens)
        if (p.size() != n) fail(Errc::ShapeMismatch, "permutations of different degree");
    for (const auto& p : elements)
        if (p.size() != n) fail(Errc::ShapeMismatch, "permutations of different degree");
    PermCondensation pc;
    pc.k_order = k_gens.empty() ? 1 : grp::enumerate(k_gens, kMaxSubgroupOrder).order();
    const auto& F = *f;
    inverse_order(F, pc.k_order);

    pc.orbit_of.assign(n, SIZE_MAX);
    for (std::size_t x = 0; x < n; ++x) {
        if (pc.orbit_of[x] != SIZE_MAX) continue;
        std::size_t id = pc.orbits.size();
        std::vector<std::size_t> orb{x};
        pc.orbit_of[x] = id;
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const auto& k : k_gens) {
                std::size_t y = k[orb[i]];
                if (pc.orbit_of[y] == SIZE_MAX) {
                    pc.orbit_of[y] = id;
                    orb.push_back(y);
                }
            }
        std::sort(orb.begin(), orb.end());
        pc.orbits.push_back(std::move(orb));
    }
    std::size_t r = pc.orbits.size();
    std::vector<gfla::Fq> inv_len(r);
    for (std::size_t j = 0; j < r; ++j) inv_len[j] = F.inv(F.from_int(std::int64_t(pc.orbits[j].size() % F.p())));

    for (const auto& g : elements) {
        FqMatrix m(f, r, r);
        std::vector<std::size_t> cnt(r);
        for (std::size_t i = 0; i < r; ++i) {
            std::fill(cnt.begin(), cnt.end(), 0);
            for (auto x : pc.orbits[i]) ++cnt[pc.orbit_of[g[x]]];
            for (std::size_t j = 0; j < r; ++j)
                if (cnt[j]) m.set(i, j, F.mul(F.from_int(std::int64_t(cnt[j] % F.p())), inv_len[j]));
        }
        pc.slice.gens.push_back(std::move(m));
    }
    return pc;
}

TensorCondensation make_tensor_condensation(const Representation& a, const Representation& b, const std::vector<Word>& k) {
    if (!gfla::same_field(a.F(), b.F())) fail(Errc::FieldMismatch, "tensor factors over different fields");
    if (a.ngens() != b.ngens()) fail(Errc::GeneratorCountMismatch, "tensor factors with different generator counts");
    TensorCondensation t{a, b, {}, {}};
    std::size_t da = a.dim, db = b.dim;
    std::vector<FqMatrix> ka, kb, kab;
    for (const auto& w : k) {
        ka.push_back(eval_word(a, w));
        kb.push_back(eval_word(b, w));
        FqMatrix m(a.field, da + db, da + db);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < da; ++j) m.set(i, j, ka.back().at(i, j));
        for (std::size_t i = 0; i < db; ++i)
            for (std::size_t j = 0; j < db; ++j) m.set(da + i, da + j, kb.back().at(i, j));
        kab.push_back(std::move(m));
    }
    for (const auto& m : closure(a.field, da + db, kab))
        t.k_elements.emplace_back(m.block(0, da, 0, da), m.block(da, da + db, da, da + db));
    inverse_order(a.F(), t.k_elements.size());

    // K-fixed points of a x b are the K-homomorphisms a* -> b
    auto fixed = rep::hom(rep::dual(Representation(a.field, da, ka)), Representation(b.field, db, kb));
    FqMatrix flat(a.field, fixed.size(), da * db);
    for (std::size_t r = 0; r < fixed.size(); ++r)
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j) flat.set(r, i * db + j, fixed[r].at(i, j));
    t.basis = gfla::row_space(flat);
    return t;
}

FqMatrix condense_tensor(const TensorCondensation& t, const Word& g) {
    std::size_t da = t.a.dim, db = t.b.dim;
    const auto& F = t.a.F();
    FqMatrix ag = gfla::transpose(eval_word(t.a, g)), bg = eval_word(t.b, g);
    std::vector<FqMatrix> kat;
    for (const auto& [ka, kb] : t.k_elements) kat.push_back(gfla::transpose(ka));
    gfla::Fq inv = inverse_order(F, t.k_elements.size());
    FqMatrix img(t.a.field, t.rank(), da * db);
    for (std::size_t r = 0; r < t.rank(); ++r) {
        FqMatrix x(t.a.field, da, db);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j) x.set(i, j, t.basis.at(r, i * db + j));
        FqMatrix y = ag * x * bg;
        FqMatrix z(t.a.field, da, db);
        for (std::size_t k = 0; k < kat.size(); ++k) z = z + kat[k] * y * t.k_elements[k].second;
        z = gfla::scalar_mul(inv, z);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j) img.set(r, i * db + j, z.at(i, j));
    }
    return coords(t.basis, img);
}

FqMatrix condense_tensor(const Representation& a, const Representation& b, const std::vector<Word>& k, const Word& g) {
    return condense_tensor(make_tensor_condensation(a, b, k), g);
}

FqMatrix embed(const CondensationSetup& s, const FqMatrix& c) {
    if (c.cols() != s.rank()) fail(Errc::ShapeMismatch, "coordinates of the wrong length");
    if (c.rows() == 0) return FqMatrix(s.ambient.field, 0, s.ambient.dim);
    return c * s.image_basis;
}

FqMatrix uncondense(const CondensationSetup& s, const FqMatrix& u) {
    if (u.cols() != s.ambient.dim) fail(Errc::ShapeMismatch, "vectors of the wrong length");
    if (u.rows() == 0) return FqMatrix(s.ambient.field, 0, s.ambient.dim);
    if (u * s.projector != u) fail(Errc::NotInImage, "vector outside Ve");
    return rep::spin(s.ambient, u);
}

FqMatrix condense_subspace(const CondensationSetup& s, const FqMatrix& w) {
    if (w.cols() != s.ambient.dim) fail(Errc::ShapeMismatch, "vectors of the wrong length");
    if (w.rows() == 0) return FqMatrix(s.ambient.field, 0, s.rank());
    return coords(s.image_basis, gfla::row_space(w * s.projector));
}

std::size_t condensed_dim(const ctab::CharTable& k_table, const std::vector<std::size_t>& fusion,
                          const std::vector<cyclo::Cyclotomic>& chi) {
    if (!k_table.has_class_data()) fail(Errc::ShapeMismatch, "subgroup table needs class sizes");
    if (fusion.size() != k_table.nclasses())
        fail(Errc::FusionIncomplete, "fusion has " + std::to_string(fusion.size()) + " entries for " +
                                         std::to_string(k_table.nclasses()) + " classes");
    cyclo::Cyclotomic s;
    for (std::size_t d = 0; d < fusion.size(); ++d) {
        if (fusion[d] >= chi.size()) fail(Errc::FusionIncomplete, "fusion target out of range");
        s += cyclo::Cyclotomic(cyclo::Rational(k_table.classes[d].size)) * chi[fusion[d]];
    }
    s = s / cyclo::Rational(k_table.order);
    if (!s.is_integer() || s.integer() < 0) fail(Errc::InvalidArgument, "multiplicity " + s.to_string() + " is not a count");
    return s.integer().convert_to<std::size_t>();
}

std::vector<std::size_t> class_fusion(const grp::PermGroup& k, const grp::ClassData& kcd, const grp::PermGroup& g,
                                      const grp::ClassData& gcd) {
    std::vector<std::size_t> f;
    for (auto r : kcd.reps) {
        auto i = g.index_of(k.element(r));
        if (!i) fail(Errc::NotSubgroup, "subgroup element outside the group");
        f.push_back(gcd.class_of[*i]);
    }
    return f;
}

}  // namespace modat::cond
