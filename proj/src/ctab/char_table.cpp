#include "modat/ctab/char_table.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "modat/error.hpp"

namespace modat::ctab {

namespace {

std::uint64_t lcm_conductor(const std::vector<Cyclotomic>& v, std::uint64_t n = 1) {
    for (const auto& x : v) n = std::lcm(n, x.conductor());
    return n;
}

void same_length(const Character& a, const Character& b) {
    if (a.values.size() != b.values.size())
        fail(Errc::ShapeMismatch, "characters of different length " + std::to_string(a.values.size()) + " and " +
                                      std::to_string(b.values.size()));
}

Rational as_rational(const Cyclotomic& x, const char* what) {
    if (!x.is_rational()) fail(Errc::InvalidArgument, std::string(what) + " is not rational: " + x.to_string());
    return x.rational();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1, r = std::int64_t(m), nr = std::int64_t(a % m);
    while (nr) {
        std::int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) fail(Errc::InvalidArgument, "not invertible");
    return std::uint64_t(t < 0 ? t + std::int64_t(m) : t);
}

}  // namespace

std::string kind_name(CharKind k) {
    switch (k) {
        case CharKind::Ordinary: return "ordinary";
        case CharKind::Brauer: return "brauer";
        case CharKind::Projective: return "projective";
        case CharKind::Virtual: return "virtual";
    }
    return "?";
}

CharKind parse_kind(const std::string& s) {
    if (s == "ordinary") return CharKind::Ordinary;
    if (s == "brauer") return CharKind::Brauer;
    if (s == "projective") return CharKind::Projective;
    if (s == "virtual") return CharKind::Virtual;
    fail(Errc::Format, "unknown character kind '" + s + "'");
}

bool CharTable::has_class_data() const {
    if (classes.empty()) return false;
    Integer s = 0;
    for (const auto& c : classes) s += c.size;
    return s == order;
}

std::vector<std::size_t> CharTable::regular_classes() const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (p == 0 || classes[i].p_regular) r.push_back(i);
    return r;
}

void CharTable::validate() const {
    if (order <= 0) fail(Errc::InvalidArgument, "group order must be positive");
    for (const auto& ch : chars) {
        if (ch.values.size() != classes.size())
            fail(Errc::ShapeMismatch, "character '" + ch.name + "' has " + std::to_string(ch.values.size()) +
                                          " values for " + std::to_string(classes.size()) + " classes");
        if (ch.kind != CharKind::Virtual && ch.kind != CharKind::Brauer &&
            (!ch.degree().is_integer() || ch.degree().integer() < 0))
            fail(Errc::InvalidArgument, "degree of '" + ch.name + "' is not a nonnegative integer");
    }
    if (!chars.empty() && has_class_data())
        for (const auto& v : chars.front().values)
            if (v != Cyclotomic(1)) fail(Errc::InvalidArgument, "first character is not trivial");
}

CharTable table_from_group(const grp::PermGroup& g, const grp::ClassData& cd, std::vector<Character> chars) {
    CharTable t;
    t.order = Integer(g.order());
    t.p = cd.p;
    for (std::size_t c = 0; c < cd.count(); ++c)
        t.classes.push_back({Integer(cd.sizes[c]), cd.orders[c], cd.labels[c], cd.p_regular[c]});
    t.chars = std::move(chars);
    return t;
}

CharTable with_prime(CharTable t, std::uint32_t p, const std::vector<std::uint64_t>* orders) {
    if (orders && orders->size() != t.classes.size()) fail(Errc::ShapeMismatch, "element orders per class");
    t.p = p;
    for (std::size_t c = 0; c < t.classes.size(); ++c) {
        if (orders) t.classes[c].order = (*orders)[c];
        t.classes[c].p_regular = p == 0 || t.classes[c].order % p != 0;
    }
    return t;
}

Rational scalar(const CharTable& t, const Character& chi, const Character& psi) {
    same_length(chi, psi);
    if (chi.values.size() != t.classes.size() || !t.has_class_data())
        fail(Errc::ShapeMismatch, "scalar product needs full class data");
    Cyclotomic s;
    for (std::size_t c = 0; c < t.classes.size(); ++c)
        s += Cyclotomic(Rational(t.classes[c].size)) * chi.values[c] * psi.values[c].conj();
    return as_rational(s, "scalar product") / Rational(t.order);
}

Rational scalar_p_regular(const CharTable& t, const Character& chi, const Character& psi) {
    same_length(chi, psi);
    if (!t.has_class_data()) fail(Errc::ShapeMismatch, "scalar product needs full class data");
    if (t.p == 0) fail(Errc::MissingPrime, "table carries no prime");
    auto reg = t.regular_classes();
    bool full = chi.values.size() == t.classes.size();
    if (!full && chi.values.size() != reg.size())
        fail(Errc::ShapeMismatch, "values neither on all classes nor on the p-regular ones");
    Cyclotomic s;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        std::size_t k = full ? reg[i] : i;
        s += Cyclotomic(Rational(t.classes[reg[i]].size)) * chi.values[k] * psi.values[k].conj();
    }
    return as_rational(s, "scalar product") / Rational(t.order);
}

bool rows_orthogonal(const CharTable& t) {
    for (std::size_t i = 0; i < t.chars.size(); ++i)
        for (std::size_t j = i; j < t.chars.size(); ++j)
            if (scalar(t, t.chars[i], t.chars[j]) != (i == j ? 1 : 0)) return false;
    return true;
}

bool columns_orthogonal(const CharTable& t) {
    if (t.chars.size() != t.classes.size()) return false;
    for (std::size_t a = 0; a < t.classes.size(); ++a)
        for (std::size_t b = a; b < t.classes.size(); ++b) {
            Cyclotomic s;
            for (const auto& ch : t.chars) s += ch.values[a] * ch.values[b].conj();
            Cyclotomic want = a == b ? Cyclotomic(Rational(t.centralizer(a))) : Cyclotomic(0);
            if (s != want) return false;
        }
    return true;
}

Character restrict_p_regular(const CharTable& t, const Character& chi) {
    if (t.p == 0) fail(Errc::MissingPrime, "table carries no prime");
    if (chi.values.size() != t.classes.size()) fail(Errc::ShapeMismatch, "character length differs from class count");
    Character r;
    r.kind = chi.kind == CharKind::Ordinary ? CharKind::Brauer : CharKind::Virtual;
    r.name = chi.name.empty() ? chi.name : chi.name + "'";
    for (std::size_t c : t.regular_classes()) r.values.push_back(chi.values[c]);
    return r;
}

Character product(const Character& a, const Character& b) {
    same_length(a, b);
    Character r;
    r.kind = a.kind == b.kind ? a.kind : CharKind::Virtual;
    if (a.kind == CharKind::Projective || b.kind == CharKind::Projective) r.kind = CharKind::Projective;
    if (a.kind == CharKind::Virtual || b.kind == CharKind::Virtual) r.kind = CharKind::Virtual;
    for (std::size_t i = 0; i < a.values.size(); ++i) r.values.push_back(a.values[i] * b.values[i]);
    return r;
}

Character scale(const Character& a, const Rational& c) {
    Character r = a;
    for (auto& v : r.values) v = v * Cyclotomic(c);
    if (c < 0 || denominator(c) != 1) r.kind = CharKind::Virtual;
    return r;
}

Character add(const Character& a, const Character& b) {
    same_length(a, b);
    Character r = a;
    for (std::size_t i = 0; i < a.values.size(); ++i) r.values[i] += b.values[i];
    if (a.kind != b.kind) r.kind = CharKind::Virtual;
    return r;
}

Character induce(const CharTable& sub, const CharTable& g, const std::vector<std::size_t>& fusion, const Character& chi) {
    if (fusion.size() != sub.classes.size())
        fail(Errc::FusionIncomplete, "fusion map has " + std::to_string(fusion.size()) + " entries for " +
                                         std::to_string(sub.classes.size()) + " classes");
    if (chi.values.size() != sub.classes.size()) fail(Errc::ShapeMismatch, "character length differs from class count");
    if (!sub.has_class_data() || !g.has_class_data()) fail(Errc::ShapeMismatch, "induction needs full class data");
    if (g.order % sub.order != 0) fail(Errc::FusionIncomplete, "subgroup order does not divide group order");
    std::vector<Cyclotomic> acc(g.classes.size());
    std::vector<Integer> hit(g.classes.size());
    for (std::size_t d = 0; d < fusion.size(); ++d) {
        std::size_t c = fusion[d];
        if (c >= g.classes.size()) fail(Errc::FusionIncomplete, "fusion target out of range");
        if (sub.classes[d].order != g.classes[c].order)
            fail(Errc::FusionIncomplete, "class " + sub.classes[d].label + " fuses to a class of different order");
        acc[c] += Cyclotomic(Rational(sub.classes[d].size)) * chi.values[d];
        hit[c] += sub.classes[d].size;
    }
    Character r;
    r.kind = chi.kind;
    r.name = chi.name.empty() ? "" : "Ind(" + chi.name + ")";
    Rational idx(g.order / sub.order);
    for (std::size_t c = 0; c < g.classes.size(); ++c) {
        if (hit[c] > g.classes[c].size) fail(Errc::FusionIncomplete, "class " + g.classes[c].label + " overfilled");
        r.values.push_back(acc[c] * Cyclotomic(idx / Rational(g.classes[c].size)));
    }
    return r;
}

std::vector<Rational> expand(const CharTable& t, const Character& psi) {
    std::vector<Rational> c;
    Character back;
    back.values.assign(psi.values.size(), Cyclotomic(0));
    for (const auto& chi : t.chars) {
        c.push_back(scalar(t, psi, chi));
        back = add(back, scale(chi, c.back()));
    }
    if (back.values != psi.values) fail(Errc::NotExpandable, "not a combination of the table's characters");
    return c;
}

unsigned nu(const Integer& n, std::uint32_t p) {
    if (n == 0) fail(Errc::InvalidArgument, "valuation of zero");
    Integer m = abs(n);
    unsigned e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return e;
}

ModularReduction::ModularReduction(std::uint32_t p, std::uint64_t conductor) : p_(p), n_(conductor) {
    std::uint64_t np = n_;
    std::uint64_t pa = 1;
    while (np % p == 0) {
        np /= p;
        pa *= p;
    }
    std::uint32_t m = np == 1 ? 1 : gfla::order_mod(p, np);
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > gfla::kMaxFieldOrder)
            fail(Errc::FieldTooLarge, "reduction of Q(zeta_" + std::to_string(n_) + ") needs GF(" + std::to_string(p) +
                                          "^" + std::to_string(m) + ")");
    }
    f_ = gfla::field_make(p, m);
    gfla::Fq theta = f_->exp((q - 1) / np);
    if (f_->order(theta) != np) fail(Errc::IdealChoiceFailure, "no primitive root of unity of order " + std::to_string(np));
    // zeta_n^(p^a) = zeta_n', so zeta_n goes to theta^(1/p^a)
    zeta_ = f_->pow(theta, np == 1 ? 0 : inv_mod(pa % np, np));
}

gfla::Fq ModularReduction::operator()(const Cyclotomic& x) const {
    if (n_ % x.conductor() != 0) fail(Errc::IdealChoiceFailure, "value outside the reduction's field");
    auto c = x.coeffs_at(n_);
    const auto& F = *f_;
    gfla::Fq r = 0, zp = 1;
    for (const auto& a : c) {
        if (a != 0) {
            Integer num = numerator(a), den = denominator(a);
            if (den % p_ == 0) fail(Errc::IdealChoiceFailure, "coefficient not integral at p: " + x.to_string());
            auto red = [&](const Integer& z) {
                Integer m = z % p_;
                if (m < 0) m += p_;
                return F.from_int(m.convert_to<std::int64_t>());
            };
            r = F.add(r, F.mul(zp, F.div(red(num), red(den))));
        }
        zp = F.mul(zp, zeta_);
    }
    return r;
}

BlockData blocks(const CharTable& t, std::uint32_t p) {
    if (p == 0 || !gfla::is_prime(p)) fail(Errc::MissingPrime, "blocks need a prime");
    if (!t.has_class_data()) fail(Errc::ShapeMismatch, "blocks need class sizes");
    for (const auto& ch : t.chars)
        if (ch.values.size() != t.nclasses()) fail(Errc::ShapeMismatch, "blocks need values on every class");
    BlockData b;
    b.p = p;
    unsigned np = nu(t.order, p);
    if (np == 0) {
        for (std::size_t i = 0; i < t.chars.size(); ++i) b.blocks.push_back({i});
    } else {
        std::uint64_t n = 1;
        for (const auto& ch : t.chars) n = lcm_conductor(ch.values, n);
        ModularReduction red(p, n);
        std::map<std::vector<gfla::Fq>, std::size_t> seen;
        for (std::size_t i = 0; i < t.chars.size(); ++i) {
            const auto& ch = t.chars[i];
            Rational deg = as_rational(ch.degree(), "degree");
            std::vector<gfla::Fq> w;
            for (std::size_t c = 0; c < t.classes.size(); ++c)
                w.push_back(red(ch.values[c] * Cyclotomic(Rational(t.classes[c].size) / deg)));
            auto it = seen.find(w);
            if (it == seen.end()) {
                seen.emplace(w, b.blocks.size());
                b.blocks.push_back({i});
            } else {
                b.blocks[it->second].push_back(i);
            }
        }
    }
    return blocks_from_partition(t, p, std::move(b.blocks));
}

BlockData blocks_from_partition(const CharTable& t, std::uint32_t p, std::vector<std::vector<std::size_t>> parts) {
    BlockData b;
    b.p = p;
    b.block_of.assign(t.chars.size(), SIZE_MAX);
    for (std::size_t k = 0; k < parts.size(); ++k)
        for (std::size_t i : parts[k]) {
            if (i >= t.chars.size() || b.block_of[i] != SIZE_MAX)
                fail(Errc::InvalidArgument, "block partition repeats or exceeds character " + std::to_string(i + 1));
            b.block_of[i] = k;
        }
    unsigned np = nu(t.order, p);
    for (const auto& part : parts) {
        if (part.empty()) fail(Errc::InvalidArgument, "empty block");
        unsigned mn = np;
        for (std::size_t i : part) mn = std::min(mn, nu(t.chars[i].degree().integer(), p));
        b.defect.push_back(np - mn);
    }
    b.blocks = std::move(parts);
    b.l.assign(b.blocks.size(), std::nullopt);
    for (std::size_t k = 0; k < b.blocks.size(); ++k)
        if (b.defect[k] == 0) b.l[k] = 1;
    return b;
}

std::vector<int> heights(const BlockData& b, const CharTable& t) {
    std::vector<int> h(t.chars.size(), 0);
    unsigned np = nu(t.order, b.p);
    for (std::size_t k = 0; k < b.blocks.size(); ++k)
        for (std::size_t i : b.blocks[k])
            h[i] = int(nu(t.chars[i].degree().integer(), b.p)) - int(np - b.defect[k]);
    return h;
}

Character block_project(const CharTable& t, const BlockData& b, std::size_t block, const Character& psi) {
    if (block >= b.blocks.size()) fail(Errc::InvalidArgument, "no block " + std::to_string(block));
    auto c = expand(t, psi);
    Character r;
    r.kind = psi.kind;
    r.name = psi.name;
    r.values.assign(psi.values.size(), Cyclotomic(0));
    for (std::size_t i : b.blocks[block]) r = add(r, scale(t.chars[i], c[i]));
    r.kind = psi.kind;
    return r;
}

std::vector<Integer> decompose_basic(const std::vector<Cyclotomic>& theta, const BasicSet& bs) {
    if (bs.members.empty()) fail(Errc::InvalidArgument, "empty basic set");
    std::size_t len = theta.size();
    std::uint64_t n = lcm_conductor(theta);
    for (const auto& m : bs.members) {
        if (m.values.size() != len) fail(Errc::ShapeMismatch, "basic set member '" + m.name + "' has another length");
        n = lcm_conductor(m.values, n);
    }
    std::size_t phi = cyclo::euler_phi(n);
    std::size_t rows = len * phi, cols = bs.members.size();
    QMatrix a(rows, QVector(cols));
    QVector rhs(rows);
    for (std::size_t c = 0; c < len; ++c) {
        auto tc = theta[c].coeffs_at(n);
        for (std::size_t k = 0; k < phi; ++k) rhs[c * phi + k] = tc[k];
        for (std::size_t j = 0; j < cols; ++j) {
            auto mc = bs.members[j].values[c].coeffs_at(n);
            for (std::size_t k = 0; k < phi; ++k) a[c * phi + k][j] = mc[k];
        }
    }
    auto sol = q_solve(a, rhs);
    if (sol.status == SolveStatus::Inconsistent) fail(Errc::NotInSpan, "character not in the span of the basic set");
    if (sol.status == SolveStatus::Underdetermined) fail(Errc::InvalidArgument, "basic set members are dependent");
    if (!all_integral(sol.x)) {
        std::string s;
        for (const auto& v : sol.x) s += (s.empty() ? "" : ",") + v.str();
        fail(Errc::NonIntegral, "non-integral coefficients (" + s + ")");
    }
    return to_z(sol.x);
}

std::vector<Integer> decompose_basic(const Character& theta, const BasicSet& bs) {
    return decompose_basic(theta.values, bs);
}

CliffordResult clifford_index2(const ZMatrix& d, const std::vector<std::size_t>& act,
                               const std::vector<OrdinaryFusion>& fusion, std::uint32_t p,
                               const std::vector<Integer>* degrees, bool morita) {
    std::size_t nb = act.size();
    for (const auto& row : d)
        if (row.size() != nb) fail(Errc::ShapeMismatch, "decomposition rows and action differ in length");
    for (std::size_t i = 0; i < nb; ++i)
        if (act[i] >= nb || act[act[i]] != i) fail(Errc::ActionNotInvolution, "action is not an involution at " + std::to_string(i + 1));
    if (degrees && degrees->size() != d.size()) fail(Errc::ShapeMismatch, "one degree per ordinary character");

    CliffordResult r;
    bool odd = p != 2;
    std::vector<std::size_t> first_col(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        if (act[i] < i) continue;
        bool inv = act[i] == i;
        first_col[i] = r.column_source.size();
        if (inv && odd) {
            r.column_source.push_back({i});
            r.column_sign.push_back(1);
            r.column_source.push_back({i});
            r.column_sign.push_back(-1);
        } else {
            r.column_source.push_back(inv ? std::vector<std::size_t>{i} : std::vector<std::size_t>{i, act[i]});
            r.column_sign.push_back(0);
        }
    }
    r.l = r.column_source.size();

    auto invariant_row = [&](std::size_t a) {
        for (std::size_t i = 0; i < nb; ++i)
            if (d[a][act[i]] != d[a][i]) return false;
        return true;
    };

    for (const auto& f : fusion) {
        if (f.a >= d.size() || (f.type == OrdinaryFusion::Type::Induced && f.b >= d.size()))
            fail(Errc::InvalidArgument, "fusion refers to a missing character");
        std::vector<Integer> row(r.l, 0);
        bool det = true;
        if (f.type == OrdinaryFusion::Type::Extension) {
            if (!invariant_row(f.a))
                fail(Errc::FusionDegreeMismatch, "row " + std::to_string(f.a + 1) + " is not invariant but extends");
            for (std::size_t i = 0; i < nb; ++i) {
                if (act[i] < i) continue;
                std::size_t c = first_col[i];
                if (act[i] != i || !odd) {
                    row[c] = d[f.a][i];
                } else if (morita) {
                    row[f.sign >= 0 ? c : c + 1] = d[f.a][i];
                } else {
                    row[f.sign >= 0 ? c : c + 1] = d[f.a][i];
                    if (d[f.a][i] != 0) det = false;
                }
            }
        } else {
            const auto& ra = d[f.a];
            const auto& rb = d[f.b];
            if (degrees && (*degrees)[f.a] != (*degrees)[f.b])
                fail(Errc::FusionDegreeMismatch, "fused characters " + std::to_string(f.a + 1) + " and " +
                                                     std::to_string(f.b + 1) + " differ in degree");
            for (std::size_t i = 0; i < nb; ++i)
                if (rb[act[i]] != ra[i])
                    fail(Errc::FusionDegreeMismatch, "rows " + std::to_string(f.a + 1) + " and " +
                                                         std::to_string(f.b + 1) + " are not conjugate");
            for (std::size_t i = 0; i < nb; ++i) {
                if (act[i] < i) continue;
                std::size_t c = first_col[i];
                if (act[i] != i) {
                    row[c] = ra[i] + rb[i];
                } else if (odd) {
                    row[c] = ra[i];
                    row[c + 1] = ra[i];
                } else {
                    row[c] = ra[i] + rb[i];
                }
            }
        }
        r.d.push_back(std::move(row));
        r.row_determined.push_back(det);
    }
    return r;
}

}  // namespace modat::ctab
