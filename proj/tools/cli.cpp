#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "modat/cond/condense.hpp"
#include "modat/ctab/char_table.hpp"
#include "modat/dxm/dxm.hpp"
#include "modat/error.hpp"
#include "modat/io/formats.hpp"

#ifndef MODAT_FIXTURE_DIR
#define MODAT_FIXTURE_DIR "fixtures"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace modat::cli {

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) fail(Errc::Io, "sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

namespace {

// bad command line; reported like a format problem
struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ctab::Integer;
using ctab::ZMatrix;
using ZVector = std::vector<Integer>;

std::string fixture_dir() {
    if (const char* e = std::getenv("MODAT_FIXTURES"); e && *e) return e;
    return MODAT_FIXTURE_DIR;
}

std::string strip_code(const Error& e) {
    std::string w = e.what();
    auto n = e.name().size() + 2;
    return w.size() >= n ? w.substr(n) : w;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string str(const Integer& z) { return z.str(); }

struct Ctx {
    std::uint64_t seed = 1;
    std::string field, out, log, workspace;
    std::vector<std::pair<std::string, std::string>> inputs;  // as given, sha256
    std::string artifact;
    std::ostringstream err;

    std::string resolve(const std::string& p, bool input) const {
        if (p.rfind("fixture:", 0) == 0) return (fs::path(fixture_dir()) / p.substr(8)).string();
        fs::path q(p);
        if (!q.is_absolute() && !workspace.empty()) q = fs::path(workspace) / q;
        if (input && !fs::exists(q) && p.rfind("fixtures/", 0) == 0) {
            auto f = fs::path(fixture_dir()) / p.substr(9);
            if (fs::exists(f)) return f.string();
        }
        return q.string();
    }

    std::string load(const std::string& p) {
        if (p.empty()) throw Usage("missing input path");
        std::string text;
        try {
            text = io::read_file(resolve(p, true));
        } catch (const Error& e) {
            fail(e.code(), p + ": " + strip_code(e));
        }
        inputs.push_back({p, sha256_hex(text)});
        return text;
    }

    template <class F>
    auto parse(const std::string& p, F f) {
        auto text = load(p);
        try {
            return f(text);
        } catch (const Error& e) {
            fail(e.code(), p + ": " + strip_code(e));
        }
    }

    gfla::FieldPtr field_ptr() const {
        if (field.empty()) throw Usage("--field p,k is required");
        std::uint32_t p = 0, k = 1;
        char comma = 0;
        std::istringstream in(field);
        if (!(in >> p)) throw Usage("bad --field '" + field + "'");
        if (in >> comma) {
            if (comma != ',' || !(in >> k)) throw Usage("bad --field '" + field + "'");
        }
        return gfla::field_make(p, k);
    }
};

// ---- option bundles
struct Opts {
    std::string a, b, op = "mul", in, rep, seeds, group, sub, elem, vecs, table, dec, of, clifford, cartan, state, edec,
        psi, degrees, atom, column, name = "Psi'", block = "B", manifest;
    std::vector<std::string> gens, sub_gens, pins, names, columns;
    std::size_t rows = 0, cols = 0, index = 1, chr = 0, block_index = 1, choose = 0;
    std::uint32_t p = 0;
    std::string atom_degree;
    bool elements = false, indecomposable = false;
    std::string fixture;
};

std::vector<grp::Perm> perms_from_cycles(const std::vector<std::string>& cycles) {
    std::size_t n = 0;
    for (const auto& c : cycles) n = std::max(n, grp::parse_cycles(c, 0).size());
    std::vector<grp::Perm> out;
    for (const auto& c : cycles) out.push_back(grp::parse_cycles(c, n));
    return out;
}

std::vector<grp::Perm> load_gens(Ctx& c, const std::string& path, const std::vector<std::string>& cycles, const char* what) {
    if (!path.empty()) return c.parse(path, io::parse_prm);
    if (!cycles.empty()) return perms_from_cycles(cycles);
    throw Usage(std::string("missing ") + what);
}

grp::PermGroup load_group(Ctx& c, const Opts& o) { return grp::enumerate(load_gens(c, o.group, o.gens, "--group or --gen")); }

std::vector<grp::Perm> pad(std::vector<grp::Perm> ps, std::size_t n) {
    for (auto& p : ps) {
        if (p.size() > n) fail(Errc::NotSubgroup, "subgroup generator moves points outside the group");
        for (std::size_t i = p.size(); i < n; ++i) p.push_back(std::uint32_t(i));
    }
    return ps;
}

std::vector<grp::Perm> load_sub(Ctx& c, const Opts& o, const grp::PermGroup& g) {
    return pad(load_gens(c, o.sub, o.sub_gens, "--sub or --sub-gen"), g.degree());
}

std::size_t element_index(const grp::PermGroup& g, const std::string& cycles) {
    auto p = pad({grp::parse_cycles(cycles, 0)}, g.degree())[0];
    auto i = g.index_of(p);
    if (!i) fail(Errc::InvalidArgument, "element " + cycles + " is not in the group");
    return *i;
}

ctab::CharTable table_with_p(ctab::CharTable t, std::uint32_t p) {
    if (p != 0 && p != t.p) t = ctab::with_prime(std::move(t), p);
    if (t.p == 0) throw Usage("a prime is needed: --p");
    return t;
}

// block-theoretic commands look at the ordinary characters only
ctab::CharTable ordinary_part(ctab::CharTable t) {
    std::erase_if(t.chars, [](const auto& ch) { return ch.kind != ctab::CharKind::Ordinary; });
    return t;
}

std::vector<std::size_t> of_kind(const ctab::CharTable& t, ctab::CharKind k) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.chars.size(); ++i)
        if (t.chars[i].kind == k) out.push_back(i);
    return out;
}

std::size_t name_index(const std::vector<std::string>& names, const std::string& n, const char* what) {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) fail(Errc::InvalidArgument, std::string(what) + " '" + n + "' not found");
    return std::size_t(it - names.begin());
}

// ---- commands; each returns the artifact text
using Cmd = std::function<std::string(Ctx&, Opts&)>;

std::string cmd_field(Ctx& c, Opts&) {
    auto f = c.field_ptr();
    auto prime = gfla::field_make(f->p(), 1);
    std::vector<gfla::Fq> cw(f->conway().begin(), f->conway().end());
    std::ostringstream s;
    s << "FIELD q=" << f->q() << " p=" << f->p() << " k=" << f->k() << "\n";
    s << "conway " << gfla::FqPolynomial(prime, cw).to_string() << "\n";
    s << "generator " << f->generator() << "\n";
    return s.str();
}

std::string cmd_mat_arith(Ctx& c, Opts& o) {
    auto a = c.parse(o.a, io::parse_mtx), b = c.parse(o.b, io::parse_mtx);
    gfla::ArithKind k;
    if (o.op == "add") k = gfla::ArithKind::Add;
    else if (o.op == "mul") k = gfla::ArithKind::Mul;
    else if (o.op == "kron") k = gfla::ArithKind::Kron;
    else throw Usage("--op must be add, mul or kron");
    return io::format_mtx(gfla::mat_arith(a, b, k));
}

std::string cmd_mat_echelon(Ctx& c, Opts& o) {
    auto a = c.parse(o.a, io::parse_mtx);
    auto e = gfla::echelonize(a);
    c.err << "rank " << e.rank << "\n";
    return io::format_mtx(e.transformed.row_block(0, e.rank));
}

std::string cmd_mat_nullspace(Ctx& c, Opts& o) {
    auto n = gfla::nullspace(c.parse(o.a, io::parse_mtx));
    c.err << "nullity " << n.rows() << "\n";
    return io::format_mtx(n);
}

std::string cmd_mat_minpoly(Ctx& c, Opts& o) {
    auto m = gfla::min_poly(c.parse(o.a, io::parse_mtx));
    c.err << "degree " << m.degree() << "\n";
    return m.to_string() + "\n";
}

std::string cmd_mat_import(Ctx& c, Opts& o) { return io::format_mtx(c.parse(o.in, io::parse_meataxe)); }

std::string cmd_mat_random(Ctx& c, Opts& o) {
    std::mt19937_64 rng(c.seed);
    return io::format_mtx(gfla::random_matrix(c.field_ptr(), o.rows, o.cols, rng));
}

std::string cmd_rep_perm(Ctx& c, Opts& o) { return io::format_rep(grp::perm_rep(load_group(c, o), c.field_ptr())); }
std::string cmd_rep_regular(Ctx& c, Opts& o) { return io::format_rep(grp::regular_rep(load_group(c, o), c.field_ptr())); }

std::string cmd_rep_chop(Ctx& c, Opts& o) {
    auto r = c.parse(o.rep, io::parse_rep);
    auto f = rep::chop(r, c.seed);
    for (const auto& x : f) c.err << x.name << " dim " << x.simple.dim << " x" << x.multiplicity << "\n";
    return rep::chop_summary(f) + "\n";
}

std::string cmd_rep_spin(Ctx& c, Opts& o) {
    auto r = c.parse(o.rep, io::parse_rep);
    auto seeds = c.parse(o.seeds, io::parse_mtx);
    auto s = rep::spin(r, seeds);
    c.err << "dim " << s.rows() << "\n";
    return io::format_mtx(s);
}

std::string cmd_rep_iso(Ctx& c, Opts& o) {
    auto a = c.parse(o.a, io::parse_rep);
    auto b = c.parse(o.b, io::parse_rep);
    auto t = rep::iso(a, b, c.seed);
    c.err << (t ? "isomorphic" : "not isomorphic") << "\n";
    return t ? io::format_mtx(*t) : "not isomorphic\n";
}

std::string cmd_rep_dual(Ctx& c, Opts& o) { return io::format_rep(rep::dual(c.parse(o.rep, io::parse_rep))); }

std::string cmd_rep_tensor(Ctx& c, Opts& o) {
    auto a = c.parse(o.a, io::parse_rep);
    auto b = c.parse(o.b, io::parse_rep);
    return io::format_rep(rep::tensor(a, b));
}

std::string cmd_rep_hom(Ctx& c, Opts& o) {
    auto a = c.parse(o.a, io::parse_rep);
    auto b = c.parse(o.b, io::parse_rep);
    auto h = rep::hom(a, b);
    c.err << "dim Hom " << h.size() << "\n";
    std::string s = "HOM n=" + std::to_string(h.size()) + "\n";
    for (const auto& m : h) s += io::format_mtx(m);
    return s;
}

std::string cmd_rep_socle(Ctx& c, Opts& o) {
    auto r = c.parse(o.rep, io::parse_rep);
    auto f = rep::chop(r, c.seed);
    std::vector<rep::Representation> simples;
    for (const auto& x : f) simples.push_back(x.simple);
    auto layers = rep::socle_series(r, simples, c.seed);
    std::string s = "SOCLE layers=" + std::to_string(layers.size()) + "\n";
    for (std::size_t i = 0; i < layers.size(); ++i) {
        s += "layer " + std::to_string(i + 1) + " dim=" + std::to_string(layers[i].dim);
        for (std::size_t j = 0; j < f.size(); ++j)
            if (layers[i].multiplicity[j]) s += " " + f[j].name + ":" + std::to_string(layers[i].multiplicity[j]);
        s += "\n";
    }
    return s;
}

std::string cmd_grp_enum(Ctx& c, Opts& o) {
    auto g = load_group(c, o);
    c.err << "order " << g.order() << "\n";
    if (o.elements) return io::format_prm(g.elements());
    return "GROUP order=" + std::to_string(g.order()) + " degree=" + std::to_string(g.degree()) + "\n";
}

std::string cmd_grp_classes(Ctx& c, Opts& o) {
    auto g = load_group(c, o);
    auto cd = grp::conjugacy_classes(g, o.p);
    std::string s = "CLASSES n=" + std::to_string(cd.count()) + " p=" + std::to_string(o.p) + "\n";
    for (std::size_t i = 0; i < cd.count(); ++i)
        s += cd.labels[i] + " size=" + std::to_string(cd.sizes[i]) + " order=" + std::to_string(cd.orders[i]) +
             " pregular=" + (cd.p_regular[i] ? "1" : "0") + " rep=" + grp::format_cycles(g.element(cd.reps[i])) + "\n";
    return s;
}

std::string cmd_grp_cosets(Ctx& c, Opts& o) {
    auto g = load_group(c, o);
    auto a = grp::coset_action(g, load_sub(c, o, g));
    c.err << "index " << a.reps.size() << "\n";
    return io::format_prm(a.gens);
}

std::string cmd_grp_dcosets(Ctx& c, Opts& o) {
    auto g = load_group(c, o);
    auto d = grp::double_cosets(g, load_sub(c, o, g));
    std::string s = "DCOSETS n=" + std::to_string(d.reps.size()) + "\n";
    for (std::size_t i = 0; i < d.reps.size(); ++i)
        s += grp::format_cycles(g.element(d.reps[i])) + " " + std::to_string(d.sizes[i]) + "\n";
    return s;
}

struct CondInputs {
    rep::Representation v;
    grp::PermGroup g;
    std::vector<grp::Perm> k;
    cond::CondensationSetup s;
};

CondInputs cond_inputs(Ctx& c, Opts& o) {
    CondInputs in;
    in.v = c.parse(o.rep, io::parse_rep);
    in.g = load_group(c, o);
    in.k = load_sub(c, o, in.g);
    if (in.v.ngens() != in.g.gens().size()) fail(Errc::GeneratorCountMismatch, "module and group have different generator counts");
    in.s = cond::make_idempotent(in.v, cond::words_of(in.g, in.k), cond::KInput::Generators);
    return in;
}

std::string cmd_cond_make(Ctx& c, Opts& o) {
    auto in = cond_inputs(c, o);
    c.err << "rank " << in.s.rank() << " |K| " << in.s.k_order << "\n";
    return io::format_mtx(in.s.image_basis);
}

std::string cmd_cond_elem(Ctx& c, Opts& o) {
    auto in = cond_inputs(c, o);
    if (o.elem.empty()) throw Usage("--elem is required");
    return io::format_mtx(cond::condense_element(in.s, in.g.word(element_index(in.g, o.elem))));
}

// double coset representatives and the group's generators
std::vector<grp::Perm> slice_elements(const grp::PermGroup& g, const std::vector<grp::Perm>& k) {
    std::vector<grp::Perm> out;
    for (auto i : grp::double_cosets(g, k).reps) out.push_back(g.element(i));
    for (const auto& x : g.gens()) out.push_back(x);
    return out;
}

std::string cmd_cond_perm(Ctx& c, Opts& o) {
    auto g = load_group(c, o);
    auto k = load_sub(c, o, g);
    auto f = c.field_ptr();
    auto pc = cond::condense_perm(k, slice_elements(g, k), f);
    c.err << "orbits " << pc.orbits.size() << "\n";
    return io::format_rep(pc.slice.module(f, "cond_perm"));
}

std::string cmd_cond_tensor(Ctx& c, Opts& o) {
    auto a = c.parse(o.a, io::parse_rep), b = c.parse(o.b, io::parse_rep);
    auto g = load_group(c, o);
    auto k = load_sub(c, o, g);
    auto t = cond::make_tensor_condensation(a, b, cond::words_of(g, k));
    std::vector<gfla::FqMatrix> gens;
    for (const auto& w : cond::words_of(g, slice_elements(g, k))) gens.push_back(cond::condense_tensor(t, w));
    c.err << "rank " << t.rank() << "\n";
    return io::format_rep(rep::Representation(a.field, t.rank(), std::move(gens), "cond_tensor"));
}

std::string cmd_cond_uncondense(Ctx& c, Opts& o) {
    auto in = cond_inputs(c, o);
    auto u = cond::uncondense(in.s, cond::embed(in.s, c.parse(o.vecs, io::parse_mtx)));
    c.err << "dim " << u.rows() << "\n";
    return io::format_mtx(u);
}

std::string cmd_cond_dim(Ctx& c, Opts& o) {
    auto v = c.parse(o.rep, io::parse_rep);
    auto g = load_group(c, o);
    auto k = load_sub(c, o, g);
    auto cd = grp::conjugacy_classes(g, v.F().p());
    auto kg = grp::subgroup(g, k);
    auto kcd = grp::conjugacy_classes(kg, 0);
    auto kt = ctab::ordinary_table(kg, kcd, c.seed);
    std::vector<cyclo::Cyclotomic> chi(cd.count());
    for (std::size_t i = 0; i < cd.count(); ++i)
        if (cd.p_regular[i]) chi[i] = cyclo::brauer_char_value(v, g.word(cd.reps[i]));
    auto n = cond::condensed_dim(kt, cond::class_fusion(kg, kcd, g, cd), chi);
    return "DIM " + std::to_string(n) + "\n";
}

std::string cmd_ctab_table(Ctx& c, Opts& o) {
    auto g = load_group(c, o);
    auto cd = grp::conjugacy_classes(g, o.p);
    auto t = ctab::ordinary_table(g, cd, c.seed);
    if (o.p) t = ctab::with_prime(std::move(t), o.p);
    c.err << "classes " << t.nclasses() << "\n";
    return io::format_ctb(t);
}

std::string cmd_ctab_brauer(Ctx& c, Opts& o) {
    if (!o.p) throw Usage("--p is required");
    auto g = load_group(c, o);
    auto cd = grp::conjugacy_classes(g, o.p);
    auto t = ctab::with_prime(ctab::ordinary_table(g, cd, c.seed), o.p);
    auto b = ctab::brauer_table(g, cd, c.seed);
    for (auto ch : b.chars) {
        ch.kind = ctab::CharKind::Brauer;
        t.chars.push_back(std::move(ch));
    }
    c.err << "irreducible Brauer characters " << b.chars.size() << "\n";
    return io::format_ctb(t);
}

std::string cmd_ctab_restrict(Ctx& c, Opts& o) {
    auto t = table_with_p(c.parse(o.table, io::parse_ctb), o.p);
    std::vector<ctab::Character> out;
    for (auto i : of_kind(t, ctab::CharKind::Ordinary)) out.push_back(ctab::restrict_p_regular(t, t.chars[i]));
    t.chars = std::move(out);
    return io::format_ctb(t);
}

std::string cmd_ctab_blocks(Ctx& c, Opts& o) {
    auto t = ordinary_part(table_with_p(c.parse(o.table, io::parse_ctb), o.p));
    auto b = ctab::blocks(t, t.p);
    std::string s = "BLOCKS p=" + std::to_string(t.p) + " n=" + std::to_string(b.blocks.size()) + "\n";
    for (std::size_t i = 0; i < b.blocks.size(); ++i) {
        s += "block " + std::to_string(i + 1) + " defect=" + std::to_string(b.defect[i]) + " chars";
        for (auto x : b.blocks[i]) s += " " + std::to_string(x + 1);
        s += "\n";
    }
    return s;
}

std::string cmd_ctab_heights(Ctx& c, Opts& o) {
    auto t = ordinary_part(table_with_p(c.parse(o.table, io::parse_ctb), o.p));
    auto b = ctab::blocks(t, t.p);
    auto h = ctab::heights(b, t);
    std::string s = "HEIGHTS n=" + std::to_string(h.size()) + "\n";
    for (std::size_t i = 0; i < h.size(); ++i)
        s += std::to_string(i + 1) + " block=" + std::to_string(b.block_of[i] + 1) + " height=" + std::to_string(h[i]) + "\n";
    return s;
}

std::string cmd_ctab_project(Ctx& c, Opts& o) {
    auto t = ordinary_part(table_with_p(c.parse(o.table, io::parse_ctb), o.p));
    auto b = ctab::blocks(t, t.p);
    if (o.chr == 0 || o.chr > t.chars.size()) throw Usage("--char must be a 1-based character index");
    if (o.block_index == 0 || o.block_index > b.blocks.size()) throw Usage("--block-index out of range");
    auto x = ctab::block_project(t, b, o.block_index - 1, t.chars[o.chr - 1]);
    x.kind = ctab::CharKind::Virtual;
    t.chars = {x};
    return io::format_ctb(t);
}

// columns of e as integral combinations of the columns of d
ZMatrix column_coords(const io::DecTable& d, const io::DecTable& e) {
    if (d.names != e.names) fail(Errc::ShapeMismatch, "tables have different rows");
    auto q = ctab::to_q(d.d);
    ZMatrix out;
    for (std::size_t j = 0; j < e.cols.size(); ++j) {
        auto s = ctab::q_solve(q, ctab::to_q({e.column(j)})[0]);
        if (s.status == ctab::SolveStatus::Inconsistent) fail(Errc::NotInSpan, e.cols[j] + " is not in the span");
        if (s.status != ctab::SolveStatus::Unique) fail(Errc::Undecided, "columns of the basis are dependent");
        if (!ctab::all_integral(s.x)) fail(Errc::NonIntegral, e.cols[j] + " has non-integral coordinates");
        out.push_back(ctab::to_z(s.x));
    }
    return out;
}

std::string cmd_ctab_decompose(Ctx& c, Opts& o) {
    if (!o.dec.empty()) {
        auto d = c.parse(o.dec, io::parse_dec);
        auto e = c.parse(o.of, io::parse_dec);
        return io::format_zmat(column_coords(d, e), "coordinates of " + join(e.cols, ",") + " over " + join(d.cols, ","));
    }
    auto t = table_with_p(c.parse(o.table, io::parse_ctb), o.p);
    auto ord = of_kind(t, ctab::CharKind::Ordinary), br = of_kind(t, ctab::CharKind::Brauer);
    if (br.empty()) fail(Errc::IncompleteSimplesList, "table has no Brauer characters");
    ctab::BasicSet bs;
    for (auto j : br) bs.members.push_back(t.chars[j]);
    io::DecTable out;
    out.desc = "decomposition matrix p=" + std::to_string(t.p);
    out.p = t.p;
    for (std::size_t j = 0; j < br.size(); ++j) {
        out.cols.push_back("phi" + std::to_string(j + 1));
        out.dims.push_back(t.chars[br[j]].degree().integer());
    }
    for (std::size_t i = 0; i < ord.size(); ++i) {
        const auto& chi = t.chars[ord[i]];
        out.names.push_back("chi" + std::to_string(i + 1));
        out.degrees.push_back(chi.degree().integer());
        out.d.push_back(ctab::decompose_basic(ctab::restrict_p_regular(t, chi), bs));
    }
    return io::format_dec(out);
}

std::string cmd_ctab_clifford2(Ctx& c, Opts& o) {
    auto g = c.parse(o.dec, io::parse_dec);
    auto cf = c.parse(o.clifford, io::parse_clifford);
    auto in = io::clifford_inputs(cf, g);
    auto r = ctab::clifford_index2(g.d, in.action, in.fusion, cf.p, &g.degrees);
    for (std::size_t i = 0; i < r.row_determined.size(); ++i)
        if (!r.row_determined[i]) fail(Errc::Undecided, "row " + cf.rows[i].name + " needs sign data");
    io::DecTable out;
    out.desc = "index-2 extension of: " + g.desc;
    out.p = cf.p;
    for (const auto& src : r.column_source) {
        std::vector<std::string> n;
        for (auto j : src) n.push_back(g.cols[j]);
        out.cols.push_back(join(n, "+"));
    }
    for (std::size_t i = 0; i < cf.rows.size(); ++i) {
        out.names.push_back(cf.rows[i].name);
        auto deg = g.degrees[g.row(cf.rows[i].a)];
        out.degrees.push_back(cf.rows[i].induced ? 2 * deg : deg);
    }
    out.d = r.d;
    c.err << "l " << r.l << "\n";
    return io::format_dec(out);
}

// ---- dxm
std::string cmd_dxm_init(Ctx& c, Opts& o) {
    return io::format_state(io::state_from_dec(c.parse(o.dec, io::parse_dec), o.block, o.indecomposable));
}

std::string cmd_dxm_projs(Ctx& c, Opts& o) {
    auto t = ordinary_part(table_with_p(c.parse(o.table, io::parse_ctb), o.p));
    auto b = ctab::blocks(t, t.p);
    if (o.block_index == 0 || o.block_index > b.blocks.size()) throw Usage("--block-index out of range");
    auto ps = dxm::projectives_from_products(t, b, o.block_index - 1);
    ZMatrix m;
    std::vector<std::string> origin;
    for (const auto& p : ps) {
        m.push_back(p.coeffs);
        origin.push_back(p.origin);
    }
    c.err << "projectives " << ps.size() << "\n";
    if (m.empty()) return "ZMAT r=0 c=0\n";
    return io::format_zmat(m, join(origin, "; "));
}

std::string cmd_dxm_dtd(Ctx& c, Opts& o) {
    auto cm = c.parse(o.cartan, io::parse_zmat);
    if (o.rows == 0) throw Usage("--rows (number of ordinary characters) is required");
    auto sols = dxm::dtd_solve({cm.m, o.rows});
    c.err << "solutions " << sols.size() << "\n";
    std::string s = "DTD solutions=" + std::to_string(sols.size()) + "\n";
    for (const auto& d : sols) s += io::format_zmat(d);
    return s;
}

dxm::DecompState load_state(Ctx& c, const Opts& o) { return c.parse(o.state, io::parse_state); }

std::string cmd_dxm_fitting(Ctx& c, Opts& o) {
    auto s = load_state(c, o);
    auto e = c.parse(o.edec, io::parse_dec);
    auto psi = c.parse(o.psi, io::parse_dec);
    if (psi.names != s.chars) fail(Errc::ShapeMismatch, "projective character rows differ from the state's characters");
    dxm::FittingInput in;
    in.e_dec = e.d;
    in.simple_dims = e.dims;
    in.psi = psi.column(0);
    in.row_names = e.names;
    in.column_names = e.cols;
    for (const auto& p : o.pins) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw Usage("--pin takes row=character");
        in.pinned.push_back({name_index(e.names, p.substr(0, eq), "row"), name_index(s.chars, p.substr(eq + 1), "character")});
    }
    auto r = dxm::fitting_match(s, in);
    c.err << "admissible " << r.admissible << " survivors " << r.survivors.size() << "\n";
    std::size_t pick = o.choose;
    if (pick == 0) {
        if (r.survivors.size() != 1) fail(Errc::Undecided, std::to_string(r.survivors.size()) + " matchings survive; use --choose");
        pick = 1;
    }
    if (pick > r.survivors.size()) throw Usage("--choose out of range");
    return io::format_state(dxm::apply_fitting(s, r.survivors[pick - 1], o.names));
}

std::string cmd_dxm_refine(Ctx& c, Opts& o) {
    auto s = load_state(c, o);
    auto psi = c.parse(o.psi, io::parse_dec);
    if (psi.names != s.chars) fail(Errc::ShapeMismatch, "projective character rows differ from the state's characters");
    return io::format_state(dxm::refine_by_relation(s, psi.column(0), o.name));
}

std::string cmd_dxm_enumerate(Ctx& c, Opts& o) {
    auto s = dxm::enumerate_candidates(load_state(c, o));
    c.err << "candidates " << s.candidates.size() << "\n";
    return io::format_state(s);
}

std::string cmd_dxm_import(Ctx& c, Opts& o) {
    auto s = dxm::import_brauer_degrees(load_state(c, o), c.parse(o.degrees, io::parse_degrees));
    c.err << "candidates " << s.candidates.size() << "\n";
    return io::format_state(s);
}

std::string cmd_dxm_atoms(Ctx& c, Opts& o) {
    auto a = c.parse(o.atom, io::parse_atom);
    dxm::AtomProblem pr{a.a, {}};
    for (const auto& x : a.b) pr.b.push_back({ctab::Rational(x)});
    auto at = dxm::atoms(pr);
    ZVector deg;
    for (const auto& r : at) deg.push_back(numerator(r[0]));
    for (std::size_t i = 0; i < deg.size(); ++i) c.err << a.simples[i] << " " << str(deg[i]) << "\n";
    return io::format_degrees(deg, "Brauer atom degrees for " + join(a.simples, ","));
}

std::string cmd_dxm_eliminate(Ctx& c, Opts& o) {
    auto s = load_state(c, o);
    if (o.atom_degree.empty()) throw Usage("--atom-degree is required");
    std::vector<std::string> names;
    for (const auto& p : s.proj_basic) names.push_back(p.name);
    Integer deg;
    try {
        deg = Integer(o.atom_degree);
    } catch (const std::exception&) {
        throw Usage("bad --atom-degree");
    }
    s = dxm::eliminate_by_atom(s, deg, name_index(names, o.column, "column"));
    c.err << "candidates " << s.candidates.size() << (s.solved ? " solved" : "") << "\n";
    return io::format_state(s);
}

std::string cmd_dxm_candidate(Ctx& c, Opts& o) {
    auto s = load_state(c, o);
    if (o.index == 0 || o.index > s.candidates.size()) fail(Errc::InvalidArgument, "no candidate " + std::to_string(o.index));
    const auto& d = s.candidates[o.index - 1];
    std::vector<std::string> names;
    for (const auto& p : s.proj_basic) names.push_back(p.name);
    std::vector<std::size_t> order;
    if (o.columns.empty())
        for (std::size_t j = 0; j < names.size(); ++j) order.push_back(j);
    for (const auto& n : o.columns) order.push_back(name_index(names, n, "column"));
    io::DecTable t;
    t.desc = s.block + ": candidate " + std::to_string(o.index) + " of " + std::to_string(s.candidates.size());
    t.p = s.p;
    for (auto j : order) t.cols.push_back(names[j]);
    t.names = s.chars;
    t.degrees = s.degrees;
    for (auto i : s.brauer_basic) t.basic.push_back(s.chars[i]);
    for (const auto& row : d) {
        t.d.emplace_back();
        for (auto j : order) t.d.back().push_back(row[j]);
    }
    return io::format_dec(t);
}

std::string cmd_dxm_sd16(Ctx& c, Opts& o) {
    auto blk = c.parse(o.block, io::parse_blk);
    if (blk.p != 2) fail(Errc::InvalidArgument, "semidihedral analysis needs p = 2");
    unsigned a = ctab::nu(blk.order, 2), m = a;
    for (const auto& x : blk.degrees) m = std::min(m, ctab::nu(x, 2));
    dxm::SD16Instance inst{blk.names, blk.degrees, {}};
    for (const auto& x : blk.degrees) inst.heights.push_back(int(ctab::nu(x, 2)) - int(m));
    auto r = dxm::sd16_analyze(inst);
    std::ostringstream desc;
    desc << "semidihedral block, defect " << (a - m) << ", delta (" << r.delta[0] << "," << r.delta[1] << "," << r.delta[2]
         << "," << r.delta[3] << "), chi1..4 = " << blk.names[r.chi[0]] << " " << blk.names[r.chi[1]] << " "
         << blk.names[r.chi[2]] << " " << blk.names[r.chi[3]];
    io::DecTable t;
    t.desc = desc.str();
    t.p = 2;
    for (std::size_t j = 0; j < r.basis.size(); ++j) {
        t.cols.push_back("Phi" + std::to_string(j + 1));
        t.basic.push_back(blk.names[r.basis[j]]);
    }
    t.names = blk.names;
    t.degrees = blk.degrees;
    t.d = r.matrix;
    c.err << desc.str() << "\n";
    return io::format_dec(t);
}

std::string cmd_dxm_verify(Ctx& c, Opts& o) {
    auto d = c.parse(o.dec, io::parse_dec);
    if (!o.table.empty()) {
        auto t = table_with_p(c.parse(o.table, io::parse_ctb), o.p);
        std::vector<std::vector<cyclo::Cyclotomic>> chi, phi;
        for (auto i : of_kind(t, ctab::CharKind::Ordinary)) chi.push_back(ctab::restrict_p_regular(t, t.chars[i]).values);
        for (auto i : of_kind(t, ctab::CharKind::Brauer)) phi.push_back(t.chars[i].values);
        if (!dxm::verify_matrix(d.d, chi, phi)) fail(Errc::Infeasible, "decomposition matrix does not match the table");
        c.err << "verified against characters\n";
        return "VERIFIED characters\n";
    }
    if (!dxm::verify_degrees(d.d, d.degrees)) fail(Errc::Infeasible, "decomposition matrix is inconsistent with its degrees");
    auto phi = dxm::back_substitute_degrees(d.d, d.degrees);
    c.err << "verified at the degree level\n";
    return io::format_degrees(*phi, "Brauer degrees implied by " + (d.desc.empty() ? o.dec : d.desc));
}

std::string cmd_fixtures_list(Ctx&, Opts&) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(fixture_dir()))
        if (e.path().extension() == ".txt") names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    std::string s;
    for (const auto& n : names) s += n + "\n";
    return s;
}

std::string cmd_fixtures_load(Ctx& c, Opts& o) {
    if (o.fixture.empty()) throw Usage("fixture name required");
    auto name = o.fixture;
    if (name.find(".txt") == std::string::npos) name += ".txt";
    return c.load("fixture:" + name);
}

}  // namespace

// ---- manifest
namespace {

std::string manifest_path(const Ctx& c, const Opts& o) {
    if (!o.manifest.empty()) return c.resolve(o.manifest, true);
    if (c.workspace.empty()) throw Usage("--workspace or --manifest is required");
    return (fs::path(c.workspace) / "manifest.jsonl").string();
}

std::vector<json> read_manifest(const std::string& path) {
    auto text = io::read_file(path);
    std::vector<json> out;
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        try {
            out.push_back(json::parse(line));
        } catch (const json::exception& e) {
            fail(Errc::Format, path + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

std::string entry_hash(const json& e) {
    json body = e;
    body.erase("hash");
    return sha256_hex(body.dump());
}

void check_chain(const std::vector<json>& es, const std::string& path) {
    std::string prev(64, '0');
    for (std::size_t i = 0; i < es.size(); ++i) {
        const auto& e = es[i];
        if (!e.is_object() || !e.contains("hash") || !e.contains("prev") || !e.contains("argv"))
            fail(Errc::Format, path + ": entry " + std::to_string(i + 1) + " is malformed");
        if (e["prev"] != prev) fail(Errc::Format, path + ": entry " + std::to_string(i + 1) + " breaks the chain");
        if (e["hash"] != entry_hash(e)) fail(Errc::Format, path + ": entry " + std::to_string(i + 1) + " hash mismatch");
        prev = e["hash"].get<std::string>();
    }
}

void append_manifest(const Ctx& c, const std::vector<std::string>& argv, const std::string& output) {
    auto path = (fs::path(c.workspace) / "manifest.jsonl").string();
    std::string prev(64, '0');
    if (fs::exists(path)) {
        auto es = read_manifest(path);
        check_chain(es, path);
        if (!es.empty()) prev = es.back()["hash"].get<std::string>();
    }
    json e;
    e["argv"] = argv;
    e["seed"] = c.seed;
    e["version"] = kVersion;
    json ins = json::array();
    for (const auto& [p, h] : c.inputs) ins.push_back({{"path", p}, {"sha256", h}});
    e["inputs"] = ins;
    e["output"] = {{"path", c.out.empty() ? "-" : c.out}, {"sha256", sha256_hex(output)}};
    e["prev"] = prev;
    e["hash"] = entry_hash(e);
    std::ofstream f(path, std::ios::app | std::ios::binary);
    if (!f) fail(Errc::Io, "cannot append to " + path);
    f << e.dump() << "\n";
}

}  // namespace

RunResult run_impl(const std::vector<std::string>& args, bool record);

namespace {

std::string cmd_manifest_verify(Ctx& c, Opts& o) {
    auto path = manifest_path(c, o);
    auto es = read_manifest(path);
    check_chain(es, path);
    // outputs still on disk must match what was recorded
    std::size_t checked = 0;
    for (const auto& e : es) {
        auto out = e["output"]["path"].get<std::string>();
        if (out == "-") continue;
        auto p = c.resolve(out, false);
        if (!fs::exists(p)) continue;
        if (sha256_hex(io::read_file(p)) != e["output"]["sha256"]) fail(Errc::Format, out + " differs from its manifest entry");
        ++checked;
    }
    c.err << "entries " << es.size() << " outputs checked " << checked << "\n";
    return "MANIFEST ok entries=" + std::to_string(es.size()) + "\n";
}

std::string cmd_manifest_replay(Ctx& c, Opts& o) {
    auto path = manifest_path(c, o);
    auto es = read_manifest(path);
    check_chain(es, path);
    auto ws = fs::path(path).parent_path().string();
    for (std::size_t i = 0; i < es.size(); ++i) {
        auto argv = es[i]["argv"].get<std::vector<std::string>>();
        argv.push_back("--workspace");
        argv.push_back(ws.empty() ? "." : ws);
        auto r = run_impl(argv, false);
        if (r.code != 0) fail(Errc::Infeasible, "entry " + std::to_string(i + 1) + " failed: " + r.err);
        auto out = es[i]["output"]["path"].get<std::string>();
        std::string bytes = out == "-" ? r.out : io::read_file((fs::path(ws) / out).string());
        if (sha256_hex(bytes) != es[i]["output"]["sha256"])
            fail(Errc::Infeasible, "entry " + std::to_string(i + 1) + " did not reproduce its output");
    }
    c.err << "replayed " << es.size() << " entries\n";
    return "REPLAY ok entries=" + std::to_string(es.size()) + "\n";
}

}  // namespace

RunResult run_impl(const std::vector<std::string>& args, bool record) {
    RunResult res;
    Ctx c;
    Opts o;
    Cmd action;

    CLI::App app{"modular character and decomposition matrix toolkit", "modat"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    app.add_option("--seed", c.seed, "random seed")->capture_default_str();
    app.add_option("--field", c.field, "field as p,k");
    app.add_option("--out", c.out, "artifact path (default stdout)");
    app.add_option("--log", c.log, "append diagnostics to this file");
    app.add_option("--workspace", c.workspace, "artifact directory with manifest.jsonl");

    auto leaf = [&](CLI::App* parent, const char* name, const char* help, Cmd f) {
        auto* s = parent->add_subcommand(name, help);
        s->callback([&action, f] { action = f; });
        return s;
    };
    auto group_opts = [&](CLI::App* s) {
        s->add_option("--group", o.group, "PRM file with the group generators");
        s->add_option("--gen", o.gens, "generator in cycle notation (repeatable)");
    };
    auto sub_opts = [&](CLI::App* s) {
        s->add_option("--sub", o.sub, "PRM file with subgroup generators");
        s->add_option("--sub-gen", o.sub_gens, "subgroup generator in cycle notation (repeatable)");
    };

    leaf(&app, "field", "finite field data", cmd_field);

    auto* mat = app.add_subcommand("mat", "matrices over GF(q)");
    mat->require_subcommand(1);
    auto* s = leaf(mat, "arith", "a+b, a*b or kron(a,b)", cmd_mat_arith);
    s->add_option("--a", o.a)->required();
    s->add_option("--b", o.b)->required();
    s->add_option("--op", o.op, "add, mul or kron");
    for (auto [n, h, f] : {std::tuple{"echelon", "reduced row echelon form", cmd_mat_echelon},
                           std::tuple{"nullspace", "right null space rows", cmd_mat_nullspace},
                           std::tuple{"minpoly", "minimal polynomial", cmd_mat_minpoly}})
        leaf(mat, n, h, f)->add_option("--a", o.a)->required();
    leaf(mat, "import", "MeatAxe text matrix to MTX", cmd_mat_import)->add_option("--in", o.in)->required();
    s = leaf(mat, "random", "seeded random matrix", cmd_mat_random);
    s->add_option("--rows", o.rows)->required();
    s->add_option("--cols", o.cols)->required();

    auto* rp = app.add_subcommand("rep", "modules given by generator matrices");
    rp->require_subcommand(1);
    s = leaf(rp, "perm", "permutation module", cmd_rep_perm);
    group_opts(s);
    s = leaf(rp, "regular", "regular module", cmd_rep_regular);
    group_opts(s);
    leaf(rp, "chop", "composition factors", cmd_rep_chop)->add_option("--rep", o.rep)->required();
    s = leaf(rp, "spin", "submodule spanned by seed vectors", cmd_rep_spin);
    s->add_option("--rep", o.rep)->required();
    s->add_option("--seeds", o.seeds)->required();
    for (auto [n, h, f] : {std::tuple{"iso", "isomorphism test", cmd_rep_iso}, std::tuple{"tensor", "tensor product", cmd_rep_tensor},
                           std::tuple{"hom", "homomorphism space", cmd_rep_hom}}) {
        s = leaf(rp, n, h, f);
        s->add_option("--a", o.a)->required();
        s->add_option("--b", o.b)->required();
    }
    leaf(rp, "dual", "dual module", cmd_rep_dual)->add_option("--rep", o.rep)->required();
    leaf(rp, "socle", "socle series", cmd_rep_socle)->add_option("--rep", o.rep)->required();

    auto* gp = app.add_subcommand("grp", "permutation groups");
    gp->require_subcommand(1);
    s = leaf(gp, "enum", "enumerate elements", cmd_grp_enum);
    group_opts(s);
    s->add_flag("--elements", o.elements, "write all elements as PRM");
    s = leaf(gp, "classes", "conjugacy classes", cmd_grp_classes);
    group_opts(s);
    s->add_option("--p", o.p, "prime for the p-regular flags");
    for (auto [n, h, f] : {std::tuple{"cosets", "action on right cosets", cmd_grp_cosets},
                           std::tuple{"dcosets", "double cosets", cmd_grp_dcosets}}) {
        s = leaf(gp, n, h, f);
        group_opts(s);
        sub_opts(s);
    }

    auto* cd = app.add_subcommand("cond", "condensation with a trace idempotent");
    cd->require_subcommand(1);
    auto cond_common = [&](CLI::App* x) {
        x->add_option("--rep", o.rep)->required();
        group_opts(x);
        sub_opts(x);
    };
    cond_common(leaf(cd, "make", "basis of the condensed module Ve", cmd_cond_make));
    s = leaf(cd, "elem", "condensed element e g e", cmd_cond_elem);
    cond_common(s);
    s->add_option("--elem", o.elem, "group element in cycle notation")->required();
    s = leaf(cd, "perm", "condensed permutation module", cmd_cond_perm);
    group_opts(s);
    sub_opts(s);
    s = leaf(cd, "tensor", "condensed tensor product", cmd_cond_tensor);
    s->add_option("--a", o.a)->required();
    s->add_option("--b", o.b)->required();
    group_opts(s);
    sub_opts(s);
    s = leaf(cd, "uncondense", "submodule generated by condensed vectors", cmd_cond_uncondense);
    cond_common(s);
    s->add_option("--vecs", o.vecs, "MTX of coordinates over the Ve basis")->required();
    cond_common(leaf(cd, "dim", "dimension of Ve from characters", cmd_cond_dim));

    auto* ct = app.add_subcommand("ctab", "character tables");
    ct->require_subcommand(1);
    s = leaf(ct, "table", "ordinary character table", cmd_ctab_table);
    group_opts(s);
    s->add_option("--p", o.p);
    s = leaf(ct, "brauer", "ordinary and Brauer characters", cmd_ctab_brauer);
    group_opts(s);
    s->add_option("--p", o.p)->required();
    auto tab_opts = [&](CLI::App* x) {
        x->add_option("--table", o.table)->required();
        x->add_option("--p", o.p);
    };
    tab_opts(leaf(ct, "restrict", "restrict ordinary characters to p-regular classes", cmd_ctab_restrict));
    tab_opts(leaf(ct, "blocks", "p-blocks and defects", cmd_ctab_blocks));
    tab_opts(leaf(ct, "heights", "heights", cmd_ctab_heights));
    s = leaf(ct, "project", "block component of a character", cmd_ctab_project);
    tab_opts(s);
    s->add_option("--char", o.chr, "1-based character index")->required();
    s->add_option("--block-index", o.block_index, "1-based block index")->required();
    s = leaf(ct, "decompose", "decomposition matrix, or coordinates over a basic set", cmd_ctab_decompose);
    s->add_option("--table", o.table);
    s->add_option("--p", o.p);
    s->add_option("--dec", o.dec, "DEC table whose columns form the basis");
    s->add_option("--of", o.of, "DEC table of characters to decompose");
    s = leaf(ct, "clifford2", "decomposition matrix of an index-2 extension", cmd_ctab_clifford2);
    s->add_option("--dec", o.dec)->required();
    s->add_option("--clifford", o.clifford)->required();

    auto* dx = app.add_subcommand("dxm", "decomposition matrix derivation");
    dx->require_subcommand(1);
    s = leaf(dx, "init", "state from a DEC table", cmd_dxm_init);
    s->add_option("--dec", o.dec)->required();
    s->add_option("--block", o.block);
    s->add_flag("--indecomposable", o.indecomposable, "columns are projective indecomposables");
    s = leaf(dx, "projs", "projectives from defect-zero products", cmd_dxm_projs);
    tab_opts(s);
    s->add_option("--block-index", o.block_index)->required();
    s = leaf(dx, "dtd", "solve D^T D = C", cmd_dxm_dtd);
    s->add_option("--cartan", o.cartan)->required();
    s->add_option("--rows", o.rows, "number of ordinary characters")->required();
    s = leaf(dx, "fitting", "Fitting correspondence", cmd_dxm_fitting);
    s->add_option("--state", o.state)->required();
    s->add_option("--edec", o.edec, "DEC table of the endomorphism ring")->required();
    s->add_option("--psi", o.psi, "DEC table with the projective character")->required();
    s->add_option("--pin", o.pins, "row=character (repeatable)");
    s->add_option("--names", o.names, "names of the new columns")->delimiter(',');
    s->add_option("--choose", o.choose, "1-based surviving matching");
    s = leaf(dx, "refine", "refine the basic set by a projective", cmd_dxm_refine);
    s->add_option("--state", o.state)->required();
    s->add_option("--psi", o.psi)->required();
    s->add_option("--name", o.name);
    leaf(dx, "enumerate", "candidate decomposition matrices", cmd_dxm_enumerate)->add_option("--state", o.state)->required();
    s = leaf(dx, "import", "keep candidates matching known Brauer degrees", cmd_dxm_import);
    s->add_option("--state", o.state)->required();
    s->add_option("--degrees", o.degrees)->required();
    leaf(dx, "atoms", "Brauer atoms", cmd_dxm_atoms)->add_option("--atom", o.atom)->required();
    s = leaf(dx, "eliminate", "drop candidates below an atom degree", cmd_dxm_eliminate);
    s->add_option("--state", o.state)->required();
    s->add_option("--atom-degree", o.atom_degree)->required();
    s->add_option("--column", o.column)->required();
    s = leaf(dx, "candidate", "one candidate as a DEC table", cmd_dxm_candidate);
    s->add_option("--state", o.state)->required();
    s->add_option("--index", o.index);
    s->add_option("--columns", o.columns)->delimiter(',');
    leaf(dx, "sd16", "semidihedral block of defect 4", cmd_dxm_sd16)->add_option("--block", o.block)->required();
    s = leaf(dx, "verify", "check a decomposition matrix", cmd_dxm_verify);
    s->add_option("--dec", o.dec)->required();
    s->add_option("--table", o.table, "CTB with ordinary and Brauer characters");
    s->add_option("--p", o.p);

    auto* fx = app.add_subcommand("fixtures", "bundled tables");
    fx->require_subcommand(1);
    leaf(fx, "list", "list fixtures", cmd_fixtures_list);
    leaf(fx, "load", "print a fixture", cmd_fixtures_load)->add_option("name", o.fixture)->required();

    auto* mf = app.add_subcommand("manifest", "workspace provenance");
    mf->require_subcommand(1);
    leaf(mf, "verify", "check the hash chain and recorded outputs", cmd_manifest_verify)->add_option("--manifest", o.manifest);
    leaf(mf, "replay", "re-run every entry and compare outputs", cmd_manifest_replay)->add_option("--manifest", o.manifest);

    auto finish_err = [&] {
        res.err += c.err.str();
        if (!c.log.empty()) {
            std::ofstream f(c.log, std::ios::app);
            f << res.err;
        }
    };
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        std::string text = action(c, o);
        if (c.out.empty()) {
            res.out = text;
        } else {
            auto p = c.resolve(c.out, false);
            if (auto dir = fs::path(p).parent_path(); !dir.empty()) fs::create_directories(dir);
            io::write_file(p, text);
        }
        bool is_manifest_cmd = !args.empty() && std::find(args.begin(), args.end(), "manifest") != args.end();
        if (record && !c.workspace.empty() && !is_manifest_cmd) {
            std::vector<std::string> argv;
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (args[i] == "--workspace") {
                    ++i;
                    continue;
                }
                if (args[i].rfind("--workspace=", 0) == 0) continue;
                argv.push_back(args[i]);
            }
            append_manifest(c, argv, text);
        }
    } catch (const CLI::CallForHelp&) {
        res.out = app.help();
    } catch (const CLI::CallForAllHelp&) {
        res.out = app.help("", CLI::AppFormatMode::All);
    } catch (const CLI::CallForVersion&) {
        res.out = std::string(kVersion) + "\n";
    } catch (const CLI::ParseError& e) {
        res.code = 3;
        res.err = std::string("usage: ") + e.what() + "\n";
    } catch (const Usage& e) {
        res.code = 3;
        res.err = std::string("usage: ") + e.what() + "\n";
    } catch (const Error& e) {
        res.code = e.is_io() ? 3 : 2;
        res.err = std::string("error: ") + e.what();
        if (!e.is_io() && !c.inputs.empty()) {
            std::vector<std::string> in;
            for (const auto& x : c.inputs) in.push_back(x.first);
            res.err += " (inputs: " + join(in, ", ") + ")";
        }
        res.err += "\n";
    } catch (const fs::filesystem_error& e) {
        res.code = 3;
        res.err = std::string("error: Io: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.code = 2;
        res.err = std::string("error: ") + e.what() + "\n";
    }
    finish_err();
    return res;
}

RunResult run(const std::vector<std::string>& args) { return run_impl(args, true); }

}  // namespace modat::cli
