#include "modat/io/formats.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "modat/error.hpp"

namespace modat::io {

namespace {

using nlohmann::json;

std::vector<std::string> words(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

// line reader; '#' lines are collected as a description
class Reader {
public:
    explicit Reader(std::string_view text, bool comments = true) {
        std::size_t i = 0;
        while (i <= text.size()) {
            std::size_t j = text.find('\n', i);
            if (j == std::string_view::npos) j = text.size();
            std::string_view l = text.substr(i, j - i);
            if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
            ++lineno_;
            if (comments && !l.empty() && l[0] == '#') {
                auto d = l.substr(1);
                while (!d.empty() && d[0] == ' ') d.remove_prefix(1);
                if (!desc.empty()) desc += ' ';
                desc += std::string(d);
            } else if (!words(l).empty()) {
                lines_.push_back({std::string(l), lineno_});
            }
            i = j + 1;
        }
    }

    bool done() const { return pos_ >= lines_.size(); }
    std::vector<std::string> next(const char* what) {
        if (done()) fail(Errc::Format, std::string("unexpected end of input, expected ") + what);
        cur_ = lines_[pos_].second;
        return words(lines_[pos_++].first);
    }
    std::vector<std::string> peek() const { return done() ? std::vector<std::string>{} : words(lines_[pos_].first); }
    [[noreturn]] void bad(const std::string& msg) const { fail(Errc::Format, "line " + std::to_string(cur_) + ": " + msg); }

    // "TAG k=v ..." with exactly the given keys in order
    std::map<std::string, std::string> header(const std::string& tag, const std::vector<std::string>& keys) {
        auto w = next(tag.c_str());
        if (w[0] != tag) bad("expected " + tag + " header, found '" + w[0] + "'");
        if (w.size() != keys.size() + 1) bad(tag + " header needs " + std::to_string(keys.size()) + " fields");
        std::map<std::string, std::string> kv;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            auto eq = w[i + 1].find('=');
            if (eq == std::string::npos || w[i + 1].substr(0, eq) != keys[i]) bad("expected " + keys[i] + "=");
            kv[keys[i]] = w[i + 1].substr(eq + 1);
        }
        return kv;
    }

    std::string desc;

private:
    std::vector<std::pair<std::string, std::size_t>> lines_;
    std::size_t pos_ = 0, lineno_ = 0, cur_ = 0;
};

std::uint64_t to_u64(const std::string& s, const char* what) {
    if (s.empty() || s.size() > 19 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail(Errc::Format, std::string("bad ") + what + " '" + s + "'");
    return std::stoull(s);
}

Integer to_int(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size() || !std::all_of(s.begin() + i, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail(Errc::Format, "bad integer '" + s + "'");
    return Integer(s);
}

ZVector ints(const std::vector<std::string>& w, std::size_t from, std::size_t n, Reader& r) {
    if (w.size() != from + n) r.bad("expected " + std::to_string(n) + " values, found " + std::to_string(w.size() - from));
    ZVector v;
    for (std::size_t i = from; i < w.size(); ++i) v.push_back(to_int(w[i]));
    return v;
}

gfla::FieldPtr field_of_order(std::uint64_t q) {
    if (q < 2 || q > gfla::kMaxFieldOrder) fail(Errc::Format, "field order " + std::to_string(q) + " out of range");
    std::uint32_t p = 2;
    while (q % p) ++p;
    std::uint32_t k = 0;
    std::uint64_t t = q;
    while (t % p == 0) t /= p, ++k;
    if (t != 1) fail(Errc::Format, std::to_string(q) + " is not a prime power");
    return gfla::field_make(p, k);
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
}

std::string desc_line(const std::string& d) { return d.empty() ? std::string() : "# " + d + "\n"; }

void expect_end(Reader& r, const char* what) {
    if (!r.done()) {
        r.next(what);
        r.bad(std::string("trailing data after ") + what);
    }
}

gfla::FqMatrix read_mtx_block(Reader& r) {
    auto h = r.header("MTX", {"q", "r", "c"});
    auto f = field_of_order(to_u64(h["q"], "field order"));
    std::size_t rows = to_u64(h["r"], "row count"), cols = to_u64(h["c"], "column count");
    gfla::FqMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (cols == 0) continue;
        auto w = r.next("matrix row");
        if (w.size() != cols) r.bad("row " + std::to_string(i + 1) + " has " + std::to_string(w.size()) + " entries");
        for (std::size_t j = 0; j < cols; ++j) {
            auto v = to_u64(w[j], "matrix entry");
            if (v >= f->q()) r.bad("entry " + w[j] + " not below q");
            m.set(i, j, gfla::Fq(v));
        }
    }
    return m;
}

std::string no_space(std::string s) {
    std::replace_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n'; }, '_');
    return s;
}

json int_json(const Integer& z) {
    if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max()) return z.convert_to<long long>();
    return z.str();
}

Integer json_int(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_string()) return to_int(j.get<std::string>());
    fail(Errc::Format, "expected an integer in state file");
}

json zvec_json(const ZVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(int_json(x));
    return a;
}

ZVector json_zvec(const json& j) {
    ZVector v;
    for (const auto& x : j) v.push_back(json_int(x));
    return v;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::Io, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(Errc::Io, "write failed for '" + path + "'");
}

std::string sniff(std::string_view text) {
    Reader r(text);
    if (r.done()) fail(Errc::Format, "empty input");
    return r.peek()[0];
}

std::string format_mtx(const gfla::FqMatrix& m) {
    std::string s = "MTX q=" + std::to_string(m.F().q()) + " r=" + std::to_string(m.rows()) + " c=" + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ' ';
            s += std::to_string(m.at(i, j));
        }
        s += '\n';
    }
    return s;
}

gfla::FqMatrix parse_mtx(std::string_view text) {
    Reader r(text, false);
    auto m = read_mtx_block(r);
    expect_end(r, "matrix");
    return m;
}

gfla::FqMatrix parse_meataxe(std::string_view text) {
    Reader r(text, false);
    auto h = r.next("header");
    std::uint64_t q = 0, rows = 0, cols = 0;
    bool packed = false;
    if (h[0] == "matrix") {
        std::map<std::string, std::string> kv;
        for (std::size_t i = 1; i < h.size(); ++i) {
            auto eq = h[i].find('=');
            if (eq == std::string::npos) r.bad("bad header field '" + h[i] + "'");
            kv[h[i].substr(0, eq)] = h[i].substr(eq + 1);
        }
        if (!kv.count("field") || !kv.count("rows") || !kv.count("cols")) r.bad("header needs field=, rows= and cols=");
        q = to_u64(kv["field"], "field");
        rows = to_u64(kv["rows"], "rows");
        cols = to_u64(kv["cols"], "cols");
        packed = q < 10;
    } else {
        if (h.size() != 4) r.bad("expected 'mode q rows cols'");
        auto mode = to_u64(h[0], "mode");
        if (mode != 1 && mode != 3) r.bad("only matrix modes 1 and 3 are supported");
        q = to_u64(h[1], "field");
        rows = to_u64(h[2], "rows");
        cols = to_u64(h[3], "cols");
        packed = mode == 1;
    }
    auto f = field_of_order(q);
    // entries may run across lines; small fields pack one digit per entry
    std::vector<gfla::Fq> vals;
    while (!r.done() && vals.size() < rows * cols) {
        for (const auto& w : r.next("matrix entries")) {
            if (packed) {
                for (char c : w) {
                    if (c < '0' || c > '9') r.bad("bad digit");
                    vals.push_back(gfla::Fq(c - '0'));
                }
            } else {
                vals.push_back(gfla::Fq(to_u64(w, "entry")));
            }
        }
    }
    if (vals.size() != rows * cols) fail(Errc::Format, "expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(vals.size()));
    for (auto v : vals)
        if (v >= f->q()) fail(Errc::Format, "entry " + std::to_string(v) + " not below q");
    expect_end(r, "matrix");
    return gfla::FqMatrix::from_values(f, rows, cols, vals);
}

std::string format_rep(const rep::Representation& r) {
    std::string s = "REP q=" + std::to_string(r.F().q()) + " d=" + std::to_string(r.dim) + " n=" + std::to_string(r.ngens()) +
                    " label=" + no_space(r.label) + "\n";
    for (const auto& g : r.gens) s += format_mtx(g);
    return s;
}

rep::Representation parse_rep(std::string_view text) {
    Reader r(text, false);
    auto h = r.header("REP", {"q", "d", "n", "label"});
    auto f = field_of_order(to_u64(h["q"], "field order"));
    std::size_t d = to_u64(h["d"], "dimension"), n = to_u64(h["n"], "generator count");
    std::vector<gfla::FqMatrix> gens;
    for (std::size_t i = 0; i < n; ++i) {
        auto m = read_mtx_block(r);
        if (m.F().q() != f->q() || m.rows() != d || m.cols() != d)
            fail(Errc::Format, "generator " + std::to_string(i + 1) + " does not match the REP header");
        gens.push_back(std::move(m));
    }
    expect_end(r, "representation");
    return rep::Representation(f, d, std::move(gens), h["label"]);
}

std::string format_prm(const std::vector<grp::Perm>& perms) {
    std::size_t n = perms.empty() ? 0 : perms[0].size();
    std::string s = "PRM n=" + std::to_string(n) + " k=" + std::to_string(perms.size()) + "\n";
    for (const auto& p : perms) {
        if (p.size() != n) fail(Errc::ShapeMismatch, "permutations of different degrees");
        for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + std::to_string(p[i] + 1);
        s += '\n';
    }
    return s;
}

std::vector<grp::Perm> parse_prm(std::string_view text) {
    Reader r(text, false);
    auto h = r.header("PRM", {"n", "k"});
    std::size_t n = to_u64(h["n"], "degree"), k = to_u64(h["k"], "count");
    std::vector<grp::Perm> out;
    for (std::size_t i = 0; i < k; ++i) {
        auto w = r.next("permutation");
        if (w.size() != n) r.bad("permutation " + std::to_string(i + 1) + " has " + std::to_string(w.size()) + " images");
        grp::Perm p(n);
        std::vector<bool> seen(n);
        for (std::size_t j = 0; j < n; ++j) {
            auto v = to_u64(w[j], "image");
            if (v < 1 || v > n || seen[v - 1]) r.bad("not a permutation of 1.." + std::to_string(n));
            seen[v - 1] = true;
            p[j] = std::uint32_t(v - 1);
        }
        out.push_back(std::move(p));
    }
    expect_end(r, "permutations");
    return out;
}

std::string ctb_value(const cyclo::Cyclotomic& v) { return v.is_rational() ? v.rational().str() : v.to_string(); }

std::string format_ctb(const ctab::CharTable& t) {
    std::string s = "CTB order=" + t.order.str() + " classes=" + std::to_string(t.nclasses()) + " p=" + std::to_string(t.p) + "\n";
    for (const auto& c : t.classes)
        s += c.size.str() + " " + std::to_string(c.order) + " " + no_space(c.label) + " " + (c.p_regular ? "1" : "0") + "\n";
    for (const auto& ch : t.chars) {
        s += ctab::kind_name(ch.kind) + " " + (ch.values.empty() ? std::string("0") : ctb_value(ch.degree()));
        for (const auto& v : ch.values) s += " " + ctb_value(v);
        s += '\n';
    }
    return s;
}

ctab::CharTable parse_ctb(std::string_view text) {
    Reader r(text);
    auto h = r.header("CTB", {"order", "classes", "p"});
    ctab::CharTable t;
    t.order = to_int(h["order"]);
    t.p = std::uint32_t(to_u64(h["p"], "prime"));
    std::size_t m = to_u64(h["classes"], "class count");
    for (std::size_t i = 0; i < m; ++i) {
        auto w = r.next("class line");
        if (w.size() != 4) r.bad("class line needs size, order, label, pregular");
        ctab::ClassInfo c;
        c.size = to_int(w[0]);
        c.order = to_u64(w[1], "element order");
        c.label = w[2];
        if (w[3] != "0" && w[3] != "1") r.bad("pregular must be 0 or 1");
        c.p_regular = w[3] == "1";
        t.classes.push_back(c);
    }
    std::size_t nreg = std::count_if(t.classes.begin(), t.classes.end(), [](auto& c) { return c.p_regular; });
    while (!r.done()) {
        auto w = r.next("character");
        ctab::Character ch;
        ch.kind = ctab::parse_kind(w[0]);
        if (w.size() < 2) r.bad("character line without values");
        try {
            for (std::size_t i = 2; i < w.size(); ++i) ch.values.push_back(cyclo::parse_value(w[i]));
        } catch (const Error& e) {
            r.bad(e.what());
        }
        // Brauer characters may be given on the p-regular classes only
        if (ch.values.size() != m && !(ch.kind == ctab::CharKind::Brauer && ch.values.size() == nreg))
            r.bad("character has " + std::to_string(ch.values.size()) + " values for " + std::to_string(m) + " classes");
        if (ch.values.empty() || !(cyclo::parse_value(w[1]) == ch.values[0])) r.bad("degree check failed");
        ch.name = "X." + std::to_string(t.chars.size() + 1);
        t.chars.push_back(std::move(ch));
    }
    return t;
}

// ---- DEC

std::size_t DecTable::row(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) fail(Errc::InvalidArgument, "no row named '" + name + "'");
    return std::size_t(it - names.begin());
}

std::vector<std::size_t> DecTable::basic_rows() const {
    std::vector<std::size_t> out;
    for (const auto& n : basic) out.push_back(row(n));
    return out;
}

ZVector DecTable::column(std::size_t j) const {
    ZVector v;
    for (const auto& r : d) v.push_back(r.at(j));
    return v;
}

std::string format_dec(const DecTable& t) {
    std::string s = desc_line(t.desc);
    s += "DEC k=" + std::to_string(t.d.size()) + " l=" + std::to_string(t.cols.size()) + " p=" + std::to_string(t.p) + "\n";
    s += "cols " + join(t.cols) + "\n";
    if (!t.dims.empty()) {
        s += "dims";
        for (const auto& x : t.dims) s += " " + x.str();
        s += "\n";
    }
    if (!t.basic.empty()) s += "basic " + join(t.basic) + "\n";
    for (std::size_t i = 0; i < t.d.size(); ++i) {
        s += t.names.at(i) + " " + t.degrees.at(i).str();
        for (const auto& x : t.d[i]) s += " " + x.str();
        s += "\n";
    }
    return s;
}

DecTable parse_dec(std::string_view text) {
    Reader r(text);
    auto h = r.header("DEC", {"k", "l", "p"});
    DecTable t;
    t.desc = r.desc;
    std::size_t k = to_u64(h["k"], "k"), l = to_u64(h["l"], "l");
    t.p = std::uint32_t(to_u64(h["p"], "p"));
    auto c = r.next("cols");
    if (c[0] != "cols" || c.size() != l + 1) r.bad("expected 'cols' with " + std::to_string(l) + " names");
    t.cols.assign(c.begin() + 1, c.end());
    for (;;) {
        auto w = r.peek();
        if (w.empty() || (w[0] != "dims" && w[0] != "basic")) break;
        r.next("dims");
        if (w[0] == "dims") t.dims = ints(w, 1, l, r);
        else t.basic.assign(w.begin() + 1, w.end());
    }
    for (std::size_t i = 0; i < k; ++i) {
        auto w = r.next("decomposition row");
        if (w.size() != l + 2) r.bad("row needs name, degree and " + std::to_string(l) + " entries");
        t.names.push_back(w[0]);
        t.degrees.push_back(to_int(w[1]));
        t.d.push_back(ints(w, 2, l, r));
    }
    expect_end(r, "decomposition matrix");
    for (const auto& b : t.basic)
        if (std::find(t.names.begin(), t.names.end(), b) == t.names.end()) fail(Errc::Format, "basic row '" + b + "' not in table");
    return t;
}

MultTable parse_mult(std::string_view text) {
    Reader r(text);
    auto h = r.header("MULT", {"r", "c", "tags"});
    MultTable t;
    t.desc = r.desc;
    std::size_t rows = to_u64(h["r"], "r"), cols = to_u64(h["c"], "c"), nt = to_u64(h["tags"], "tags");
    auto c = r.next("cols");
    if (c[0] != "cols" || c.size() != cols + 1) r.bad("expected 'cols' with " + std::to_string(cols) + " names");
    t.cols.assign(c.begin() + 1, c.end());
    for (std::size_t i = 0; i < rows; ++i) {
        auto w = r.next("multiplicity row");
        if (w.size() != 1 + nt + cols) r.bad("row needs name, " + std::to_string(nt) + " tags and " + std::to_string(cols) + " entries");
        t.names.push_back(w[0]);
        t.tags.emplace_back(w.begin() + 1, w.begin() + 1 + nt);
        t.m.push_back(ints(w, 1 + nt, cols, r));
    }
    expect_end(r, "multiplicity table");
    return t;
}

ZMatFile parse_zmat(std::string_view text) {
    Reader r(text);
    auto h = r.header("ZMAT", {"r", "c"});
    ZMatFile z;
    z.desc = r.desc;
    std::size_t rows = to_u64(h["r"], "r"), cols = to_u64(h["c"], "c");
    for (std::size_t i = 0; i < rows; ++i) z.m.push_back(ints(r.next("matrix row"), 0, cols, r));
    expect_end(r, "matrix");
    return z;
}

std::string format_zmat(const ZMatrix& m, const std::string& desc) {
    std::string s = desc_line(desc) + "ZMAT r=" + std::to_string(m.size()) + " c=" + std::to_string(m.empty() ? 0 : m[0].size()) + "\n";
    for (const auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) s += (j ? " " : "") + row[j].str();
        s += "\n";
    }
    return s;
}

ZVector parse_degrees(std::string_view text) {
    Reader r(text);
    auto h = r.header("DEGREES", {"n"});
    std::size_t n = to_u64(h["n"], "n");
    ZVector v;
    while (!r.done())
        for (const auto& w : r.next("degrees")) v.push_back(to_int(w));
    if (v.size() != n) fail(Errc::Format, "expected " + std::to_string(n) + " degrees, found " + std::to_string(v.size()));
    return v;
}

std::string format_degrees(const ZVector& v, const std::string& desc) {
    std::string s = desc_line(desc) + "DEGREES n=" + std::to_string(v.size()) + "\n";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].str();
    return s + "\n";
}

BlockList parse_blk(std::string_view text) {
    Reader r(text);
    auto h = r.header("BLK", {"p", "order", "k"});
    BlockList b;
    b.desc = r.desc;
    b.p = std::uint32_t(to_u64(h["p"], "p"));
    b.order = to_int(h["order"]);
    std::size_t k = to_u64(h["k"], "k");
    for (std::size_t i = 0; i < k; ++i) {
        auto w = r.next("character");
        if (w.size() != 2) r.bad("expected 'name degree'");
        b.names.push_back(w[0]);
        b.degrees.push_back(to_int(w[1]));
    }
    expect_end(r, "block");
    return b;
}

AtomFile parse_atom(std::string_view text) {
    Reader r(text);
    auto h = r.header("ATOM", {"simples", "modules"});
    AtomFile a;
    a.desc = r.desc;
    std::size_t ns = to_u64(h["simples"], "simples"), nm = to_u64(h["modules"], "modules");
    auto s = r.next("simples");
    if (s[0] != "simples" || s.size() != ns + 1) r.bad("expected 'simples' with " + std::to_string(ns) + " names");
    a.simples.assign(s.begin() + 1, s.end());
    auto m = r.next("modules");
    if (m[0] != "modules" || m.size() != nm + 1) r.bad("expected 'modules' with " + std::to_string(nm) + " names");
    a.modules.assign(m.begin() + 1, m.end());
    for (std::size_t i = 0; i < ns; ++i) a.a.push_back(ints(r.next("multiplicity row"), 0, nm, r));
    auto b = r.next("b");
    if (b[0] != "b") r.bad("expected 'b'");
    a.b = ints(b, 1, nm, r);
    expect_end(r, "atom problem");
    return a;
}

CliffordFile parse_clifford(std::string_view text) {
    Reader r(text);
    auto h = r.header("CLIFFORD", {"p", "l", "k", "rows"});
    CliffordFile c;
    c.desc = r.desc;
    c.p = std::uint32_t(to_u64(h["p"], "p"));
    c.l = to_u64(h["l"], "l");
    c.k = to_u64(h["k"], "k");
    std::size_t nrows = to_u64(h["rows"], "rows");
    while (!r.done()) {
        auto w = r.next("clifford line");
        if (w[0] == "swap") {
            if (w.size() != 3) r.bad("expected 'swap a b'");
            std::size_t a = to_u64(w[1], "column"), b = to_u64(w[2], "column");
            if (a < 1 || b < 1 || a > c.l || b > c.l || a == b) r.bad("swap out of range");
            c.swaps.emplace_back(a, b);
        } else if (w[0] == "row") {
            if (w.size() < 4) r.bad("expected 'row name ext a' or 'row name ind a b'");
            CliffordFile::Row row{w[1], w[2] == "ind", w[3], ""};
            if (w[2] == "ind" && w.size() == 5) row.b = w[4];
            else if (!(w[2] == "ext" && w.size() == 4)) r.bad("expected 'row name ext a' or 'row name ind a b'");
            c.rows.push_back(row);
        } else {
            r.bad("unknown line '" + w[0] + "'");
        }
    }
    if (c.rows.size() != nrows) fail(Errc::Format, "expected " + std::to_string(nrows) + " rows, found " + std::to_string(c.rows.size()));
    return c;
}

CliffordInputs clifford_inputs(const CliffordFile& c, const DecTable& g) {
    if (g.cols.size() != c.l || g.d.size() != c.k) fail(Errc::ShapeMismatch, "Clifford data and decomposition table differ in shape");
    CliffordInputs in;
    in.action.resize(c.l);
    for (std::size_t i = 0; i < c.l; ++i) in.action[i] = i;
    for (auto [a, b] : c.swaps) {
        if (in.action[a - 1] != a - 1 || in.action[b - 1] != b - 1) fail(Errc::ActionNotInvolution, "column swapped twice");
        in.action[a - 1] = b - 1;
        in.action[b - 1] = a - 1;
    }
    for (const auto& r : c.rows) {
        ctab::OrdinaryFusion f;
        f.type = r.induced ? ctab::OrdinaryFusion::Type::Induced : ctab::OrdinaryFusion::Type::Extension;
        f.a = g.row(r.a);
        if (r.induced) f.b = g.row(r.b);
        in.fusion.push_back(f);
    }
    return in;
}

SocleFile parse_socle(std::string_view text) {
    Reader r(text);
    auto h = r.header("SOCLE", {"n"});
    SocleFile s;
    s.desc = r.desc;
    std::size_t n = to_u64(h["n"], "n");
    for (std::size_t i = 0; i < n; ++i) {
        auto w = r.next("module");
        if (w.size() != 3 || w[0] != "module" || w[2].rfind("layers=", 0) != 0) r.bad("expected 'module name layers=L'");
        SocleFile::Module m;
        m.name = w[1];
        std::size_t layers = to_u64(w[2].substr(7), "layer count");
        for (std::size_t j = 0; j < layers; ++j) m.layers.push_back(r.next("layer"));
        s.modules.push_back(std::move(m));
    }
    expect_end(r, "socle series");
    return s;
}

// ---- DecompState

json state_to_json(const dxm::DecompState& s) {
    json j;
    j["format"] = "modat-decomp-state";
    j["version"] = 1;
    j["block"] = s.block;
    j["p"] = s.p;
    j["chars"] = s.chars;
    j["degrees"] = zvec_json(s.degrees);
    j["brauer_basic"] = s.brauer_basic;
    json pb = json::array();
    for (const auto& c : s.proj_basic)
        pb.push_back({{"name", c.name}, {"v", zvec_json(c.v)}, {"indecomposable", c.indecomposable}, {"origin", c.origin}});
    j["proj_basic"] = pb;
    json cand = json::array();
    for (const auto& d : s.candidates) {
        json m = json::array();
        for (const auto& row : d) m.push_back(zvec_json(row));
        cand.push_back(m);
    }
    j["candidates"] = cand;
    j["candidate_labels"] = s.candidate_labels;
    json log = json::array();
    for (const auto& e : s.log) log.push_back({{"op", e.op}, {"text", e.text}});
    j["log"] = log;
    j["solved"] = s.solved;
    return j;
}

dxm::DecompState state_from_json(const json& j) {
    try {
        if (j.value("format", "") != "modat-decomp-state") fail(Errc::Format, "not a decomposition state");
        dxm::DecompState s;
        s.block = j.at("block").get<std::string>();
        s.p = j.at("p").get<std::uint32_t>();
        s.chars = j.at("chars").get<std::vector<std::string>>();
        s.degrees = json_zvec(j.at("degrees"));
        s.brauer_basic = j.at("brauer_basic").get<std::vector<std::size_t>>();
        for (const auto& c : j.at("proj_basic"))
            s.proj_basic.push_back({c.at("name").get<std::string>(), json_zvec(c.at("v")), c.at("indecomposable").get<bool>(),
                                    c.value("origin", "")});
        for (const auto& m : j.at("candidates")) {
            ZMatrix d;
            for (const auto& row : m) d.push_back(json_zvec(row));
            s.candidates.push_back(std::move(d));
        }
        s.candidate_labels = j.value("candidate_labels", std::vector<std::string>{});
        for (const auto& e : j.at("log")) s.log.push_back({e.at("op").get<std::string>(), e.at("text").get<std::string>()});
        s.solved = j.value("solved", false);
        s.check();
        return s;
    } catch (const json::exception& e) {
        fail(Errc::Format, std::string("state file: ") + e.what());
    }
}

std::string format_state(const dxm::DecompState& s) { return state_to_json(s).dump(1) + "\n"; }

dxm::DecompState parse_state(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(Errc::Format, std::string("state file: ") + e.what());
    }
    return state_from_json(j);
}

dxm::DecompState state_from_dec(const DecTable& t, const std::string& block, bool indecomposable) {
    dxm::DecompState s;
    s.block = block;
    s.p = t.p;
    s.chars = t.names;
    s.degrees = t.degrees;
    s.brauer_basic = t.basic_rows();
    for (std::size_t j = 0; j < t.cols.size(); ++j) s.proj_basic.push_back({t.cols[j], t.column(j), indecomposable, "table"});
    s.check();
    return s;
}

}  // namespace modat::io
