#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "modat/ctab/char_table.hpp"
#include "modat/dxm/dxm.hpp"
#include "modat/grp/perm_group.hpp"
#include "modat/rep/representation.hpp"

namespace modat::io {

using ctab::Integer;
using ctab::ZMatrix;
using ZVector = std::vector<Integer>;

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// first word of the first non-comment line ("MTX", "DEC", ...)
std::string sniff(std::string_view text);

// ---- MTX: "MTX q= r= c=", then rows of base-10 element codes
std::string format_mtx(const gfla::FqMatrix& m);
gfla::FqMatrix parse_mtx(std::string_view text);

// classic MeatAxe text: "matrix field=q rows=r cols=c" or the integer header "1 q r c"
gfla::FqMatrix parse_meataxe(std::string_view text);

// ---- REP: "REP q= d= n= label=" followed by n MTX blocks
std::string format_rep(const rep::Representation& r);
rep::Representation parse_rep(std::string_view text);

// ---- PRM: "PRM n= k=", then k lines of n 1-based images
std::string format_prm(const std::vector<grp::Perm>& perms);
std::vector<grp::Perm> parse_prm(std::string_view text);

// ---- CTB character tables
std::string format_ctb(const ctab::CharTable& t);
ctab::CharTable parse_ctb(std::string_view text);

// ---- fixture tables
struct DecTable {
    std::string desc;
    std::uint32_t p = 0;
    std::vector<std::string> cols;
    std::vector<Integer> dims;
    std::vector<std::string> names;
    ZVector degrees;
    ZMatrix d;
    std::vector<std::string> basic;  // names of the rows in the Brauer basic set

    std::size_t row(const std::string& name) const;
    std::vector<std::size_t> basic_rows() const;
    ZVector column(std::size_t j) const;
};
std::string format_dec(const DecTable& t);
DecTable parse_dec(std::string_view text);

struct MultTable {
    std::string desc;
    std::vector<std::string> cols;
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> tags;  // "-" when empty
    ZMatrix m;
};
MultTable parse_mult(std::string_view text);

struct ZMatFile {
    std::string desc;
    ZMatrix m;
};
ZMatFile parse_zmat(std::string_view text);
std::string format_zmat(const ZMatrix& m, const std::string& desc = {});

ZVector parse_degrees(std::string_view text);
std::string format_degrees(const ZVector& v, const std::string& desc = {});

struct BlockList {
    std::string desc;
    std::uint32_t p = 0;
    Integer order = 0;
    std::vector<std::string> names;
    ZVector degrees;
};
BlockList parse_blk(std::string_view text);

struct AtomFile {
    std::string desc;
    std::vector<std::string> simples, modules;
    ZMatrix a;  // simples x modules
    ZVector b;  // module degrees
};
AtomFile parse_atom(std::string_view text);

struct CliffordFile {
    std::string desc;
    std::uint32_t p = 0;
    std::size_t l = 0, k = 0;
    std::vector<std::pair<std::size_t, std::size_t>> swaps;  // 1-based Brauer columns
    struct Row {
        std::string name;
        bool induced = false;
        std::string a, b;  // names in the smaller group's table
    };
    std::vector<Row> rows;
};
CliffordFile parse_clifford(std::string_view text);

struct CliffordInputs {
    std::vector<std::size_t> action;  // involution on the Brauer columns of g
    std::vector<ctab::OrdinaryFusion> fusion;
};
// resolves row names against the decomposition table of the smaller group
CliffordInputs clifford_inputs(const CliffordFile& c, const DecTable& g);

struct SocleFile {
    std::string desc;
    struct Module {
        std::string name;
        std::vector<std::vector<std::string>> layers;  // head first
    };
    std::vector<Module> modules;
};
SocleFile parse_socle(std::string_view text);

// ---- decomposition state
nlohmann::json state_to_json(const dxm::DecompState& s);
dxm::DecompState state_from_json(const nlohmann::json& j);
std::string format_state(const dxm::DecompState& s);
dxm::DecompState parse_state(std::string_view text);

// DecompState seeded from a DEC table: characters and degrees from the rows, columns from the table
dxm::DecompState state_from_dec(const DecTable& t, const std::string& block, bool indecomposable);

}  // namespace modat::io
