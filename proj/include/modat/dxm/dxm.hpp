#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modat/ctab/char_table.hpp"

namespace modat::dxm {

using ctab::Integer;
using ctab::QMatrix;
using ctab::QVector;
using ctab::Rational;
using ctab::ZMatrix;
using ZVector = std::vector<Integer>;

inline constexpr std::size_t kMaxCandidates = 1'000'000;

struct ProjColumn {
    std::string name;
    ZVector v;  // multiplicities of the block's ordinary characters
    bool indecomposable = false;
    std::string origin;
};

struct LogEntry {
    std::string op;
    std::string text;
};

// Working state for one block: ordinary characters, basic sets, candidate matrices.
struct DecompState {
    std::string block;
    std::uint32_t p = 0;
    std::vector<std::string> chars;  // ordinary character names
    ZVector degrees;
    std::vector<std::size_t> brauer_basic;  // characters whose restrictions form the Brauer basic set
    std::vector<ProjColumn> proj_basic;
    std::vector<ZMatrix> candidates;  // k x l, columns in proj_basic order
    std::vector<std::string> candidate_labels;
    std::vector<LogEntry> log;
    bool solved = false;

    std::size_t k() const noexcept { return chars.size(); }
    std::size_t l() const noexcept { return proj_basic.size(); }
    ZMatrix proj_matrix() const;  // k x l
    void check() const;
    void note(const std::string& op, const std::string& text) { log.push_back({op, text}); }
};

// coefficients of v in the projective basic set; NotInSpan / NonIntegral
ZVector decompose_projective(const DecompState& s, const ZVector& v);
// restrictions of the non-basic characters expressed in the Brauer basic set (rows follow chars)
QMatrix brauer_expansion(const DecompState& s);

// ---- Cartan equation D^T D = C
struct CartanInstance {
    ZMatrix c;
    std::size_t k = 0;
};
// all nonnegative integral D without zero rows, rows in decreasing lexicographic order
std::vector<ZMatrix> dtd_solve(const CartanInstance& inst);

// ---- Fitting correspondence
struct FittingInput {
    ZMatrix e_dec;                       // decomposition matrix of the endomorphism ring (rows x simples)
    std::vector<Integer> simple_dims;    // dimensions of its simple modules
    ZVector psi;                         // multiplicities of the ordinary characters in the projective module
    std::vector<std::pair<std::size_t, std::size_t>> pinned;  // (row, character)
    std::vector<std::string> row_names, column_names;
};

struct FittingMatch {
    std::vector<std::size_t> row_to_char;
    std::vector<ZVector> columns;  // implied projective indecomposables
};

struct FittingResult {
    std::size_t admissible = 0;
    std::vector<FittingMatch> survivors;
};

FittingResult fitting_match(const DecompState& s, const FittingInput& in);
// new indecomposables replace basic-set members with coefficient +-1, first such member each time
DecompState apply_fitting(DecompState s, const FittingMatch& m, const std::vector<std::string>& names = {});

DecompState refine_by_relation(DecompState s, const ZVector& psi_new, const std::string& name = "Psi'");

// optional cap on multiples: (column, indecomposable column) -> max
using SubtractionBounds = std::map<std::pair<std::size_t, std::size_t>, Integer>;
DecompState enumerate_candidates(DecompState s, const SubtractionBounds& bounds = {});

// Brauer degrees implied by D and the ordinary degrees; nothing unless unique, integral and positive
std::optional<ZVector> implied_degrees(const ZMatrix& d, const ZVector& degrees);
// keep candidates whose implied degrees contain the known ones as a multiset
DecompState import_brauer_degrees(DecompState s, const ZVector& known);
DecompState eliminate_by_atom(DecompState s, const Integer& atom_degree, std::size_t position);

// ---- Brauer atoms b A^-1
struct AtomProblem {
    ZMatrix a;   // simples x modules
    QMatrix b;   // one row per module: its character (any coordinates; first entry the degree)
};
QMatrix atoms(const AtomProblem& pr);

// ---- semidihedral blocks of defect 16
struct SD16Instance {
    std::vector<std::string> names;
    ZVector degrees;
    std::vector<int> heights;
};

struct SD16Result {
    std::array<std::size_t, 4> chi{};  // chi_1..chi_4 as instance indices
    std::array<int, 4> delta{};
    std::vector<std::size_t> star;     // height one
    std::size_t hat = 0;               // height two
    std::size_t basis_index = 0;       // i when the basic set is {chi_i', chi*', chi^'}, else 0
    std::vector<std::size_t> basis;    // instance indices of the basic set (matrix columns)
    ZMatrix matrix;                    // rows follow the instance
};

SD16Result sd16_analyze(const SD16Instance& inst);

// ---- checks
bool verify_matrix(const ZMatrix& d, const std::vector<std::vector<ctab::Cyclotomic>>& chi,
                   const std::vector<std::vector<ctab::Cyclotomic>>& phi);
// Brauer degrees from an invertible row subset; nothing when not integral or not positive
std::optional<ZVector> back_substitute_degrees(const ZMatrix& d, const ZVector& degrees);
bool verify_degrees(const ZMatrix& d, const ZVector& degrees);

// ---- projectives from products with defect-zero characters (and given induced characters)
struct Projective {
    ZVector coeffs;  // over the block's characters
    std::string origin;
    Integer divided_by = 1;
};
std::vector<Projective> projectives_from_products(const ctab::CharTable& t, const ctab::BlockData& b, std::size_t block,
                                                  const std::vector<ctab::Character>& induced = {});

}  // namespace modat::dxm
