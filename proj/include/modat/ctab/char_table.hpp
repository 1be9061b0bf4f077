#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modat/ctab/rational.hpp"
#include "modat/cyclo/cyclotomic.hpp"
#include "modat/grp/perm_group.hpp"

namespace modat::ctab {

using cyclo::Cyclotomic;

enum class CharKind { Ordinary, Brauer, Projective, Virtual };

std::string kind_name(CharKind k);
CharKind parse_kind(const std::string& s);

struct ClassInfo {
    Integer size = 1;
    std::uint64_t order = 1;
    std::string label;
    bool p_regular = true;
};

struct Character {
    std::vector<Cyclotomic> values;
    CharKind kind = CharKind::Ordinary;
    std::string name;

    const Cyclotomic& degree() const { return values.at(0); }
};

// A table whose class sizes do not add up to the order carries no class data
// (e.g. degree-only tables for large groups); only coordinate-wise operations apply.
struct CharTable {
    Integer order = 1;
    std::vector<ClassInfo> classes;
    std::vector<Character> chars;
    std::uint32_t p = 0;

    std::size_t nclasses() const noexcept { return classes.size(); }
    bool has_class_data() const;
    std::vector<std::size_t> regular_classes() const;
    Integer centralizer(std::size_t c) const { return order / classes.at(c).size; }
    void validate() const;
};

CharTable table_from_group(const grp::PermGroup& g, const grp::ClassData& cd, std::vector<Character> chars);
// group with p-regular flags reset for another prime
CharTable with_prime(CharTable t, std::uint32_t p, const std::vector<std::uint64_t>* orders = nullptr);

// sum over classes of |C| chi(C) conj(psi(C)) / |G|
Rational scalar(const CharTable& t, const Character& chi, const Character& psi);
// the same sum over p-regular classes; values on all classes or on the regular ones only
Rational scalar_p_regular(const CharTable& t, const Character& chi, const Character& psi);
bool rows_orthogonal(const CharTable& t);
bool columns_orthogonal(const CharTable& t);

// values on the p-regular classes only
Character restrict_p_regular(const CharTable& t, const Character& chi);
Character product(const Character& a, const Character& b);
Character scale(const Character& a, const Rational& c);
Character add(const Character& a, const Character& b);
// fusion[i] = class of G containing class i of the subgroup
Character induce(const CharTable& sub, const CharTable& g, const std::vector<std::size_t>& fusion, const Character& chi);

// coefficients of psi in the ordinary irreducibles of t
std::vector<Rational> expand(const CharTable& t, const Character& psi);

unsigned nu(const Integer& n, std::uint32_t p);

struct BlockData {
    std::uint32_t p = 0;
    std::vector<std::vector<std::size_t>> blocks;  // character indices
    std::vector<unsigned> defect;
    std::vector<std::size_t> block_of;
    std::vector<std::optional<std::size_t>> l;  // Brauer count when known

    std::size_t k(std::size_t b) const { return blocks.at(b).size(); }
};

BlockData blocks(const CharTable& t, std::uint32_t p);
// given partition (e.g. typed from a fixture); defects from degrees
BlockData blocks_from_partition(const CharTable& t, std::uint32_t p, std::vector<std::vector<std::size_t>> parts);
// per character: nu_p(chi(1)) - (nu_p(|G|) - d(B))
std::vector<int> heights(const BlockData& b, const CharTable& t);
Character block_project(const CharTable& t, const BlockData& b, std::size_t block, const Character& psi);

// Reduction of cyclotomic integers modulo a fixed maximal ideal over p.
class ModularReduction {
public:
    ModularReduction(std::uint32_t p, std::uint64_t conductor);
    const gfla::FieldPtr& field() const noexcept { return f_; }
    gfla::Fq operator()(const Cyclotomic& x) const;

private:
    std::uint32_t p_;
    std::uint64_t n_;
    gfla::FieldPtr f_;
    gfla::Fq zeta_;  // image of zeta_n
};

struct BasicSet {
    enum class Role { BrauerSide, ProjectiveSide };
    std::vector<Character> members;
    Role role = Role::BrauerSide;
};

// integer c with sum c_j members_j = theta
std::vector<Integer> decompose_basic(const Character& theta, const BasicSet& bs);
std::vector<Integer> decompose_basic(const std::vector<Cyclotomic>& theta, const BasicSet& bs);

// Index-2 extension: outer automorphism action on Brauer characters and the
// ordinary characters of G.2 as extensions or inductions of those of G.
struct OrdinaryFusion {
    enum class Type { Extension, Induced };
    Type type = Type::Extension;
    std::size_t a = 0, b = 0;  // induced: the swapped pair; extension: a only
    int sign = 1;              // extension tag (+1 / -1), used for odd p
};

struct CliffordResult {
    ZMatrix d;                                     // rows follow the fusion list
    std::vector<std::vector<std::size_t>> column_source;  // G Brauer indices per new column
    std::vector<int> column_sign;                  // 0 at p = 2 or for induced columns
    std::vector<bool> row_determined;
    std::size_t l = 0;
};

CliffordResult clifford_index2(const ZMatrix& d, const std::vector<std::size_t>& brauer_action,
                               const std::vector<OrdinaryFusion>& fusion, std::uint32_t p,
                               const std::vector<Integer>* degrees = nullptr, bool morita = false);

// Tables computed from a permutation group: ordinary characters via the regular
// module over GF(r) with r = 1 mod the exponent and r prime to |G|.
CharTable ordinary_table(const grp::PermGroup& g, const grp::ClassData& cd, std::uint64_t seed = 1);

struct BrauerTable {
    std::vector<rep::Representation> simples;
    std::vector<Character> chars;  // values on the p-regular classes, in class order
};
// irreducible p-modular Brauer characters over a splitting field (cd.p must be set)
BrauerTable brauer_table(const grp::PermGroup& g, const grp::ClassData& cd, std::uint64_t seed = 1);

}  // namespace modat::ctab
