#pragma once

#include <cstdint>
#include <vector>

#include "modat/ctab/char_table.hpp"
#include "modat/grp/perm_group.hpp"
#include "modat/rep/representation.hpp"

namespace modat::cond {

using gfla::FqMatrix;
using rep::Representation;
using Word = std::vector<std::uint32_t>;

inline constexpr std::size_t kMaxSubgroupOrder = 100000;

struct CondensationSetup {
    Representation ambient;
    std::vector<Word> k_words;
    std::size_t k_order = 1;  // order of K as represented on the ambient module
    FqMatrix projector;       // e = |K|^-1 sum of k
    FqMatrix image_basis;     // canonical basis of Ve

    std::size_t rank() const noexcept { return image_basis.rows(); }
};

enum class KInput { Generators, Elements };

FqMatrix eval_word(const Representation& r, const Word& w);
std::vector<Word> words_of(const grp::PermGroup& g, const std::vector<grp::Perm>& elements);

CondensationSetup make_idempotent(const Representation& v, const std::vector<Word>& k, KInput input = KInput::Generators);

// e g e on Ve in image-basis coordinates
FqMatrix condense_matrix(const CondensationSetup& s, const FqMatrix& g);
FqMatrix condense_element(const CondensationSetup& s, const Word& g);

struct CondensedAlgebraSlice {
    std::vector<FqMatrix> gens;
    std::vector<Word> words;
    bool known_full = false;  // generators follow the double-coset recipe

    Representation module(gfla::FieldPtr f, std::string label = "cond") const;
};

CondensedAlgebraSlice condense_slice(const CondensationSetup& s, const std::vector<Word>& gs, bool known_full = false);
// e d e for d over K\G/K together with K's generators; spans eFGe
CondensedAlgebraSlice double_coset_slice(const CondensationSetup& s, const grp::PermGroup& g,
                                         const std::vector<grp::Perm>& k_gens);

// Permutation module condensed on K-orbit sums without building the ambient matrices.
struct PermCondensation {
    std::vector<std::vector<std::size_t>> orbits;  // ordered by least point
    std::vector<std::size_t> orbit_of;
    std::size_t k_order = 1;
    CondensedAlgebraSlice slice;
};

PermCondensation condense_perm(const std::vector<grp::Perm>& k_gens, const std::vector<grp::Perm>& elements,
                               gfla::FieldPtr f);

// (a x b)e through Hom_K(a*, b): basis vectors are da x db matrices X, g acts by X -> A_g^T X B_g
struct TensorCondensation {
    Representation a, b;
    std::vector<std::pair<FqMatrix, FqMatrix>> k_elements;
    FqMatrix basis;  // canonical, rows are flattened X (row-major, matching kron order)

    std::size_t rank() const noexcept { return basis.rows(); }
};

TensorCondensation make_tensor_condensation(const Representation& a, const Representation& b, const std::vector<Word>& k);
FqMatrix condense_tensor(const TensorCondensation& t, const Word& g);
FqMatrix condense_tensor(const Representation& a, const Representation& b, const std::vector<Word>& k, const Word& g);

// ambient vectors for coordinate rows over the image basis
FqMatrix embed(const CondensationSetup& s, const FqMatrix& coords);
// submodule generated by U (ambient rows inside Ve)
FqMatrix uncondense(const CondensationSetup& s, const FqMatrix& u);
// coordinates of (W)e = W meet Ve for a submodule W
FqMatrix condense_subspace(const CondensationSetup& s, const FqMatrix& w);

// <1_K, chi restricted to K>; fusion maps K's classes to indices of chi
std::size_t condensed_dim(const ctab::CharTable& k_table, const std::vector<std::size_t>& fusion,
                          const std::vector<cyclo::Cyclotomic>& chi);
std::vector<std::size_t> class_fusion(const grp::PermGroup& k, const grp::ClassData& kcd, const grp::PermGroup& g,
                                      const grp::ClassData& gcd);

}  // namespace modat::cond
