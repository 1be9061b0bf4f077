#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "modat/gfla/matrix.hpp"

namespace modat::rep {

using gfla::FieldPtr;
using gfla::Fq;
using gfla::FqMatrix;
using gfla::FqPolynomial;

struct Representation {
    FieldPtr field;
    std::size_t dim = 0;
    std::vector<FqMatrix> gens;
    std::string label;

    Representation() = default;
    Representation(FieldPtr f, std::size_t d, std::vector<FqMatrix> g, std::string lbl = {});

    std::size_t ngens() const noexcept { return gens.size(); }
    const gfla::Field& F() const noexcept { return *field; }
};

Representation trivial_rep(FieldPtr f, std::size_t ngens);
Representation direct_sum(const Representation& a, const Representation& b);
// generators conjugated: b g b^-1 with basis rows b
Representation change_basis(const Representation& r, const FqMatrix& basis);

// Linear combination of products of generators.
struct AlgebraWord {
    struct Term {
        Fq coeff = 1;
        std::vector<std::uint32_t> letters;  // generator indices, left to right
    };
    std::vector<Term> terms;
    std::uint64_t seed = 0;

    FqMatrix eval(const Representation& r) const;
    std::string to_string() const;
};

// Seeded pseudo-random words; length bound grows by 2 every 200 words, capped at 12.
class WordStream {
public:
    WordStream(std::uint64_t seed, std::size_t ngens, FieldPtr f);
    AlgebraWord next();
    std::size_t count() const noexcept { return count_; }

private:
    std::mt19937_64 rng_;
    std::uint64_t seed_;
    std::size_t ngens_, count_ = 0;
    FieldPtr f_;
};

inline constexpr std::size_t kDefaultWordBudget = 4000;

FqMatrix spin(const Representation& r, const FqMatrix& seeds);

struct SplitResult {
    Representation sub, quot;
    FqMatrix sub_basis;   // echelonized
    FqMatrix complement;  // unit rows completing sub_basis
};

std::pair<Representation, Representation> split(const Representation& r, const FqMatrix& sub);
SplitResult split_ex(const Representation& r, const FqMatrix& sub);

struct NortonCertificate {
    AlgebraWord word;
    FqPolynomial factor;
    FqMatrix kernel;  // basis of {v : v f(w) = 0}, dimension deg f
};

struct IrreducibilityResult {
    bool irreducible = false;
    FqMatrix submodule;  // proper nonzero invariant subspace when reducible
    NortonCertificate cert;
};

IrreducibilityResult is_irreducible(const Representation& r, std::uint64_t seed, std::size_t budget = kDefaultWordBudget);

struct ChopFactor {
    Representation simple;
    std::size_t multiplicity = 0;
    std::string name;
};

std::vector<ChopFactor> chop(const Representation& r, std::uint64_t seed, std::size_t budget = kDefaultWordBudget);
std::string chop_summary(const std::vector<ChopFactor>& f);  // "trivial:3 sign:3"

// T with a_g T = T b_g for all generators (row-vector convention)
std::optional<FqMatrix> iso(const Representation& a, const Representation& b, std::uint64_t seed = 1);

Representation dual(const Representation& r);
Representation tensor(const Representation& a, const Representation& b);
std::vector<FqMatrix> hom(const Representation& a, const Representation& b);

struct SocleLayer {
    std::vector<std::size_t> multiplicity;  // indexed like the supplied simples
    std::size_t dim = 0;
};

std::vector<SocleLayer> socle_series(const Representation& r, const std::vector<Representation>& simples, std::uint64_t seed);

struct CompositionSeries {
    Representation module;
    std::vector<FqMatrix> chain;     // echelonized bases, chain.front() empty, chain.back() full
    std::vector<Representation> factors;
    std::vector<std::size_t> factor_class;  // isomorphism class index per factor
    FqMatrix adapted_basis;          // rows; generators become block lower triangular
    std::vector<std::size_t> block_sizes;
};

CompositionSeries composition_series(const Representation& r, std::uint64_t seed);

struct GenerationCheck {
    bool preserved = false;
    bool diag_isos_consistent = false;
};

GenerationCheck check_generation(const CompositionSeries& s, const std::vector<FqMatrix>& extra);

struct Peakword {
    AlgebraWord word;
    FqPolynomial factor;
};

// one peakword per simple: factor with nullity = splitting degree on that simple, zero on the others
std::vector<Peakword> peakwords(const std::vector<Representation>& simples, std::uint64_t seed,
                                std::size_t budget = kDefaultWordBudget);

}  // namespace modat::rep
