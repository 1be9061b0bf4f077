#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "modat/rep/representation.hpp"

namespace modat::grp {

// images of 0..n-1; products act left to right: (p*q)(i) = q(p(i))
using Perm = std::vector<std::uint32_t>;

Perm perm_identity(std::size_t n);
Perm perm_mul(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);
Perm perm_pow(const Perm& p, std::int64_t e);
std::size_t perm_order(const Perm& p);
bool perm_is_identity(const Perm& p);
// "(1,2,3)(4,5)"; 1-based points. Degree taken from n, or the largest point when n = 0.
Perm parse_cycles(const std::string& s, std::size_t n = 0);
std::string format_cycles(const Perm& p);

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};

inline constexpr std::size_t kDefaultGroupBound = 1'000'000;

class PermGroup {
public:
    PermGroup() = default;

    std::size_t degree() const noexcept { return degree_; }
    const std::vector<Perm>& gens() const noexcept { return gens_; }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<Perm>& elements() const noexcept { return elements_; }
    const Perm& element(std::size_t i) const { return elements_.at(i); }
    std::optional<std::size_t> index_of(const Perm& p) const;
    bool contains(const Perm& p) const { return index_of(p).has_value(); }
    // shortest word in the generators (indices), found breadth first
    const std::vector<std::uint32_t>& word(std::size_t i) const { return words_.at(i); }
    // index of element(i) * gens()[g]
    std::size_t right_mul(std::size_t i, std::size_t g) const { return rmul_[g][i]; }
    std::size_t mul(std::size_t i, std::size_t j) const;
    std::size_t inverse(std::size_t i) const;

    friend PermGroup enumerate(std::vector<Perm> gens, std::size_t bound);

private:
    std::size_t degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> elements_;
    std::vector<std::vector<std::uint32_t>> words_;
    std::vector<std::vector<std::uint32_t>> rmul_;
    std::unordered_map<Perm, std::size_t, PermHash> index_;
};

// elements sorted lexicographically by image list, identity first
PermGroup enumerate(std::vector<Perm> gens, std::size_t bound = kDefaultGroupBound);

struct ClassData {
    std::uint32_t p = 0;
    std::vector<std::size_t> reps;      // element indices, lexicographically least in each class
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> orders;
    std::vector<std::string> labels;    // 1A, 2A, 3A, 3B, ...
    std::vector<bool> p_regular;
    std::vector<std::size_t> class_of;  // per element
    std::map<std::uint32_t, std::vector<std::size_t>> power_maps;  // prime -> class of rep^prime

    std::size_t count() const noexcept { return reps.size(); }
    std::size_t centralizer_order(std::size_t c, std::size_t group_order) const { return group_order / sizes.at(c); }
    std::vector<std::size_t> regular_classes() const;
};

// classes sorted by (element order, representative index)
ClassData conjugacy_classes(const PermGroup& g, std::uint32_t p);

struct CosetAction {
    std::vector<std::size_t> reps;  // least element of each right coset H x
    std::vector<Perm> gens;         // action of g's generators on the cosets
};

CosetAction coset_action(const PermGroup& g, const std::vector<Perm>& h_gens);

struct DoubleCosets {
    std::vector<std::size_t> reps;  // least element of each H x H
    std::vector<std::size_t> sizes;
};

DoubleCosets double_cosets(const PermGroup& g, const std::vector<Perm>& h_gens);

// the subgroup generated by h_gens, checked to lie in g
PermGroup subgroup(const PermGroup& g, const std::vector<Perm>& h_gens);

rep::Representation perm_rep(const PermGroup& g, gfla::FieldPtr field);
rep::Representation regular_rep(const PermGroup& g, gfla::FieldPtr field);
rep::Representation perm_rep(const std::vector<Perm>& gens, gfla::FieldPtr field, std::string label = "perm");

// matrix of an element of g in a representation on g's generators
gfla::FqMatrix element_matrix(const rep::Representation& r, const PermGroup& g, std::size_t element);

}  // namespace modat::grp
