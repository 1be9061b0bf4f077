#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace modat::gfla {

// Element encoding: sum a_i w^i  <->  sum a_i p^i, w a root of the Conway polynomial.
using Fq = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

bool is_prime(std::uint64_t n);

class Field {
public:
    static FieldPtr make(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t k() const noexcept { return k_; }
    std::uint32_t q() const noexcept { return q_; }
    // element width in packed storage
    unsigned width() const noexcept { return q_ <= 256 ? 1u : 2u; }
    // low-to-high, monic, length k+1
    const std::vector<std::uint32_t>& conway() const noexcept { return conway_; }
    Fq generator() const noexcept { return gen_; }
    std::string name() const;

    Fq add(Fq a, Fq b) const noexcept {
        if (q_ <= 256) return add_tab_[(a << 8) | b];
        return zech_add(a, b);
    }
    Fq neg(Fq a) const noexcept { return neg_[a]; }
    Fq sub(Fq a, Fq b) const noexcept { return add(a, neg_[b]); }
    Fq mul(Fq a, Fq b) const noexcept {
        if (q_ <= 256) return mul_tab_[(a << 8) | b];
        return zech_mul(a, b);
    }
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, std::uint64_t e) const noexcept;
    Fq from_int(std::int64_t n) const noexcept;
    // integer in 0..p-1 when a lies in the prime field
    bool in_prime_field(Fq a) const noexcept { return a < p_; }

    std::uint32_t log(Fq a) const noexcept { return log_[a]; }  // a != 0
    Fq exp(std::uint64_t e) const noexcept { return exp_[e % (q_ - 1)]; }
    std::uint32_t order(Fq a) const noexcept;  // multiplicative order, a != 0

    // w^zech(n) = 1 + w^n; kNoZech when 1 + w^n = 0
    static constexpr std::uint32_t kNoZech = 0xFFFFFFFFu;
    std::uint32_t zech(std::uint32_t n) const noexcept {
        std::uint16_t z = zech_[n];
        return z == 0xFFFF ? kNoZech : z;
    }

    // Zech-logarithm route
    Fq zech_add(Fq a, Fq b) const noexcept;
    Fq zech_mul(Fq a, Fq b) const noexcept;
    // polynomial-representation route (reference)
    Fq poly_add(Fq a, Fq b) const noexcept;
    Fq poly_mul(Fq a, Fq b) const noexcept;

    // q <= 256 only
    const std::uint8_t* mul_row(Fq c) const noexcept { return mul_tab_.data() + (c << 8); }
    const std::uint8_t* add_row(Fq a) const noexcept { return add_tab_.data() + (a << 8); }

    // digits a_0..a_{k-1}
    std::vector<std::uint32_t> digits(Fq a) const;
    Fq from_digits(const std::vector<std::uint32_t>& d) const;

    Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> conway);

private:
    std::uint32_t p_, k_, q_;
    std::vector<std::uint32_t> conway_;
    Fq gen_;
    std::vector<std::uint16_t> exp_, log_, zech_, neg_;
    std::vector<std::uint8_t> add_tab_, mul_tab_;
};

inline bool same_field(const Field& a, const Field& b) noexcept { return a.p() == b.p() && a.k() == b.k(); }

FieldPtr field_make(std::uint32_t p, std::uint32_t k);

// Conway polynomial by definition; memoized, optionally persisted.
std::vector<std::uint32_t> conway_polynomial(std::uint32_t p, std::uint32_t k);
// empty path disables the persistent cache; MODAT_CONWAY_CACHE is read at first use
void set_conway_cache_path(const std::string& path);

// smallest m with (p^m - 1) divisible by n, 0 when p divides n
std::uint32_t order_mod(std::uint32_t p, std::uint64_t n);

// image of x in GF(p^K) when GF(p^k) embeds; subfield generator w_K^((q_K-1)/(q_k-1))
Fq embed(const Field& from, const Field& to, Fq x);

}  // namespace modat::gfla
