// Compiled with -mavx2; only entered after the runtime cpu check.
#include <immintrin.h>

#include "modat/gfla/kernels.hpp"

namespace modat::gfla::kern::avx2 {

bool cpu_has() noexcept {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool handles(const Field& F) noexcept {
    if (F.q() > 256) return false;
    return F.p() == 2 || F.k() == 1;
}

namespace {

// GF(2^k), k <= 8: c*x = c*lo(x) ^ c*(hi(x) << 4)
struct NibbleTables {
    __m256i lo, hi;
};

NibbleTables nibble_tables(const Field& F, Fq c) {
    alignas(32) std::uint8_t lo[32], hi[32];
    const std::uint8_t* m = F.mul_row(c);
    for (int i = 0; i < 16; ++i) {
        std::uint8_t l = i < int(F.q()) ? m[i] : 0;
        std::uint8_t h = (i << 4) < int(F.q()) ? m[i << 4] : 0;
        lo[i] = lo[i + 16] = l;
        hi[i] = hi[i + 16] = h;
    }
    return {_mm256_load_si256(reinterpret_cast<const __m256i*>(lo)), _mm256_load_si256(reinterpret_cast<const __m256i*>(hi))};
}

inline __m256i gf2_mul(__m256i x, const NibbleTables& t, __m256i mask) {
    __m256i l = _mm256_and_si256(x, mask);
    __m256i h = _mm256_and_si256(_mm256_srli_epi16(x, 4), mask);
    return _mm256_xor_si256(_mm256_shuffle_epi8(t.lo, l), _mm256_shuffle_epi8(t.hi, h));
}

// prime field: 16-bit lanes, Barrett with m = floor(2^16 / p)
struct PrimeConsts {
    __m256i c, m, p;
};

inline __m256i reduce_once(__m256i r, __m256i p) { return _mm256_min_epu16(r, _mm256_sub_epi16(r, p)); }

inline __m256i prime_mul16(__m256i x, const PrimeConsts& k) {
    __m256i prod = _mm256_mullo_epi16(x, k.c);
    __m256i qt = _mm256_mulhi_epu16(prod, k.m);
    __m256i r = _mm256_sub_epi16(prod, _mm256_mullo_epi16(qt, k.p));
    return reduce_once(r, k.p);
}

inline __m128i pack16(__m256i v) {
    return _mm_packus_epi16(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
}

PrimeConsts prime_consts(const Field& F, Fq c) {
    return {_mm256_set1_epi16(short(c)), _mm256_set1_epi16(short((1u << 16) / F.p())), _mm256_set1_epi16(short(F.p()))};
}

}  // namespace

void axpy8(const Field& F, std::uint8_t* dst, const std::uint8_t* src, Fq c, std::size_t n) {
    if (c == 0) return;
    std::size_t i = 0;
    if (F.p() == 2) {
        if (c == 1) {
            for (; i + 32 <= n; i += 32) {
                __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
                __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
                _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, s));
            }
        } else {
            const NibbleTables t = nibble_tables(F, c);
            const __m256i mask = _mm256_set1_epi8(0x0F);
            for (; i + 32 <= n; i += 32) {
                __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
                __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
                _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, gf2_mul(s, t, mask)));
            }
        }
    } else {
        const PrimeConsts k = prime_consts(F, c);
        for (; i + 16 <= n; i += 16) {
            __m256i s = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(src + i)));
            __m256i d = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i)));
            __m256i sum = reduce_once(_mm256_add_epi16(d, prime_mul16(s, k)), k.p);
            _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), pack16(sum));
        }
    }
    if (i < n) scalar::axpy8(F, dst + i, src + i, c, n - i);
}

void scale8(const Field& F, std::uint8_t* dst, Fq c, std::size_t n) {
    if (c == 1) return;
    std::size_t i = 0;
    if (F.p() == 2) {
        const NibbleTables t = nibble_tables(F, c);
        const __m256i mask = _mm256_set1_epi8(0x0F);
        for (; i + 32 <= n; i += 32) {
            __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), gf2_mul(d, t, mask));
        }
    } else {
        const PrimeConsts k = prime_consts(F, c);
        for (; i + 16 <= n; i += 16) {
            __m256i d = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + i)));
            _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i), pack16(prime_mul16(d, k)));
        }
    }
    if (i < n) scalar::scale8(F, dst + i, c, n - i);
}

}  // namespace modat::gfla::kern::avx2
