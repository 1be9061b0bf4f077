#include "modat/gfla/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace modat::gfla::kern {

namespace {

Path detect() noexcept {
    if (const char* env = std::getenv("MODAT_SIMD"); env && std::strcmp(env, "scalar") == 0) return Path::Scalar;
    return avx2::cpu_has() ? Path::Avx2 : Path::Scalar;
}

std::atomic<int>& selected() {
    static std::atomic<int> s{int(detect())};
    return s;
}

}  // namespace

Path active_path() noexcept { return Path(selected().load(std::memory_order_relaxed)); }

void force_path(Path p) noexcept {
    if (p == Path::Avx2 && !avx2::cpu_has()) p = Path::Scalar;
    selected().store(int(p), std::memory_order_relaxed);
}

const char* path_name(Path p) noexcept { return p == Path::Avx2 ? "avx2" : "scalar"; }

namespace scalar {

void axpy8(const Field& F, std::uint8_t* dst, const std::uint8_t* src, Fq c, std::size_t n) {
    if (c == 0) return;
    const std::uint8_t* m = F.mul_row(c);
    if (F.p() == 2) {
        for (std::size_t i = 0; i < n; ++i) dst[i] ^= m[src[i]];
        return;
    }
    for (std::size_t i = 0; i < n; ++i) dst[i] = F.add_row(dst[i])[m[src[i]]];
}

void scale8(const Field& F, std::uint8_t* dst, Fq c, std::size_t n) {
    if (c == 1) return;
    const std::uint8_t* m = F.mul_row(c);
    for (std::size_t i = 0; i < n; ++i) dst[i] = m[dst[i]];
}

void axpy16(const Field& F, std::uint16_t* dst, const std::uint16_t* src, Fq c, std::size_t n) {
    if (c == 0) return;
    for (std::size_t i = 0; i < n; ++i)
        if (src[i]) dst[i] = std::uint16_t(F.zech_add(dst[i], F.zech_mul(c, src[i])));
}

void scale16(const Field& F, std::uint16_t* dst, Fq c, std::size_t n) {
    if (c == 1) return;
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::uint16_t(F.zech_mul(c, dst[i]));
}

}  // namespace scalar

void axpy(const Field& F, void* dst, const void* src, Fq c, std::size_t n) {
    if (c == 0 || n == 0) return;
    if (F.width() == 2) {
        scalar::axpy16(F, static_cast<std::uint16_t*>(dst), static_cast<const std::uint16_t*>(src), c, n);
        return;
    }
    auto* d = static_cast<std::uint8_t*>(dst);
    auto* s = static_cast<const std::uint8_t*>(src);
    if (n >= 32 && active_path() == Path::Avx2 && avx2::handles(F))
        avx2::axpy8(F, d, s, c, n);
    else
        scalar::axpy8(F, d, s, c, n);
}

void scale(const Field& F, void* dst, Fq c, std::size_t n) {
    if (c == 1 || n == 0) return;
    if (F.width() == 2) {
        scalar::scale16(F, static_cast<std::uint16_t*>(dst), c, n);
        return;
    }
    auto* d = static_cast<std::uint8_t*>(dst);
    if (n >= 32 && active_path() == Path::Avx2 && avx2::handles(F))
        avx2::scale8(F, d, c, n);
    else
        scalar::scale8(F, d, c, n);
}

}  // namespace modat::gfla::kern
