#pragma once

#include <cstddef>
#include <cstdint>

#include "modat/gfla/field.hpp"

namespace modat::gfla::kern {

enum class Path { Scalar, Avx2 };

// Selected once from cpuid; MODAT_SIMD=scalar forces the reference path.
Path active_path() noexcept;
void force_path(Path p) noexcept;
const char* path_name(Path p) noexcept;

// dst += c*src, dst = c*dst over n packed elements of the given width
void axpy(const Field& F, void* dst, const void* src, Fq c, std::size_t n);
void scale(const Field& F, void* dst, Fq c, std::size_t n);

namespace scalar {
void axpy8(const Field& F, std::uint8_t* dst, const std::uint8_t* src, Fq c, std::size_t n);
void scale8(const Field& F, std::uint8_t* dst, Fq c, std::size_t n);
void axpy16(const Field& F, std::uint16_t* dst, const std::uint16_t* src, Fq c, std::size_t n);
void scale16(const Field& F, std::uint16_t* dst, Fq c, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool cpu_has() noexcept;
// characteristic 2 with q <= 256, or prime fields with p <= 251
bool handles(const Field& F) noexcept;
void axpy8(const Field& F, std::uint8_t* dst, const std::uint8_t* src, Fq c, std::size_t n);
void scale8(const Field& F, std::uint8_t* dst, Fq c, std::size_t n);
}  // namespace avx2

}  // namespace modat::gfla::kern
