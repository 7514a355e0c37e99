#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace dga::fpk {

/* Row kernels for arithmetic mod p, p < 2^31, entries stored in [0, p).
 *
 * The scalar kernels are the reference implementation and work for the full
 * modulus range.  The SIMD variants (AVX2 on x86-64, NEON on aarch64) use the
 * exact double-precision floor-reduction and are engaged only for p < 2^26,
 * where every intermediate is exactly representable; outside that range the
 * dispatcher falls back to scalar. */

enum class Impl { Scalar, Avx2, Neon };

/* Largest modulus the SIMD variants accept. */
inline constexpr std::uint32_t kSimdMaxModulus = (1u << 26) - 1;

bool impl_available(Impl impl);
Impl best_impl();

/* Active implementation for eligible (p < 2^26) calls.  Defaults to
 * best_impl(); settable for equivalence tests.  Returns false if the
 * requested implementation is unavailable on this machine. */
Impl active_impl();
bool set_impl(Impl impl);

std::string impl_name(Impl impl);

/* y[i] <- (y[i] + c*x[i]) mod p */
void axpy(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n, std::uint32_t p);

/* y[i] <- (c*y[i]) mod p */
void scale(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p);

/* Reference kernels, always available (used directly by the equivalence tests). */
void axpy_scalar(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n, std::uint32_t p);
void scale_scalar(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p);

}  // namespace dga::fpk
