#include "dga/fpk.hpp"

#include <atomic>

#if defined(__x86_64__) || defined(_M_X64)
#define DGA_FPK_X86 1
#include <immintrin.h>
#else
#define DGA_FPK_X86 0
#endif

#if defined(__aarch64__)
#define DGA_FPK_NEON 1
#include <arm_neon.h>
#else
#define DGA_FPK_NEON 0
#endif

namespace dga::fpk {

void axpy_scalar(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n, std::uint32_t p) {
    if (c == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = static_cast<std::uint32_t>((y[i] + static_cast<std::uint64_t>(c) * x[i]) % p);
    }
}

void scale_scalar(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * y[i] % p);
    }
}

#if DGA_FPK_X86

/* t = c*x + y computed in doubles is exact for p < 2^26 (t < 2^52 + 2^26);
 * the reduction t - floor(t/p)*p can be off by one step either way from the
 * rounded reciprocal, hence the two fixups. */
__attribute__((target("avx2,fma")))
static void axpy_avx2(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n, std::uint32_t p) {
    if (c == 0) return;
    const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
    const __m256d vinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
    const __m256d vc = _mm256_set1_pd(static_cast<double>(c));
    const __m256d vzero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i xi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(x + i));
        __m128i yi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(y + i));
        __m256d vx = _mm256_cvtepi32_pd(xi);
        __m256d vy = _mm256_cvtepi32_pd(yi);
        __m256d t = _mm256_fmadd_pd(vc, vx, vy);
        __m256d q = _mm256_floor_pd(_mm256_mul_pd(t, vinv));
        __m256d r = _mm256_fnmadd_pd(q, vp, t);
        r = _mm256_blendv_pd(r, _mm256_add_pd(r, vp), _mm256_cmp_pd(r, vzero, _CMP_LT_OQ));
        r = _mm256_blendv_pd(r, _mm256_sub_pd(r, vp), _mm256_cmp_pd(r, vp, _CMP_GE_OQ));
        __m128i ri = _mm256_cvttpd_epi32(r);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(y + i), ri);
    }
    if (i < n) axpy_scalar(y + i, x + i, c, n - i, p);
}

__attribute__((target("avx2,fma")))
static void scale_avx2(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p) {
    const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
    const __m256d vinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
    const __m256d vc = _mm256_set1_pd(static_cast<double>(c));
    const __m256d vzero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i yi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(y + i));
        __m256d t = _mm256_mul_pd(vc, _mm256_cvtepi32_pd(yi));
        __m256d q = _mm256_floor_pd(_mm256_mul_pd(t, vinv));
        __m256d r = _mm256_fnmadd_pd(q, vp, t);
        r = _mm256_blendv_pd(r, _mm256_add_pd(r, vp), _mm256_cmp_pd(r, vzero, _CMP_LT_OQ));
        r = _mm256_blendv_pd(r, _mm256_sub_pd(r, vp), _mm256_cmp_pd(r, vp, _CMP_GE_OQ));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(y + i), _mm256_cvttpd_epi32(r));
    }
    if (i < n) scale_scalar(y + i, c, n - i, p);
}

#endif  // DGA_FPK_X86

#if DGA_FPK_NEON

static void axpy_neon(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n, std::uint32_t p) {
    if (c == 0) return;
    const float64x2_t vp = vdupq_n_f64(static_cast<double>(p));
    const float64x2_t vinv = vdupq_n_f64(1.0 / static_cast<double>(p));
    const float64x2_t vc = vdupq_n_f64(static_cast<double>(c));
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vx = {static_cast<double>(x[i]), static_cast<double>(x[i + 1])};
        float64x2_t vy = {static_cast<double>(y[i]), static_cast<double>(y[i + 1])};
        float64x2_t t = vfmaq_f64(vy, vc, vx);
        float64x2_t q = vrndmq_f64(vmulq_f64(t, vinv));
        float64x2_t r = vfmsq_f64(t, q, vp);
        uint64x2_t neg = vcltzq_f64(r);
        r = vbslq_f64(neg, vaddq_f64(r, vp), r);
        uint64x2_t ge = vcgeq_f64(r, vp);
        r = vbslq_f64(ge, vsubq_f64(r, vp), r);
        y[i] = static_cast<std::uint32_t>(vgetq_lane_f64(r, 0));
        y[i + 1] = static_cast<std::uint32_t>(vgetq_lane_f64(r, 1));
    }
    if (i < n) axpy_scalar(y + i, x + i, c, n - i, p);
}

static void scale_neon(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p) {
    const float64x2_t vp = vdupq_n_f64(static_cast<double>(p));
    const float64x2_t vinv = vdupq_n_f64(1.0 / static_cast<double>(p));
    const float64x2_t vc = vdupq_n_f64(static_cast<double>(c));
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vy = {static_cast<double>(y[i]), static_cast<double>(y[i + 1])};
        float64x2_t t = vmulq_f64(vc, vy);
        float64x2_t q = vrndmq_f64(vmulq_f64(t, vinv));
        float64x2_t r = vfmsq_f64(t, q, vp);
        uint64x2_t neg = vcltzq_f64(r);
        r = vbslq_f64(neg, vaddq_f64(r, vp), r);
        uint64x2_t ge = vcgeq_f64(r, vp);
        r = vbslq_f64(ge, vsubq_f64(r, vp), r);
        y[i] = static_cast<std::uint32_t>(vgetq_lane_f64(r, 0));
        y[i + 1] = static_cast<std::uint32_t>(vgetq_lane_f64(r, 1));
    }
    if (i < n) scale_scalar(y + i, c, n - i, p);
}

#endif  // DGA_FPK_NEON

bool impl_available(Impl impl) {
    switch (impl) {
        case Impl::Scalar: return true;
        case Impl::Avx2:
#if DGA_FPK_X86
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Impl::Neon:
            return DGA_FPK_NEON;
    }
    return false;
}

Impl best_impl() {
    if (impl_available(Impl::Avx2)) return Impl::Avx2;
    if (impl_available(Impl::Neon)) return Impl::Neon;
    return Impl::Scalar;
}

namespace {
std::atomic<Impl> g_active{best_impl()};
}

Impl active_impl() { return g_active.load(std::memory_order_relaxed); }

bool set_impl(Impl impl) {
    if (!impl_available(impl)) return false;
    g_active.store(impl, std::memory_order_relaxed);
    return true;
}

std::string impl_name(Impl impl) {
    switch (impl) {
        case Impl::Scalar: return "scalar";
        case Impl::Avx2: return "avx2";
        case Impl::Neon: return "neon";
    }
    return "?";
}

void axpy(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c, std::size_t n, std::uint32_t p) {
    if (p <= kSimdMaxModulus) {
        switch (active_impl()) {
#if DGA_FPK_X86
            case Impl::Avx2: axpy_avx2(y, x, c, n, p); return;
#endif
#if DGA_FPK_NEON
            case Impl::Neon: axpy_neon(y, x, c, n, p); return;
#endif
            default: break;
        }
    }
    axpy_scalar(y, x, c, n, p);
}

void scale(std::uint32_t* y, std::uint32_t c, std::size_t n, std::uint32_t p) {
    if (p <= kSimdMaxModulus) {
        switch (active_impl()) {
#if DGA_FPK_X86
            case Impl::Avx2: scale_avx2(y, c, n, p); return;
#endif
#if DGA_FPK_NEON
            case Impl::Neon: scale_neon(y, c, n, p); return;
#endif
            default: break;
        }
    }
    scale_scalar(y, c, n, p);
}

}  // namespace dga::fpk
