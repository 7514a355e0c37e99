#include <doctest.h>

#include <random>
#include <vector>

#include "dga/fpk.hpp"

using namespace dga;

namespace {

std::vector<std::uint32_t> random_residues(std::mt19937_64& rng, std::size_t n, std::uint32_t p) {
    std::vector<std::uint32_t> v(n);
    for (auto& x : v) x = static_cast<std::uint32_t>(rng() % p);
    return v;
}

}  // namespace

TEST_CASE("fpk scalar axpy/scale reference semantics") {
    std::uint32_t p = 7;
    std::vector<std::uint32_t> y = {1, 6, 0, 3};
    std::vector<std::uint32_t> x = {2, 5, 4, 6};
    fpk::axpy_scalar(y.data(), x.data(), 3, y.size(), p);
    CHECK(y == std::vector<std::uint32_t>{0, 0, 5, 0});
    fpk::scale_scalar(y.data(), 4, y.size(), p);
    CHECK(y == std::vector<std::uint32_t>{0, 0, 6, 0});
}

TEST_CASE("fpk SIMD variants agree with the scalar reference") {
    std::mt19937_64 rng(20240901);
    // boundary moduli: tiny, mid, largest SIMD-eligible prime 2^26-5, and
    // beyond-SIMD moduli that must fall back to scalar
    const std::uint32_t moduli[] = {2, 3, 5, 97, 65521, 67108859u, 2147483647u};
    for (fpk::Impl impl : {fpk::Impl::Avx2, fpk::Impl::Neon}) {
        if (!fpk::impl_available(impl)) continue;
        INFO("impl ", fpk::impl_name(impl));
        REQUIRE(fpk::set_impl(impl));
        for (std::uint32_t p : moduli) {
            for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 129u}) {
                auto y0 = random_residues(rng, n, p);
                auto x = random_residues(rng, n, p);
                std::uint32_t c = static_cast<std::uint32_t>(rng() % p);
                auto y_ref = y0, y_simd = y0;
                fpk::axpy_scalar(y_ref.data(), x.data(), c, n, p);
                fpk::axpy(y_simd.data(), x.data(), c, n, p);
                CHECK(y_ref == y_simd);
                y_ref = y0;
                y_simd = y0;
                fpk::scale_scalar(y_ref.data(), c, n, p);
                fpk::scale(y_simd.data(), c, n, p);
                CHECK(y_ref == y_simd);
            }
            // extreme operands: c = p-1 on all-(p-1) rows
            std::vector<std::uint32_t> y(33, p - 1), x(33, p - 1);
            auto y_ref = y;
            fpk::axpy_scalar(y_ref.data(), x.data(), p - 1, y.size(), p);
            fpk::axpy(y.data(), x.data(), p - 1, y.size(), p);
            CHECK(y == y_ref);
        }
    }
    fpk::set_impl(fpk::best_impl());
}

TEST_CASE("fpk dispatcher reports a usable implementation") {
    CHECK(fpk::impl_available(fpk::Impl::Scalar));
    CHECK(fpk::impl_available(fpk::best_impl()));
    CHECK(fpk::set_impl(fpk::Impl::Scalar));
    CHECK(fpk::active_impl() == fpk::Impl::Scalar);
    CHECK(fpk::set_impl(fpk::best_impl()));
}
