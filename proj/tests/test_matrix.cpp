#include <doctest.h>

#include <random>

#include "dga/matrix.hpp"

using namespace dga;

namespace {

template <FieldType F>
Matrix<F> from_ints(const F& f, std::size_t r, std::size_t c, std::initializer_list<long> v) {
    Matrix<F> m(f, r, c);
    auto it = v.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = f.from_int(*it++);
    return m;
}

template <FieldType F>
Matrix<F> random_matrix(const F& f, std::mt19937_64& rng, std::size_t r, std::size_t c) {
    Matrix<F> m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = (rng() % 3 == 0) ? f.zero() : f.from_int(static_cast<long>(rng() % 7) - 3);
    return m;
}

}  // namespace

TEST_CASE("scalar invariants") {
    RationalField q;
    auto e = q.from_fraction(4, -6);
    CHECK(q.to_string(e) == "-2/3");  // lowest terms, positive denominator
    CHECK(q.eq(q.add(q.from_fraction(1, 3), q.from_fraction(1, 6)), q.from_fraction(1, 2)));

    PrimeField f5(5);
    CHECK(f5.from_int(-3) == 2);
    CHECK(f5.mul(f5.inv(3), 3) == 1);
    CHECK_THROWS_AS(PrimeField(6), InputError);
    CHECK_THROWS_AS(PrimeField(1), InputError);
    PrimeField big(2147483647);  // 2^31 - 1
    CHECK(big.mul(big.inv(123456789), 123456789) == 1);
}

TEST_CASE("rref examples") {
    RationalField q;
    SUBCASE("identity") {
        auto m = Matrix<RationalField>::identity(q, 2);
        auto [r, piv] = m.rref();
        CHECK(r == m);
        CHECK(piv == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("rank one") {
        auto m = from_ints(q, 2, 2, {2, 4, 1, 2});
        auto [r, piv] = m.rref();
        CHECK(r == from_ints(q, 2, 2, {1, 2, 0, 0}));
        CHECK(piv == std::vector<std::size_t>{0});
    }
    SUBCASE("empty") {
        Matrix<RationalField> m(q, 0, 0);
        auto [r, piv] = m.rref();
        CHECK(r.rows() == 0);
        CHECK(piv.empty());
    }
    SUBCASE("idempotent") {
        std::mt19937_64 rng(7);
        for (int t = 0; t < 20; ++t) {
            auto m = random_matrix(q, rng, 4, 5);
            auto r1 = m.rref().reduced;
            CHECK(r1.rref().reduced == r1);
        }
    }
}

TEST_CASE("kernel and image") {
    RationalField q;
    CHECK(Matrix<RationalField>::identity(q, 3).kernel_basis().empty());
    CHECK(Matrix<RationalField>(q, 3, 3).kernel_basis().size() == 3);

    auto m = from_ints(q, 1, 2, {1, 1});
    auto k = m.kernel_basis();
    REQUIRE(k.size() == 1);
    CHECK(q.eq(k[0][0], q.neg(k[0][1])));  // (1,-1) up to scaling

    CHECK(Matrix<RationalField>(q, 2, 2).image_basis().empty());
    CHECK(Matrix<RationalField>::identity(q, 4).image_basis().size() == 4);
    auto im = from_ints(q, 2, 2, {1, 2, 2, 4}).image_basis();
    REQUIRE(im.size() == 1);
    CHECK(q.eq(im[0][1], q.mul(q.from_int(2), im[0][0])));  // spans (1,2)^T
}

TEST_CASE("solve") {
    RationalField q;
    auto id = Matrix<RationalField>::identity(q, 2);
    Vec<RationalField> b = {q.from_int(3), q.from_int(-4)};
    CHECK(*id.solve(b) == b);

    auto m = from_ints(q, 1, 2, {1, 1});
    auto x = m.solve({q.from_int(3)});
    REQUIRE(x.has_value());
    CHECK(q.eq((*x)[0], q.from_int(3)));
    CHECK(q.eq((*x)[1], q.zero()));

    auto z = from_ints(q, 1, 1, {0});
    CHECK(!z.solve({q.from_int(1)}).has_value());
}

TEST_CASE("rank-nullity and exact substitution on random matrices (both fields)") {
    std::mt19937_64 rng(20240902);
    RationalField q;
    PrimeField f5(5);
    auto run = [&](auto f) {
        using F = decltype(f);
        for (int t = 0; t < 30; ++t) {
            std::size_t r = rng() % 5, c = rng() % 6;
            auto m = random_matrix(f, rng, r, c);
            CHECK(m.rank() + m.kernel_basis().size() == c);
            for (const auto& v : m.kernel_basis()) CHECK(vec_is_zero(f, m.apply(v)));
            Vec<F> x(c, f.zero());
            for (auto& e : x) e = f.from_int(static_cast<long>(rng() % 5) - 2);
            auto b = m.apply(x);
            auto s = m.solve(b);
            REQUIRE(s.has_value());
            CHECK(m.apply(*s) == b);
        }
    };
    run(q);
    run(f5);
}

TEST_CASE("field mismatch raises") {
    PrimeField f5(5), f7(7);
    Matrix<PrimeField> a(f5, 2, 2), b(f7, 2, 2);
    CHECK_THROWS_AS(a.mul(b), FieldMismatchError);
}

TEST_CASE("coordinates in quotient") {
    RationalField q;
    SUBCASE("empty subspace") {
        auto r = coordinates_in_quotient(q, {}, 2, unit_vec(q, 2, 0));
        CHECK(r.complement == std::vector<std::size_t>{0, 1});
        CHECK(r.coords == Vec<RationalField>{q.one(), q.zero()});
    }
    SUBCASE("span e1") {
        auto r = coordinates_in_quotient(q, {unit_vec(q, 2, 0)}, 2, unit_vec(q, 2, 0));
        CHECK(r.complement == std::vector<std::size_t>{1});
        CHECK(r.coords == Vec<RationalField>{q.zero()});
    }
    SUBCASE("vector inside span") {
        Vec<RationalField> d = {q.one(), q.one()};
        Vec<RationalField> v = {q.from_int(2), q.from_int(2)};
        auto r = coordinates_in_quotient(q, {d}, 2, v);
        CHECK(r.coords == Vec<RationalField>{q.zero()});
    }
    SUBCASE("dependent subspace rejected") {
        Vec<RationalField> d = {q.one(), q.one()};
        CHECK_THROWS(coordinates_in_quotient(q, {d, d}, 2, d));
    }
}
