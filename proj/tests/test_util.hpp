#pragma once

#include <random>

#include "dga/dgbuild.hpp"

namespace dga::testutil {

/* cone(Σ^{-s}R -> R) sending the free generator to the cycle z in R^s */
template <FieldType F>
ModPtr<F> cone_on_cycle(const AlgPtr<F>& A, int s, const Vec<F>& z) {
    auto R = algebra_as_module(A, Side::Left);
    auto sf = semifree_module(A, Side::Left, {{"g", s}});
    auto phi = semifree_morphism(sf, R, {z});
    return cone(phi);
}

/* the running instance: cone(Σ^{-n}R ->^{·x} R) over a sphere algebra */
template <FieldType F>
ModPtr<F> x_cone(const AlgPtr<F>& A, int n) {
    return cone_on_cycle(A, n, Vec<F>{A->field().one()});
}

inline long rsmall(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

template <FieldType F>
Matrix<F> random_invertible(const F& f, std::mt19937_64& rng, std::size_t n) {
    auto m = Matrix<F>::identity(f, n);
    for (std::size_t k = 0; k < 3 * n; ++k) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        auto c = f.from_int(rsmall(rng, -2, 2));
        if (f.is_zero(c)) continue;
        f.row_axpy(m.row(i), m.row(j), c);
    }
    return m;
}

/* Random complex with exact d^2 = 0: canonical-rank differential conjugated
 * by random invertible degreewise changes of basis. */
template <FieldType F>
CochainComplex<F> random_complex(const F& f, std::mt19937_64& rng, int lo, int hi, int maxdim,
                                 bool complete = true) {
    Window w(lo, hi, complete, complete);
    GradedSpace sp(w);
    std::vector<int> dims(hi - lo + 1);
    for (auto& d : dims) d = static_cast<int>(rng() % (maxdim + 1));
    for (int j = lo; j <= hi; ++j) sp.set_dim(j, dims[j - lo]);
    // ranks r_j <= min(dim_j - r_{j-1}, dim_{j+1})
    std::vector<int> ranks(dims.size(), 0);
    int prev = 0;
    for (std::size_t t = 0; t + 1 < dims.size(); ++t) {
        int avail = std::min(dims[t] - prev, dims[t + 1]);
        ranks[t] = avail > 0 ? static_cast<int>(rng() % (avail + 1)) : 0;
        prev = ranks[t];
    }
    std::vector<Matrix<F>> basis;
    for (int d : dims) basis.push_back(random_invertible(f, rng, d));
    CochainComplex<F> cx(f, sp);
    for (int j = lo; j < hi; ++j) {
        std::size_t t = j - lo;
        if (dims[t] == 0 || dims[t + 1] == 0) continue;
        Matrix<F> canon(f, dims[t + 1], dims[t]);
        int shift = t > 0 ? ranks[t - 1] : 0;  // kill the image of the previous step
        for (int r = 0; r < ranks[t]; ++r) canon.at(r, shift + r) = f.one();
        cx.set_d(j, basis[t + 1].mul(canon).mul(basis[t].inverse()));
    }
    cx.check_d2();
    return cx;
}

}  // namespace dga::testutil
