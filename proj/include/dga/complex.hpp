#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dga/graded.hpp"

namespace dga {

struct InvalidComplexError : Error {
    int degree;
    InvalidComplexError(int j, const std::string& what) : Error(what), degree(j) {}
};

/* Cochain complex: graded space with a degree +1 differential, d∘d = 0 on
 * every composable pair of known degrees. */
template <FieldType F>
class CochainComplex {
public:
    CochainComplex(const F& f, GradedSpace sp) : fld_(f), sp_(std::move(sp)) {}

    const F& field() const { return fld_; }
    const GradedSpace& space() const { return sp_; }
    const Window& window() const { return sp_.window(); }
    std::optional<int> dim(int j) const { return sp_.dim(j); }

    void set_d(int j, Matrix<F> m) {
        if (static_cast<int>(m.rows()) != sp_.known_dim(j + 1) ||
            static_cast<int>(m.cols()) != sp_.known_dim(j))
            throw DimensionError("differential block shape mismatch at degree " + std::to_string(j));
        if (!m.is_zero()) d_.insert_or_assign(j, std::move(m));
    }

    bool d_known(int j) const { return sp_.known(j) && sp_.known(j + 1); }

    /* Materialized block (zero matrix when absent); degrees must be known. */
    Matrix<F> d_block(int j) const {
        int r = sp_.known_dim(j + 1), c = sp_.known_dim(j);
        auto it = d_.find(j);
        if (it != d_.end()) return it->second;
        return Matrix<F>(fld_, r, c);
    }

    const std::map<int, Matrix<F>>& d_entries() const { return d_; }

    /* Throws InvalidComplexError naming the offending degree. */
    void check_d2() const {
        for (const auto& [j, m] : d_) {
            if (!d_known(j + 1)) continue;
            auto next = d_.find(j + 1);
            if (next == d_.end()) continue;
            if (!next->second.mul(m).is_zero())
                throw InvalidComplexError(j, "d∘d != 0 at degree " + std::to_string(j));
        }
    }

    /* Σ^s: (Σ^s C)^j = C^{j+s}, differential scaled by (-1)^s. */
    CochainComplex shifted(int s) const {
        CochainComplex r(fld_, sp_.shifted(s));
        for (const auto& [j, m] : d_) r.d_.insert_or_assign(j - s, (s % 2 == 0) ? m : m.negated());
        return r;
    }

    struct CohomologyData {
        GradedSpace h;
        /* columns of reps[j] are cycles in C^j whose classes form a basis of H^j */
        std::map<int, Matrix<F>> reps;
        /* columns of bnd[j] are a basis of im d^{j-1} */
        std::map<int, Matrix<F>> bnd;

        /* Exact coordinates of a cycle's class in the chosen basis of H^j. */
        Vec<F> classify(const F& f, int j, const Vec<F>& cycle) const {
            auto itr = reps.find(j);
            auto itb = bnd.find(j);
            std::size_t hn = itr == reps.end() ? 0 : itr->second.cols();
            std::size_t bn = itb == bnd.end() ? 0 : itb->second.cols();
            if (hn == 0) {
                return {};
            }
            const Matrix<F>& r = itr->second;
            Matrix<F> basis(f, r.rows(), bn + hn);
            for (std::size_t c = 0; c < bn; ++c) basis.set_col(c, itb->second.col(c));
            for (std::size_t c = 0; c < hn; ++c) basis.set_col(bn + c, r.col(c));
            auto x = basis.solve(cycle);
            if (!x) throw Error("classify: vector is not a cycle of the complex");
            return Vec<F>(x->begin() + bn, x->end());
        }
    };

    /* Cohomology on every degree where both adjacent differentials are known.
     * H^j = ker d^j / im d^{j-1}; representatives are chosen deterministically
     * (kernel vectors completing the boundary basis, earliest-pivot order). */
    CohomologyData cohomology() const {
        check_d2();
        const Window& w = sp_.window();
        // known degrees of H form the interval [klo+1, khi-1] of the space's known set
        ExtInt klo = w.known_lo(), khi = w.known_hi();
        ExtInt hlo = klo.is_neg_inf() ? klo : klo + 1;
        ExtInt hhi = khi.is_pos_inf() ? khi : khi - 1;
        int dlo = w.lo, dhi = w.hi;
        CohomologyData out;
        out.h = GradedSpace(Window::from_known(hlo, hhi, dlo, dhi));
        const Window& hw = out.h.window();
        for (int j = hw.lo; j <= hw.hi; ++j) {
            int n = sp_.known_dim(j);
            if (n == 0) continue;
            auto z = d_block(j).kernel_basis();
            if (z.empty()) continue;
            Matrix<F> zm = Matrix<F>::from_columns(fld_, n, z);
            auto b = d_block(j - 1).image_basis();
            Matrix<F> bm = Matrix<F>::from_columns(fld_, n, b);
            // extend the boundary basis by kernel vectors: pivots of [B | Z]
            Matrix<F> bz = bm.hstack(zm);
            auto piv = bz.rref().pivots;
            std::vector<Vec<F>> reps;
            for (std::size_t c : piv)
                if (c >= b.size()) reps.push_back(z[c - b.size()]);
            if (!b.empty()) out.bnd.emplace(j, bm);
            if (!reps.empty()) {
                out.h.set_dim(j, static_cast<int>(reps.size()));
                out.reps.emplace(j, Matrix<F>::from_columns(fld_, n, reps));
            }
        }
        return out;
    }

private:
    F fld_;
    GradedSpace sp_;
    std::map<int, Matrix<F>> d_;  // zero blocks omitted
};

}  // namespace dga
