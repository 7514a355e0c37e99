#pragma once

#include <map>
#include <optional>

#include "dga/matrix.hpp"
#include "dga/window.hpp"

namespace dga {

/* Degreewise finite-dimensional graded vector space on a window.  Querying a
 * degree outside the known set is a distinct "unknown" outcome, never a
 * silent zero. */
class GradedSpace {
public:
    GradedSpace() = default;
    explicit GradedSpace(Window w) : win_(w) {}

    const Window& window() const { return win_; }
    Window& window() { return win_; }

    void set_dim(int j, int d) {
        if (d < 0) throw InputError("negative dimension");
        if (!win_.contains(j) && d != 0)
            throw InputError("dimension set outside window at degree " + std::to_string(j));
        if (d == 0)
            dims_.erase(j);
        else
            dims_[j] = d;
    }

    std::optional<int> dim(int j) const {
        if (!win_.known(j)) return std::nullopt;
        auto it = dims_.find(j);
        return it == dims_.end() ? 0 : it->second;
    }

    int known_dim(int j) const {
        auto d = dim(j);
        if (!d) throw Error("degree " + std::to_string(j) + " outside known window " + win_.str());
        return *d;
    }

    bool known(int j) const { return win_.known(j); }

    /* Support inside the known set (all entries stored are nonzero). */
    const std::map<int, int>& support() const { return dims_; }

    bool support_empty() const { return dims_.empty(); }

    GradedSpace shifted(int s) const {  // (Σ^s V)^j = V^{j+s}
        GradedSpace r(win_.shifted(s));
        for (auto [j, d] : dims_) r.dims_[j - s] = d;
        return r;
    }

    struct InfSupAmp {
        ExtInt inf, sup, amp;
        bool inf_exact = false, sup_exact = false;
        bool amp_exact() const { return inf_exact && sup_exact; }
    };

    /* inf/sup/amp of the support with the conventions inf(0) = +inf,
     * sup(0) = -inf, amp(0) = -inf.  A side is exact only when the window
     * certifies zeroes beyond it. */
    InfSupAmp inf_sup_amp() const {
        InfSupAmp r;
        if (dims_.empty()) {
            r.inf = ExtInt::pos_inf();
            r.sup = ExtInt::neg_inf();
            r.amp = ExtInt::neg_inf();
            r.inf_exact = r.sup_exact = win_.is_complete();
        } else {
            r.inf = ExtInt(dims_.begin()->first);
            r.sup = ExtInt(dims_.rbegin()->first);
            r.amp = r.sup.minus(r.inf);
            r.inf_exact = win_.zero_below;
            r.sup_exact = win_.zero_above;
        }
        return r;
    }

    friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
        return a.dims_ == b.dims_ && a.win_.lo == b.win_.lo && a.win_.hi == b.win_.hi &&
               a.win_.zero_below == b.win_.zero_below && a.win_.zero_above == b.win_.zero_above;
    }

private:
    std::map<int, int> dims_;
    Window win_;
};

/* Graded map of fixed degree shift: blocks[j] : V^j -> W^{j+shift}. */
template <FieldType F>
struct GradedMap {
    int shift = 0;
    std::map<int, Matrix<F>> blocks;

    const Matrix<F>* block(int j) const {
        auto it = blocks.find(j);
        return it == blocks.end() ? nullptr : &it->second;
    }
};

}  // namespace dga
