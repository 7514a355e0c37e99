#pragma once

#include <algorithm>
#include <string>

#include "dga/extint.hpp"

namespace dga {

/* Degree window of a graded object.  Data is complete and trusted exactly on
 * [lo, hi]; degrees outside are unknown, not zero, unless one of the
 * certificates below upgrades them to known-zero.
 *
 * zero_below: the object is certified zero in all degrees < lo.
 * zero_above: likewise in all degrees > hi.
 * A window with both certificates describes a completely known object. */
struct Window {
    int lo = 0;
    int hi = -1;  // lo > hi encodes an empty trusted range
    bool zero_below = false;
    bool zero_above = false;

    Window() = default;
    Window(int l, int h, bool zb = false, bool za = false)
        : lo(l), hi(h), zero_below(zb), zero_above(za) {}

    static Window complete(int l, int h) { return Window(l, h, true, true); }

    bool empty_range() const { return lo > hi; }
    bool contains(int j) const { return lo <= j && j <= hi; }
    bool known(int j) const {
        return contains(j) || (j < lo && zero_below) || (j > hi && zero_above);
    }
    bool is_complete() const { return zero_below && zero_above; }

    /* Known degrees form a contiguous ExtInt interval. */
    ExtInt known_lo() const { return zero_below ? ExtInt::neg_inf() : ExtInt(lo); }
    ExtInt known_hi() const { return zero_above ? ExtInt::pos_inf() : ExtInt(hi); }

    /* Window whose known set is [klo, khi]; [dlo, dhi] bounds the finite data
     * range used for the certified sides. */
    static Window from_known(ExtInt klo, ExtInt khi, int dlo, int dhi) {
        Window w;
        w.zero_below = klo.is_neg_inf();
        w.zero_above = khi.is_pos_inf();
        w.lo = w.zero_below ? dlo : klo.value();
        w.hi = w.zero_above ? dhi : khi.value();
        // keep the known set contiguous when a certified tail meets an empty range
        if (w.lo > w.hi + 1) {
            if (w.zero_below && !w.zero_above) w.lo = w.hi + 1;
            else if (w.zero_above && !w.zero_below) w.hi = w.lo - 1;
        }
        return w;
    }

    /* Degrees known in both windows; data range defaults to the overlap of
     * the two finite ranges. */
    static Window intersect(const Window& a, const Window& b) {
        ExtInt klo = ext_max(a.known_lo(), b.known_lo());
        ExtInt khi = ext_min(a.known_hi(), b.known_hi());
        int dlo = std::max(a.lo, b.lo);
        int dhi = std::min(a.hi, b.hi);
        if (dlo > dhi) dhi = dlo - 1;
        return from_known(klo, khi, dlo, dhi);
    }

    Window shifted(int s) const { return Window(lo - s, hi - s, zero_below, zero_above); }
    Window negated() const { return Window(-hi, -lo, zero_above, zero_below); }

    std::string str() const {
        std::string s = "[" + (zero_below ? std::string("..") : std::string("")) + std::to_string(lo) +
                        ", " + std::to_string(hi) + (zero_above ? ".." : "") + "]";
        return s;
    }
};

}  // namespace dga
