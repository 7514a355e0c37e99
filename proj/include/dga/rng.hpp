#pragma once

#include <cstdint>
#include <random>

namespace dga {

/* Seeded deterministic RNG.  Only raw mt19937_64 draws are used (std
 * distributions are not portable across standard libraries). */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /* uniform in [0, n) */
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }

    /* uniform in [lo, hi] */
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(unsigned num, unsigned den) { return below(den) < num; }

    template <class F>
    typename F::Elt scalar(const F& f, long lo = -2, long hi = 2) {
        return f.from_int(range(lo, hi));
    }

    template <class F>
    typename F::Elt nonzero_scalar(const F& f, long lo = -2, long hi = 2) {
        for (;;) {
            auto e = scalar(f, lo, hi);
            if (!f.is_zero(e)) return e;
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace dga
