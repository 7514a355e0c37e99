#pragma once

#include <compare>
#include <limits>
#include <stdexcept>
#include <string>

namespace dga {

/* Integer extended by -inf and +inf, used for inf/sup/amp/pcd with the
 * conventions inf(0) = +inf, sup(0) = -inf, amp(0) = -inf. */
class ExtInt {
public:
    static ExtInt neg_inf() { return ExtInt(Kind::NegInf, 0); }
    static ExtInt pos_inf() { return ExtInt(Kind::PosInf, 0); }
    ExtInt() : ExtInt(Kind::Finite, 0) {}
    ExtInt(int v) : ExtInt(Kind::Finite, v) {}

    bool finite() const { return kind_ == Kind::Finite; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }

    int value() const {
        if (!finite()) throw std::logic_error("ExtInt: value() on infinite");
        return v_;
    }

    ExtInt operator+(int s) const {
        return finite() ? ExtInt(v_ + s) : *this;
    }
    ExtInt operator-(int s) const { return *this + (-s); }

    /* a - b where the result is meaningful for amp-style differences:
     * (-inf) - anything = -inf; (+inf) - finite = +inf. */
    ExtInt minus(const ExtInt& b) const {
        if (is_neg_inf() || b.is_pos_inf()) return neg_inf();
        if (is_pos_inf() || b.is_neg_inf()) return pos_inf();
        return ExtInt(v_ - b.v_);
    }
    ExtInt plus(const ExtInt& b) const {
        if (is_pos_inf() || b.is_pos_inf()) return pos_inf();
        if (is_neg_inf() || b.is_neg_inf()) return neg_inf();
        return ExtInt(v_ + b.v_);
    }

    friend bool operator==(const ExtInt& a, const ExtInt& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.v_ == b.v_);
    }
    friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
        auto rank = [](const ExtInt& e) { return e.kind_ == Kind::NegInf ? -1 : e.kind_ == Kind::PosInf ? 1 : 0; };
        if (rank(a) != rank(b)) return rank(a) <=> rank(b);
        if (a.kind_ == Kind::Finite) return a.v_ <=> b.v_;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        if (is_neg_inf()) return "-inf";
        if (is_pos_inf()) return "inf";
        return std::to_string(v_);
    }

private:
    enum class Kind { NegInf, Finite, PosInf };
    ExtInt(Kind k, int v) : kind_(k), v_(v) {}
    Kind kind_;
    int v_;
};

inline ExtInt ext_min(const ExtInt& a, const ExtInt& b) { return a < b ? a : b; }
inline ExtInt ext_max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }

}  // namespace dga
