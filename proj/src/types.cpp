#include "hz/types.hpp"

namespace hz {

void Alpha::enclosure(int bits, BigRat& lo, BigRat& hi) const {
    if (p_) {
        p_->enclosure(bits, lo, hi);
        return;
    }
    BigRat v(d_);  // exact: doubles are dyadic rationals
    lo = v;
    hi = v;
}

BigRat Alpha::midpoint(int digits10) const {
    const int bits = static_cast<int>(digits10 * 3.33) + 8;
    BigRat lo, hi;
    enclosure(bits, lo, hi);
    return (lo + hi) / 2;
}

}  // namespace hz
