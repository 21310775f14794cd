#include "parclust/common.hpp"

#include <cmath>

namespace parclust {

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, 0.5 <= |m| < 1
    // 53 doublings make the mantissa integral.
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(mant);
    boost::multiprecision::cpp_int pow2 = boost::multiprecision::cpp_int(1) << std::abs(exp);
    if (exp >= 0)
        r *= Rat(pow2);
    else
        r /= Rat(pow2);
    return r;
}

}  // namespace parclust
