#include <cpf/types.hpp>

#include <cmath>

namespace cpf
{
    double wrap_angle (double angle)
    {
        constexpr double two_pi = 2.0 * kPi;
        if (angle >= -kPi && angle < kPi)
            return angle;
        double wrapped = std::fmod (angle + kPi, two_pi);
        if (wrapped < 0.0)
            wrapped += two_pi;
        wrapped -= kPi;
        // fmod rounding can land exactly on +pi
        if (wrapped >= kPi)
            wrapped -= two_pi;
        return wrapped;
    }
} // namespace cpf
