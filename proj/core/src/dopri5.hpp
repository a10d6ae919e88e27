#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace flagflow::detail {

using State = std::array<double, 2>;

/// One Dormand-Prince 5(4) step with Hairer's continuous extension.
struct Dopri5Step {
    State y1{};
    State k7{};
    double error = 0.0; ///< scaled RMS error estimate; accept when <= 1
    std::array<State, 5> rcont{};
};

/// 4th-order dense output over [t0, t0 + h] at theta in [0, 1].
inline State dense_eval(const std::array<State, 5>& rc, double theta)
{
    const double t1 = 1.0 - theta;
    State out{};
    for (std::size_t i = 0; i < 2; ++i) {
        out[i] = rc[0][i] + theta * (rc[1][i] + t1 * (rc[2][i] + theta * (rc[3][i] + t1 * rc[4][i])));
    }
    return out;
}

template <class Rhs>
Dopri5Step dopri5_step(Rhs&& f, const State& y, const State& k1, double h, double rtol, double atol)
{
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                     a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                     a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                     e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    const auto comb = [&](auto... terms) {
        State out = y;
        ((out[0] += h * terms.first * terms.second[0], out[1] += h * terms.first * terms.second[1]), ...);
        return out;
    };
    using P = std::pair<double, State>;

    const State k2 = f(comb(P{a21, k1}));
    const State k3 = f(comb(P{a31, k1}, P{a32, k2}));
    const State k4 = f(comb(P{a41, k1}, P{a42, k2}, P{a43, k3}));
    const State k5 = f(comb(P{a51, k1}, P{a52, k2}, P{a53, k3}, P{a54, k4}));
    const State k6 = f(comb(P{a61, k1}, P{a62, k2}, P{a63, k3}, P{a64, k4}, P{a65, k5}));

    Dopri5Step s;
    s.y1 = comb(P{a71, k1}, P{a73, k3}, P{a74, k4}, P{a75, k5}, P{a76, k6});
    s.k7 = f(s.y1);

    double sum = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * s.k7[i]);
        const double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(s.y1[i]));
        sum += (err / sk) * (err / sk);
    }
    s.error = std::sqrt(sum / 2.0);

    for (std::size_t i = 0; i < 2; ++i) {
        const double ydiff = s.y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        s.rcont[0][i] = y[i];
        s.rcont[1][i] = ydiff;
        s.rcont[2][i] = bspl;
        s.rcont[3][i] = ydiff - h * s.k7[i] - bspl;
        s.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * s.k7[i]);
    }
    return s;
}

} // namespace flagflow::detail
