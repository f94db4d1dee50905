#pragma once

#include <cmath>
#include <stdexcept>

namespace ptqfi {

template <typename T>
struct Maximum {
    T x;
    T value;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Stops once the bracket is narrower than tol. T may be long double
/// when the peak is flat enough that double cannot resolve the argmax.
template <typename T, typename F>
Maximum<T> golden_section_maximize(F&& f, T lo, T hi, T tol, int max_iter = 1000) {
    if (!(hi > lo)) {
        throw std::invalid_argument("golden_section_maximize: empty bracket");
    }
    const T inv_phi = (std::sqrt(T(5)) - T(1)) / T(2);
    T x1 = hi - inv_phi * (hi - lo);
    T x2 = lo + inv_phi * (hi - lo);
    T f1 = f(x1);
    T f2 = f(x2);
    for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    const T x = (lo + hi) / T(2);
    return {x, f(x)};
}

}  // namespace ptqfi
