// SPDX-License-Identifier: Apache-2.0
// Globally adaptive Gauss-Kronrod (7, 15) quadrature.
#pragma once

#include "graviphoton/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace graviphoton::quad {

namespace detail {

// Non-negative Kronrod abscissae on [-1, 1]; odd indices are the Gauss nodes.
inline constexpr std::array<long double, 8> xgk = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};

inline constexpr std::array<long double, 8> wgk = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};

inline constexpr std::array<long double, 4> wg = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class V>
struct Panel {
    long double a;
    long double b;
    V value;
    long double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class V>
auto magnitude(const V& v) {
    using std::abs;
    return static_cast<long double>(abs(v));
}

template <class V, class F>
Panel<V> gk15(F& f, long double a, long double b) {
    const long double c = 0.5L * (a + b);
    const long double h = 0.5L * (b - a);
    const V fc = f(c);
    V kron = fc * wgk[7];
    V gauss = fc * wg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const long double dx = h * xgk[j];
        const V f1 = f(c - dx);
        const V f2 = f(c + dx);
        kron += (f1 + f2) * wgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * wg[j / 2];
    }
    return {a, b, kron * h, magnitude<V>((kron - gauss) * h)};
}

}  // namespace detail

template <class V>
struct Result {
    V value{};
    long double abs_error = 0.0L;
    std::size_t evaluations = 0;
};

struct Options {
    long double abs_tol = 1e-10L;
    std::size_t max_evaluations = std::size_t{1} << 20;
};

// Integrates f over [a, b] split at the given breakpoints (those outside
// (a, b) are ignored). Panels with the largest error estimate are bisected
// until the summed estimate drops below abs_tol.
template <class V, class F>
Result<V> integrate(F&& f, long double a, long double b, std::vector<long double> breakpoints = {},
                    const Options& opt = {}) {
    Result<V> out;
    if (!(b > a)) return out;

    breakpoints.erase(std::remove_if(breakpoints.begin(), breakpoints.end(),
                                     [&](long double x) { return !(x > a && x < b); }),
                      breakpoints.end());
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    breakpoints.insert(breakpoints.begin(), a);
    breakpoints.push_back(b);

    std::priority_queue<detail::Panel<V>> heap;
    long double total_err = 0.0L;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        auto p = detail::gk15<V>(f, breakpoints[i], breakpoints[i + 1]);
        out.evaluations += 15;
        total_err += p.error;
        heap.push(std::move(p));
    }

    while (total_err > opt.abs_tol) {
        if (out.evaluations + 30 > opt.max_evaluations) {
            throw QuadratureError("adaptive quadrature did not reach tolerance within evaluation budget");
        }
        auto worst = heap.top();
        const long double mid = 0.5L * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("adaptive quadrature exhausted interval resolution");
        }
        heap.pop();
        auto left = detail::gk15<V>(f, worst.a, mid);
        auto right = detail::gk15<V>(f, mid, worst.b);
        out.evaluations += 30;
        total_err += left.error + right.error - worst.error;
        heap.push(std::move(left));
        heap.push(std::move(right));
    }

    // Re-sum from scratch so the result does not depend on the order of refinement.
    std::vector<detail::Panel<V>> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    total_err = 0.0L;
    for (const auto& p : panels) {
        out.value += p.value;
        total_err += p.error;
    }
    out.abs_error = total_err;
    return out;
}

}  // namespace graviphoton::quad
