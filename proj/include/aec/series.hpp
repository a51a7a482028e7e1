#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "aec/rational.hpp"

namespace aec {

// Truncated ordinary generating function with exact rational coefficients.
// All arithmetic is exact; order is the truncation degree N.
class RationalSeries {
public:
    explicit RationalSeries(int order) : c_(order + 1) {
        if (order < 0) throw std::invalid_argument("order must be nonnegative");
    }

    static RationalSeries monomial(int order, int degree, const Rational& coeff) {
        RationalSeries s(order);
        if (degree <= order) s.c_[degree] = coeff;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int i) const { return c_[i]; }
    Rational& at(int i) { return c_[i]; }

    bool operator==(const RationalSeries& other) const { return c_ == other.c_; }

    RationalSeries& operator+=(const RationalSeries& other) {
        same_order(other);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
        return *this;
    }
    RationalSeries& operator-=(const RationalSeries& other) {
        same_order(other);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
        return *this;
    }
    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }

    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
        a.same_order(b);
        RationalSeries out(a.order());
        for (int i = 0; i <= a.order(); ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; i + j <= a.order(); ++j) {
                if (b.c_[j] == 0) continue;
                out.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return out;
    }

    RationalSeries& operator*=(const Rational& r) {
        for (auto& v : c_) v *= r;
        return *this;
    }
    friend RationalSeries operator*(RationalSeries a, const Rational& r) { return a *= r; }

    // z -> z^j (index dilation; exact).
    RationalSeries dilated(int j) const {
        if (j < 1) throw std::invalid_argument("dilation exponent must be positive");
        RationalSeries out(order());
        for (int i = 0; static_cast<long>(i) * j <= order(); ++i) out.c_[i * j] = c_[i];
        return out;
    }

    // Multiplicative inverse; needs a nonzero constant term.
    RationalSeries inverse() const {
        if (c_[0] == 0) throw std::invalid_argument("series with zero constant term has no inverse");
        RationalSeries out(order());
        Rational lead = Rational(1) / c_[0];
        out.c_[0] = lead;
        for (int n = 1; n <= order(); ++n) {
            Rational acc = 0;
            for (int k = 1; k <= n; ++k) acc += c_[k] * out.c_[n - k];
            out.c_[n] = -lead * acc;
        }
        return out;
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    long double eval(long double x) const {
        long double acc = 0;
        for (int i = order(); i >= 0; --i) acc = acc * x + to_long_double(c_[i]);
        return acc;
    }

    Rational eval_exact(const Rational& x) const {
        Rational acc = 0;
        for (int i = order(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

private:
    void same_order(const RationalSeries& other) const {
        if (order() != other.order())
            throw std::invalid_argument("series orders differ (" + std::to_string(order()) +
                                        " vs " + std::to_string(other.order()) + ")");
    }

    std::vector<Rational> c_;
};

// Keep powers up to new_order only.
inline RationalSeries truncate(const RationalSeries& f, int new_order) {
    if (new_order > f.order()) throw std::invalid_argument("cannot extend by truncation");
    RationalSeries out(new_order);
    for (int i = 0; i <= new_order; ++i) out.at(i) = f[i];
    return out;
}

// exp(f) for a series with zero constant term, via E' = f' E:
// n E_n = sum_{k=1..n} k f_k E_{n-k}.
inline RationalSeries series_exp(const RationalSeries& f) {
    if (f[0] != 0) throw std::invalid_argument("series_exp needs zero constant term");
    RationalSeries out(f.order());
    out.at(0) = 1;
    for (int n = 1; n <= f.order(); ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) {
            if (f[k] == 0) continue;
            acc += Rational(k) * f[k] * out[n - k];
        }
        out.at(n) = acc / n;
    }
    return out;
}

namespace detail {

// MSET / MSET_{-odd} exponent sums: sum_{j>=1} (+-1)^j f(z^j)/j.
inline RationalSeries mset_exponent(const RationalSeries& f, bool alternating) {
    RationalSeries acc(f.order());
    for (int j = 1; j <= f.order(); ++j) {
        Rational coeff = Rational(1, j);
        if (alternating && j % 2 == 1) coeff = -coeff;
        acc += f.dilated(j) * coeff;
    }
    return acc;
}

} // namespace detail

// Right-hand side of the functional equation for the unordered-tree GF:
// (z/2) exp(sum T(z^j)/j) + (z/2) exp(sum (-1)^j T(z^j)/j) - (z/2)(T^2 + T(z^2)).
inline RationalSeries tree_equation_rhs(const RationalSeries& t) {
    int n = t.order();
    RationalSeries z = RationalSeries::monomial(n, 1, Rational(1, 2)); // z/2
    RationalSeries plus = series_exp(detail::mset_exponent(t, false));
    RationalSeries minus = series_exp(detail::mset_exponent(t, true));
    return z * (plus + minus - (t * t + t.dilated(2)));
}

// Unique solution of the tree equation with T(0) = 0, computed by iterating
// the equation; the z factor on the right fixes one more coefficient per pass.
inline RationalSeries solve_T(int order) {
    if (order < 1) throw std::invalid_argument("order must be at least 1");
    RationalSeries t(1); // working order grows as the correct prefix grows
    for (int pass = 1;; ++pass) {
        int work = std::min(order, 2 * pass);
        if (work > t.order()) {
            RationalSeries grown(work);
            for (int i = 0; i <= t.order(); ++i) grown.at(i) = t[i];
            t = grown;
        }
        RationalSeries next = tree_equation_rhs(t);
        if (t.order() == order && next == t) return t;
        t = next;
        if (pass > 2 * order + 4) throw std::logic_error("tree equation iteration did not settle");
    }
}

// Ordered full binary trees: B = z(1 + B^2); odd coefficients are the Catalan
// numbers.
inline RationalSeries series_B(int order) {
    if (order < 1) throw std::invalid_argument("order must be at least 1");
    RationalSeries b(order);
    b.at(1) = 1;
    for (int n = 2; n <= order; ++n) {
        Rational acc = 0;
        for (int i = 1; i <= n - 2; ++i) acc += b[i] * b[n - 1 - i];
        b.at(n) = acc;
    }
    return b;
}

// Ordered trees whose internal outdegrees are even and >= 4:
// C = z(1 + C^4/(1 - C^2)), iterated as C = C^3 + z - z C^2 + z C^4.
inline RationalSeries series_C(int order) {
    if (order < 1) throw std::invalid_argument("order must be at least 1");
    RationalSeries c(order);
    for (int pass = 0; pass <= order + 2; ++pass) {
        RationalSeries z = RationalSeries::monomial(order, 1, 1);
        RationalSeries c2 = c * c;
        RationalSeries next = c2 * c + z - z * c2 + z * (c2 * c2);
        if (next == c) return c;
        c = next;
    }
    throw std::logic_error("ordered-tree equation iteration did not settle");
}

inline RationalSeries make_L(int order) { return truncate(solve_T(order), order); }
inline RationalSeries make_M(int order) { return truncate(series_B(order), order); }

struct DominanceReport {
    bool t_below_c = true;
    bool c_below_b = true;
    bool identity_holds = true; // B - C - C^3/(1-C^2) vanishes
    std::vector<int> failed_indices;
};

// [z^n]T <= [z^n]C <= [z^n]B for n <= N, plus the exact identity
// B - C = C^3/(1 - C^2).
inline DominanceReport dominance_suite(const RationalSeries& t, const RationalSeries& c,
                                       const RationalSeries& b) {
    if (t.order() != c.order() || c.order() != b.order())
        throw std::invalid_argument("series orders differ");
    DominanceReport rep;
    for (int n = 0; n <= t.order(); ++n) {
        if (t[n] > c[n]) {
            rep.t_below_c = false;
            rep.failed_indices.push_back(n);
        }
        if (c[n] > b[n]) {
            rep.c_below_b = false;
            rep.failed_indices.push_back(n);
        }
    }
    RationalSeries one = RationalSeries::monomial(c.order(), 0, 1);
    RationalSeries residual = b - c - (c * c * c) * (one - c * c).inverse();
    rep.identity_holds = residual.is_zero();
    if (!rep.identity_holds) rep.failed_indices.push_back(-1);
    return rep;
}

inline DominanceReport dominance_suite(int order) {
    return dominance_suite(solve_T(order), series_C(order), series_B(order));
}

// f(x^i) <= f(x^2)^(i/2) for a series with nonnegative coefficients,
// [z^0]f = 0, [z^1]f = 1, on 0 <= x < 1. Holds for truncations as well.
inline bool power_bound_check(const RationalSeries& f, long double x, int i) {
    if (f[0] != 0 || f[1] != 1) throw std::invalid_argument("need [z^0]f=0 and [z^1]f=1");
    if (x < 0 || x >= 1) throw std::invalid_argument("x must lie in [0, 1)");
    if (i < 2) throw std::invalid_argument("exponent must be at least 2");
    long double lhs = f.eval(std::pow(x, static_cast<long double>(i)));
    long double rhs = std::pow(f.eval(x * x), static_cast<long double>(i) / 2.0L);
    return lhs <= rhs;
}

// Closed form (1 - sqrt(1 - 4x^2)) / (2x); the full binary tree GF.
inline long double closed_form_B(long double x) {
    if (x == 0) return 0;
    return (1.0L - std::sqrt(1.0L - 4.0L * x * x)) / (2.0L * x);
}

} // namespace aec
