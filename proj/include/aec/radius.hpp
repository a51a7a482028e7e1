#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aec/series.hpp"

namespace aec {

inline constexpr long double kRhoHat = 0.6678L;  // paper's upper anchor
inline constexpr long double kRhoCheck = 0.6677L;

enum class SystemKind { Upper, Lower };

// One of the two certifying bivariate functions. Both have the shape
//   (z/2) exp(w + S+(z) + c+) + (z/2) exp(-w + S-(z) + c-) - (z/2)(w^2 + L(z^2) + e)
// with S+-(z) = sum_{j=2..N} (+-1)^j L(z^j)/j. The upper system has
// c+ = c- = e = 0; the lower one carries the truncation error e and the
// geometric tails in b.
class BivariateSystem {
public:
    struct Prepared {
        long double z = 0;
        long double s_plus = 0, s_minus = 0;   // exponent parts without w
        long double ds_plus = 0, ds_minus = 0; // their z-derivatives
        long double quad = 0, dquad = 0;       // L(z^2) + e and its z-derivative
    };

    BivariateSystem(SystemKind kind, int order, std::vector<long double> truncation,
                    long double e_const = 0, long double b_const = 0)
        : kind_(kind), order_(order), coeff_(std::move(truncation)), e_(e_const), b_(b_const) {
        dcoeff_.assign(coeff_.size() > 1 ? coeff_.size() - 1 : 0, 0.0L);
        for (std::size_t i = 1; i < coeff_.size(); ++i) dcoeff_[i - 1] = i * coeff_[i];
        if (kind_ == SystemKind::Lower) {
            if (b_ <= 0 || b_ >= 1) throw std::invalid_argument("b must lie in (0, 1)");
            if (e_ < 0) throw std::invalid_argument("e must be nonnegative");
            long double root_b = std::sqrt(b_);
            long double power = std::pow(root_b, static_cast<long double>(order_ + 1));
            for (int j = order_ + 1;; ++j) {
                long double term = power / j;
                if (term < 1e-20L) break;
                tail_plus_ += term;
                tail_minus_ += (j % 2 == 0) ? term : -term;
                power *= root_b;
            }
            for (int j = 2; j <= order_; ++j) {
                const_plus_ += e_ / j;
                const_minus_ += (j % 2 == 0) ? e_ / j : -e_ / j;
            }
            const_plus_ += tail_plus_;
            const_minus_ += tail_minus_;
        }
    }

    SystemKind kind() const { return kind_; }
    int order() const { return order_; }
    long double e_const() const { return e_; }
    long double b_const() const { return b_; }

    Prepared prepare(long double z) const {
        Prepared p;
        p.z = z;
        long double zj = z; // z^j
        for (int j = 2; j <= order_; ++j) {
            zj *= z;
            long double val = poly(coeff_, zj);
            long double dval = poly(dcoeff_, zj);
            p.s_plus += val / j;
            p.ds_plus += dval * std::pow(z, static_cast<long double>(j - 1));
            if (j % 2 == 0) {
                p.s_minus += val / j;
                p.ds_minus += dval * std::pow(z, static_cast<long double>(j - 1));
            } else {
                p.s_minus -= val / j;
                p.ds_minus -= dval * std::pow(z, static_cast<long double>(j - 1));
            }
        }
        p.s_plus += const_plus_;
        p.s_minus += const_minus_;
        long double z2 = z * z;
        p.quad = poly(coeff_, z2) + e_;
        p.dquad = 2 * z * poly(dcoeff_, z2);
        return p;
    }

    long double eval(const Prepared& p, long double w) const {
        long double ep = std::exp(w + p.s_plus), em = std::exp(-w + p.s_minus);
        return (p.z / 2) * (ep + em - (w * w + p.quad));
    }
    long double eval_dw(const Prepared& p, long double w) const {
        long double ep = std::exp(w + p.s_plus), em = std::exp(-w + p.s_minus);
        return (p.z / 2) * (ep - em) - p.z * w;
    }
    long double eval_dww(const Prepared& p, long double w) const {
        long double ep = std::exp(w + p.s_plus), em = std::exp(-w + p.s_minus);
        return (p.z / 2) * (ep + em) - p.z;
    }
    long double eval_dz(const Prepared& p, long double w) const {
        long double ep = std::exp(w + p.s_plus), em = std::exp(-w + p.s_minus);
        return 0.5L * (ep + em - (w * w + p.quad)) +
               (p.z / 2) * (ep * p.ds_plus + em * p.ds_minus - p.dquad);
    }
    long double eval_dzw(const Prepared& p, long double w) const {
        long double ep = std::exp(w + p.s_plus), em = std::exp(-w + p.s_minus);
        return 0.5L * (ep - em) + (p.z / 2) * (ep * p.ds_plus - em * p.ds_minus) - w;
    }

    long double eval(long double z, long double w) const { return eval(prepare(z), w); }
    long double eval_dw(long double z, long double w) const { return eval_dw(prepare(z), w); }
    long double eval_dww(long double z, long double w) const { return eval_dww(prepare(z), w); }
    long double eval_dz(long double z, long double w) const { return eval_dz(prepare(z), w); }
    long double eval_dzw(long double z, long double w) const { return eval_dzw(prepare(z), w); }

private:
    static long double poly(const std::vector<long double>& c, long double x) {
        long double acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    SystemKind kind_;
    int order_;
    std::vector<long double> coeff_, dcoeff_;
    long double e_ = 0, b_ = 0;
    long double tail_plus_ = 0, tail_minus_ = 0;
    long double const_plus_ = 0, const_minus_ = 0;
};

inline std::vector<long double> to_float_coefficients(const RationalSeries& s) {
    std::vector<long double> out(s.order() + 1);
    for (int i = 0; i <= s.order(); ++i) out[i] = to_long_double(s[i]);
    return out;
}

inline BivariateSystem build_upper(const RationalSeries& truncation, int order) {
    return BivariateSystem(SystemKind::Upper, order, to_float_coefficients(truncation));
}

inline BivariateSystem build_lower(const RationalSeries& truncation, long double e_const,
                                   long double b_const, int order) {
    return BivariateSystem(SystemKind::Lower, order, to_float_coefficients(truncation), e_const,
                           b_const);
}

// e = B(rho_hat^2) - M(rho_hat^2) and b = B(rho_hat^2), with B in closed form
// and M the truncation of B.
inline std::pair<long double, long double> error_constants(long double rho_hat,
                                                           const RationalSeries& m_truncation) {
    long double x = rho_hat * rho_hat;
    if (4 * x * x >= 1) throw std::invalid_argument("rho_hat^2 outside the disk of B");
    long double b = closed_form_B(x);
    long double e = b - m_truncation.eval(x);
    return {e, b};
}

struct CharacteristicSolution {
    long double r = 0, s = 0;
    long double residual_value = 0; // |G(r,s) - s|
    long double residual_slope = 0; // |G_w(r,s) - 1|
    int bisection_steps = 0;
    int polish_steps = 0;
};

// Solves G(r,s) = s, G_w(r,s) = 1 for a system with nonnegative expansion:
// for fixed z the least fixed point s(z) of w -> G(z,w) is found by Newton
// from 0 (the map is increasing and convex), the critical z is bracketed by
// bisection on G_w(z, s(z)) - 1 with inner divergence read as "past the
// singularity", and the root is polished by a damped two-dimensional Newton.
template <typename System>
CharacteristicSolution solve_characteristic(const System& sys, long double lo = 0.5L,
                                            long double hi = 0.9L) {
    struct Inner {
        bool converged = false;
        long double s = std::numeric_limits<long double>::quiet_NaN();
    };
    auto inner = [&](long double z) -> Inner {
        auto p = sys.prepare(z);
        long double s = 0, f = 0;
        for (int it = 0; it < 400; ++it) {
            f = sys.eval(p, s) - s;
            if (!std::isfinite(f) || s > 60.0L) return {};
            long double scale = std::max(1.0L, std::fabs(s));
            if (std::fabs(f) <= 1e-18L * scale) return {true, s};
            long double fp = sys.eval_dw(p, s) - 1.0L;
            // f still sizable with the slope already nonnegative: past the
            // least root, no fixed point here
            if (!std::isfinite(fp) || fp >= 0.0L)
                return std::fabs(f) <= 1e-12L * scale ? Inner{true, s} : Inner{};
            long double next = s - f / fp;
            if (next == s) return {true, s}; // no representable progress left
            s = next;
        }
        return std::fabs(f) <= 1e-12L * std::max(1.0L, std::fabs(s)) ? Inner{true, s} : Inner{};
    };
    auto slope_gap = [&](long double z, long double s) {
        return sys.eval_dw(z, s) - 1.0L;
    };

    Inner left = inner(lo);
    if (!left.converged) throw std::runtime_error("no fixed point at left endpoint of bracket");
    if (slope_gap(lo, left.s) >= 0)
        throw std::runtime_error("left endpoint already past the characteristic point");
    Inner right = inner(hi);
    if (right.converged && slope_gap(hi, right.s) < 0)
        throw std::runtime_error("no sign change inside bracket");

    CharacteristicSolution sol;
    long double best_s = left.s;
    while (hi - lo > 1e-13L) {
        ++sol.bisection_steps;
        long double mid = 0.5L * (lo + hi);
        Inner m = inner(mid);
        if (m.converged && slope_gap(mid, m.s) < 0) {
            lo = mid;
            best_s = m.s;
        } else {
            hi = mid;
        }
        if (sol.bisection_steps > 200) break;
    }

    long double r = lo, s = best_s;
    auto residuals = [&](long double rr, long double ss) {
        auto p = sys.prepare(rr);
        long double fv = sys.eval(p, ss) - ss;
        long double fw = sys.eval_dw(p, ss) - 1.0L;
        return std::pair{fv, fw};
    };
    auto norm = [](std::pair<long double, long double> f) {
        return std::fabs(f.first) + std::fabs(f.second);
    };
    auto f = residuals(r, s);
    for (int it = 0; it < 60 && norm(f) > 1e-17L; ++it) {
        ++sol.polish_steps;
        auto p = sys.prepare(r);
        long double a11 = sys.eval_dz(p, s), a12 = sys.eval_dw(p, s) - 1.0L;
        long double a21 = sys.eval_dzw(p, s), a22 = sys.eval_dww(p, s);
        long double det = a11 * a22 - a12 * a21;
        if (det == 0 || !std::isfinite(det)) break;
        long double dr = (f.first * a22 - f.second * a12) / det;
        long double ds = (a11 * f.second - a21 * f.first) / det;
        long double step = 1.0L;
        bool moved = false;
        for (int cut = 0; cut < 30; ++cut, step *= 0.5L) {
            auto trial = residuals(r - step * dr, s - step * ds);
            if (std::isfinite(trial.first) && std::isfinite(trial.second) &&
                norm(trial) < norm(f)) {
                r -= step * dr;
                s -= step * ds;
                f = trial;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }

    sol.r = r;
    sol.s = s;
    sol.residual_value = std::fabs(f.first);
    sol.residual_slope = std::fabs(f.second);
    return sol;
}

struct RadiusCertificate {
    int order = 0;
    long double rho_lo = 0, rho_hi = 0;
    long double s_lower = 0, s_upper = 0;
    long double e_const = 0, b_const = 0;
    long double resid_lower_value = 0, resid_lower_slope = 0;
    long double resid_upper_value = 0, resid_upper_slope = 0;

    bool residuals_ok(long double tol = 1e-10L) const {
        return resid_lower_value <= tol && resid_lower_slope <= tol &&
               resid_upper_value <= tol && resid_upper_slope <= tol;
    }
    // rho_lo rounded down and rho_hi rounded up to 4 decimals stay inside
    // [0.6677, 0.6678]
    bool interval_in_paper_bounds() const {
        return std::floor(rho_lo * 10000.0L) >= 6677.0L &&
               std::ceil(rho_hi * 10000.0L) <= 6678.0L;
    }
    bool ok() const { return rho_lo <= rho_hi && residuals_ok() && interval_in_paper_bounds(); }
};

// Solves both characteristic systems at truncation `order`. The lower root
// bounds the tree growth radius from below, the upper one from above.
inline RadiusCertificate certify(int order) {
    if (order < 20 || order % 2 != 0) throw std::invalid_argument("order must be even, >= 20");
    RationalSeries t = solve_T(order);
    RationalSeries l = truncate(t, order);
    RationalSeries m = make_M(order);
    auto [e_const, b_const] = error_constants(kRhoHat, m);

    BivariateSystem upper = build_upper(l, order);
    BivariateSystem lower = build_lower(l, e_const, b_const, order);
    CharacteristicSolution up = solve_characteristic(upper);
    CharacteristicSolution low = solve_characteristic(lower);

    RadiusCertificate cert;
    cert.order = order;
    cert.rho_hi = up.r;
    cert.s_upper = up.s;
    cert.rho_lo = low.r;
    cert.s_lower = low.s;
    cert.e_const = e_const;
    cert.b_const = b_const;
    cert.resid_upper_value = up.residual_value;
    cert.resid_upper_slope = up.residual_slope;
    cert.resid_lower_value = low.residual_value;
    cert.resid_lower_slope = low.residual_slope;
    return cert;
}

} // namespace aec
