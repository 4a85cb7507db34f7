#include "bsing/piecewise.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bsing/parallel.hpp"

namespace bsing {

namespace {

double ipow(double x, int p) {
    double r = 1.0;
    bool inv = p < 0;
    for (int i = 0; i < std::abs(p); ++i) r *= x;
    return inv ? 1.0 / r : r;
}

}  // namespace

double PiecewiseSmoothFn::Piece::eval(double x) const {
    switch (kind) {
        case Kind::log_abs:
            return c * std::log(std::abs(x)) + d;
        case Kind::power: {
            double base = use_abs ? std::abs(x) : x;
            return c * ipow(base, -p) + d;
        }
        case Kind::poly: {
            double acc = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
        }
    }
    return 0.0;
}

double PiecewiseSmoothFn::Piece::deriv(double x) const {
    switch (kind) {
        case Kind::log_abs:
            return c / x;
        case Kind::power: {
            if (use_abs) {
                // d/dx c*|x|^{-p} = -c p |x|^{-p-1} sign(x)
                double s = x < 0.0 ? -1.0 : 1.0;
                return -c * p * ipow(std::abs(x), -(p + 1)) * s;
            }
            return -c * p * ipow(x, -(p + 1));
        }
        case Kind::poly: {
            double acc = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * x + coeffs[i] * double(i);
            return acc;
        }
    }
    return 0.0;
}

std::string PiecewiseSmoothFn::Piece::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::log_abs:
            os << c << "*log|x| + " << d;
            break;
        case Kind::power:
            os << c << "*" << (use_abs ? "|x|" : "x") << "^-" << p << " + " << d;
            break;
        case Kind::poly:
            os << "poly[";
            for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
            os << "]";
            break;
    }
    return os.str();
}

const PiecewiseSmoothFn::Piece& PiecewiseSmoothFn::piece_at(double x) const {
    if (singular_at_zero && x == 0.0)
        throw std::domain_error("PiecewiseSmoothFn: evaluation on critical set");
    for (const auto& piece : pieces)
        if (x >= piece.lo && x <= piece.hi) return piece;
    throw std::domain_error("PiecewiseSmoothFn: x outside domain");
}

double PiecewiseSmoothFn::eval(double x) const { return piece_at(x).eval(x); }
double PiecewiseSmoothFn::deriv(double x) const { return piece_at(x).deriv(x); }

double PiecewiseSmoothFn::c1_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        double x = pieces[i].hi;
        if (!std::isfinite(x)) continue;
        if (singular_at_zero && x == 0.0) continue;
        double dv = std::abs(pieces[i].eval(x) - pieces[i + 1].eval(x));
        double dd = std::abs(pieces[i].deriv(x) - pieces[i + 1].deriv(x));
        worst = std::max(worst, dv + dd);
    }
    return worst;
}

double PiecewiseSmoothFn::min_abs_derivative(double lo, double hi, std::size_t grid) const {
    return par::min_over_grid(grid, [&](std::size_t i) {
        double x = lo + (hi - lo) * (double(i) + 0.5) / double(grid);
        if (singular_at_zero && std::abs(x) < 1e-300) return 1e300;
        return std::abs(deriv(x));
    });
}

namespace {

// Odd polynomial a1*x + a3*x^3 (+ a5*x^5 on escalation) matching value v and
// derivative dv at x = eps, with positive derivative on [-eps, eps].
PiecewiseSmoothFn::Piece odd_hermite_interior(double eps, double v, double dv) {
    auto check_positive = [&](const PiecewiseSmoothFn::Piece& piece) {
        for (int i = 0; i <= 2000; ++i) {
            double x = -eps + 2.0 * eps * double(i) / 2000.0;
            if (piece.deriv(x) <= 0.0) return false;
        }
        return true;
    };
    {
        // a1*eps + a3*eps^3 = v;  a1 + 3 a3 eps^2 = dv
        double a3 = (dv * eps - v) / (2.0 * eps * eps * eps);
        double a1 = dv - 3.0 * a3 * eps * eps;
        PiecewiseSmoothFn::Piece piece;
        piece.kind = PiecewiseSmoothFn::Piece::Kind::poly;
        piece.lo = -eps;
        piece.hi = eps;
        piece.coeffs = {0.0, a1, 0.0, a3};
        if (check_positive(piece)) return piece;
    }
    // Degree-5 escalation: scan the free quintic coefficient.
    for (int step = -40; step <= 40; ++step) {
        double a5 = double(step) * 0.05 * dv / ipow(eps, 4);
        // a1 e + a3 e^3 = v - a5 e^5 ; a1 + 3 a3 e^2 = dv - 5 a5 e^4
        double vv = v - a5 * ipow(eps, 5);
        double dd = dv - 5.0 * a5 * ipow(eps, 4);
        double a3 = (dd * eps - vv) / (2.0 * eps * eps * eps);
        double a1 = dd - 3.0 * a3 * eps * eps;
        PiecewiseSmoothFn::Piece piece;
        piece.kind = PiecewiseSmoothFn::Piece::Kind::poly;
        piece.lo = -eps;
        piece.hi = eps;
        piece.coeffs = {0.0, a1, 0.0, a3, 0.0, a5};
        if (check_positive(piece)) return piece;
    }
    throw std::runtime_error("odd Hermite interpolant: no positive-derivative candidate");
}

// Monotone connector on [x0, x1] with equal endpoint slopes s and prescribed
// rise: derivative profile s*((1-delta)*(u)^{2q} + delta), u the affine map to
// [-1,1]. Used when the rise is much smaller than the slope suggests.
PiecewiseSmoothFn::Piece flat_connector(double x0, double x1, double v0, double v1, double s) {
    double a = 0.5 * (x1 - x0);
    double mid = 0.5 * (x0 + x1);
    double rise = v1 - v0;
    double ratio = rise / (2.0 * a * s);  // in (0, 1]
    if (ratio <= 0.0 || ratio > 1.0 + 1e-12)
        throw std::runtime_error("flat_connector: incompatible rise/slope data");
    int q = 1;
    while (1.0 / double(2 * q + 1) >= ratio) ++q;
    double delta = (ratio - 1.0 / double(2 * q + 1)) / (1.0 - 1.0 / double(2 * q + 1));
    // phi(x) = Cmid + s*delta*(x-mid) + s*(1-delta)/((2q+1) a^{2q}) (x-mid)^{2q+1}
    double cmid = 0.5 * (v0 + v1);
    double lin = s * delta;
    double top = s * (1.0 - delta) / (double(2 * q + 1) * ipow(a, 2 * q));
    // Expand in powers of x via binomial shift of (x - mid)^j.
    std::vector<double> coeffs(2 * q + 2, 0.0);
    auto add_shifted_power = [&](double coeff, int power) {
        // coeff * (x - mid)^power
        std::vector<double> binom(power + 1, 0.0);
        binom[0] = 1.0;
        for (int row = 1; row <= power; ++row)
            for (int col = row; col >= 1; --col) binom[col] += binom[col - 1];
        for (int j = 0; j <= power; ++j)
            coeffs[j] += coeff * binom[j] * ipow(-mid, power - j);
    };
    coeffs[0] += cmid;
    add_shifted_power(lin, 1);
    add_shifted_power(top, 2 * q + 1);
    PiecewiseSmoothFn::Piece piece;
    piece.kind = PiecewiseSmoothFn::Piece::Kind::poly;
    piece.lo = x0;
    piece.hi = x1;
    piece.coeffs = std::move(coeffs);
    return piece;
}

// Cubic Hermite on [x0, x1]; caller must verify monotonicity separately.
PiecewiseSmoothFn::Piece cubic_hermite(double x0, double x1, double v0, double v1,
                                       double s0, double s1) {
    double h = x1 - x0;
    // Hermite basis in the local variable u = (x - x0)/h, then expand.
    // p(u) = v0 (2u^3-3u^2+1) + v1 (-2u^3+3u^2) + s0 h (u^3-2u^2+u) + s1 h (u^3-u^2)
    double c3u = 2.0 * v0 - 2.0 * v1 + s0 * h + s1 * h;
    double c2u = -3.0 * v0 + 3.0 * v1 - 2.0 * s0 * h - s1 * h;
    double c1u = s0 * h;
    double c0u = v0;
    // substitute u = (x - x0)/h
    double inv = 1.0 / h;
    double A = c3u * inv * inv * inv;
    double B = c2u * inv * inv;
    double C = c1u * inv;
    // expand around x0: p(x) = A (x-x0)^3 + B (x-x0)^2 + C (x-x0) + c0u
    double t = -x0;
    std::vector<double> coeffs(4, 0.0);
    coeffs[3] = A;
    coeffs[2] = B + 3.0 * A * t;
    coeffs[1] = C + 2.0 * B * t + 3.0 * A * t * t;
    coeffs[0] = c0u + C * t + B * t * t + A * t * t * t;
    PiecewiseSmoothFn::Piece piece;
    piece.kind = PiecewiseSmoothFn::Piece::Kind::poly;
    piece.lo = x0;
    piece.hi = x1;
    piece.coeffs = std::move(coeffs);
    return piece;
}

}  // namespace

PiecewiseSmoothFn f_eps(int order, double eps) {
    if (order < 2 || order % 2 != 0)
        throw std::invalid_argument("f_eps: order must be a positive even integer");
    if (eps <= 0.0) throw std::invalid_argument("f_eps: eps must be positive");
    const int p = order - 1;  // 2m-1
    const double tail = 2.0 / ipow(eps, p);
    PiecewiseSmoothFn fn;

    PiecewiseSmoothFn::Piece left;
    left.kind = PiecewiseSmoothFn::Piece::Kind::power;
    left.hi = -eps;
    left.c = -1.0 / double(p);
    left.p = p;
    left.d = -tail;

    PiecewiseSmoothFn::Piece right = left;
    right.lo = eps;
    right.hi = std::numeric_limits<double>::infinity();
    right.d = +tail;

    double v = right.eval(eps);
    double dv = right.deriv(eps);  // = 1/eps^{2m}
    PiecewiseSmoothFn::Piece mid = odd_hermite_interior(eps, v, dv);

    fn.pieces = {left, mid, right};
    return fn;
}

PiecewiseSmoothFn g_eps(int order, double eps) {
    if (order < 1) throw std::invalid_argument("g_eps: order must be >= 1");
    if (eps <= 0.0) throw std::invalid_argument("g_eps: eps must be positive");
    const int m = order;
    PiecewiseSmoothFn fn;
    PiecewiseSmoothFn::Piece left, right;
    if (m == 1) {
        left.kind = PiecewiseSmoothFn::Piece::Kind::log_abs;
        left.lo = -eps;
        left.hi = -eps / 2.0;
        left.c = -1.0;
        left.d = 2.0 * std::log(eps / 2.0) - eps;

        right.kind = PiecewiseSmoothFn::Piece::Kind::log_abs;
        right.lo = eps / 2.0;
        right.hi = eps;
        right.c = 1.0;
        right.d = 0.0;
    } else {
        left.kind = PiecewiseSmoothFn::Piece::Kind::power;
        left.lo = -eps;
        left.hi = -eps / 2.0;
        left.c = 1.0 / double(m - 1);
        left.p = m - 1;
        left.use_abs = true;
        left.d = -std::pow(2.0, m + 1) / (double(m - 1) * ipow(eps, m - 1));

        right.kind = PiecewiseSmoothFn::Piece::Kind::power;
        right.lo = eps / 2.0;
        right.hi = eps;
        right.c = -1.0 / double(m - 1);
        right.p = m - 1;
        right.d = 0.0;
    }
    double x0 = -eps / 2.0, x1 = eps / 2.0;
    double s = right.deriv(x1);  // equals left.deriv(x0) by construction
    PiecewiseSmoothFn::Piece mid =
        flat_connector(x0, x1, left.eval(x0), right.eval(x1), s);
    fn.pieces = {left, mid, right};
    return fn;
}

PiecewiseSmoothFn s_eps(int order, double eps) {
    if (order < 1) throw std::invalid_argument("s_eps: order must be >= 1");
    if (eps <= 0.0) throw std::invalid_argument("s_eps: eps must be positive");
    const int m = order;
    const double sgn = m % 2 == 0 ? 1.0 : -1.0;  // (-1)^m
    PiecewiseSmoothFn fn;
    fn.singular_at_zero = true;

    PiecewiseSmoothFn::Piece outer_left;
    outer_left.kind = PiecewiseSmoothFn::Piece::Kind::poly;
    outer_left.hi = -2.0 * eps / 3.0;
    outer_left.coeffs = {0.0, sgn};  // (-1)^m z

    PiecewiseSmoothFn::Piece outer_right;
    outer_right.kind = PiecewiseSmoothFn::Piece::Kind::poly;
    outer_right.lo = 2.0 * eps / 3.0;
    outer_right.coeffs = {0.0, 1.0};  // z

    PiecewiseSmoothFn::Piece center;
    if (m == 1) {
        center.kind = PiecewiseSmoothFn::Piece::Kind::log_abs;
        center.c = 1.0;
    } else {
        center.kind = PiecewiseSmoothFn::Piece::Kind::power;
        center.c = -1.0 / double(m - 1);
        center.p = m - 1;
    }
    center.lo = -eps / 2.0;
    center.hi = eps / 2.0;

    double la = -2.0 * eps / 3.0, lb = -eps / 2.0;
    double ra = eps / 2.0, rb = 2.0 * eps / 3.0;
    PiecewiseSmoothFn::Piece conn_left =
        cubic_hermite(la, lb, outer_left.eval(la), center.eval(lb),
                      outer_left.deriv(la), center.deriv(lb));
    PiecewiseSmoothFn::Piece conn_right =
        cubic_hermite(ra, rb, center.eval(ra), outer_right.eval(rb),
                      center.deriv(ra), outer_right.deriv(rb));

    fn.pieces = {outer_left, conn_left, center, conn_right, outer_right};
    if (fn.min_abs_derivative(-eps, eps) <= 0.0)
        throw std::runtime_error("s_eps: connector derivative vanishes");
    return fn;
}

double surface_offset_constant(int order, double eps) {
    if (order < 1) throw std::invalid_argument("surface_offset_constant: order must be >= 1");
    if (order == 1) return eps - 2.0 * std::log(eps / 2.0);
    return std::pow(2.0, order + 1) / (double(order - 1) * ipow(eps, order - 1));
}

}  // namespace bsing
