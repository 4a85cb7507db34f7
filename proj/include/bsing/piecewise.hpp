#pragma once

#include <limits>
#include <string>
#include <vector>

namespace bsing {

/// Piecewise closed-form real function (log / power / polynomial pieces) with
/// exact derivatives, used for the regularizers f_eps, g_eps and the
/// singularizer s_eps.
struct PiecewiseSmoothFn {
    struct Piece {
        enum class Kind { log_abs, power, poly };
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        Kind kind = Kind::poly;
        // log_abs: c*log|x| + d.   power: c*x^{-p} + d (or c*|x|^{-p} + d).
        double c = 0.0, d = 0.0;
        int p = 1;
        bool use_abs = false;
        std::vector<double> coeffs;  // poly: sum coeffs[i] * x^i

        double eval(double x) const;
        double deriv(double x) const;
        std::string describe() const;
    };

    std::vector<Piece> pieces;   // ordered, contiguous
    bool singular_at_zero = false;  // s_eps: x = 0 excluded from the domain

    double eval(double x) const;
    double deriv(double x) const;
    const Piece& piece_at(double x) const;  // throws std::domain_error off-domain

    /// Max over interior breakpoints of |value jump| + |derivative jump|.
    double c1_defect() const;
    /// Min of |derivative| over [lo, hi] on a dense grid (excluding x=0 when
    /// singular); the constructions demand this strictly positive.
    double min_abs_derivative(double lo, double hi, std::size_t grid = 10000) const;
};

/// Odd regularizer for even order 2m: equals -1/((2m-1)x^{2m-1}) - 2/eps^{2m-1}
/// on x < -eps and -1/((2m-1)x^{2m-1}) + 2/eps^{2m-1} on x > eps, with an odd
/// polynomial interpolant (f' > 0) on [-eps, eps].
/// Throws std::invalid_argument on odd order; std::runtime_error if no
/// positive-derivative interpolant is found (degree escalation exhausted).
PiecewiseSmoothFn f_eps(int order, double eps);

/// Surface regularizer, strictly increasing on (-eps, eps):
///   m = 1: log|x| on (eps/2, eps), -log|x| + 2 log(eps/2) - eps on (-eps, -eps/2)
///   m > 1: -1/((m-1)x^{m-1}) on (eps/2, eps),
///          +1/((m-1)|x|^{m-1}) - 2^{m+1}/((m-1) eps^{m-1}) on (-eps, -eps/2)
/// with a monotone polynomial connector in the middle band.
PiecewiseSmoothFn g_eps(int order, double eps);

/// Singularizer on (-eps, eps) \ {0}: log|z| or -1/((m-1)z^{m-1}) near 0,
/// z for z > 2 eps/3, (-1)^m z for z < -2 eps/3, C1 connectors between.
PiecewiseSmoothFn s_eps(int order, double eps);

/// Offset constant picked up on the negative side in the surface
/// desingularization, chosen so k*g_eps glues continuously to
/// (-1)^m H - k*C at z = -eps:
///   C(eps, 1) = eps - 2 log(eps/2),
///   C(eps, m) = 2^{m+1} / ((m-1) eps^{m-1}) for m > 1.
double surface_offset_constant(int order, double eps);

}  // namespace bsing
