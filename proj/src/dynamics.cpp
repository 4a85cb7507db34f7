#include "bsing/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsing/integrate.hpp"
#include "bsing/parallel.hpp"

namespace bsing {

namespace {

double wrap_delta(double d, double period) {
    if (period <= 0.0) return d;
    return d - period * std::round(d / period);
}

double wrap_into(double x, double period) {
    if (period <= 0.0) return x;
    double y = std::fmod(x, period);
    return y < 0.0 ? y + period : y;
}

}  // namespace

Vec2 collar_vector_field(const CriticalCircle& circle, const AdmissibleHamiltonian& H,
                         double z, double theta, double t) {
    CollarField field(circle, H.k(circle.id), H.collar_profile(circle.id));
    return field.velocity(t, {z, theta});
}

Vec2 collar_flow_closed_form(const CriticalCircle& circle, const TrigPoly& k,
                             const TimeSpaceProfile& h, const Vec2& x0, double t) {
    if (circle.order != 1)
        throw std::invalid_argument("collar_flow_closed_form: requires m = 1");
    if (!k.is_constant())
        throw std::invalid_argument("collar_flow_closed_form: requires constant k");
    const TrigPoly& a1 = circle.laurent_coeffs[0];
    if (!a1.is_constant())
        throw std::invalid_argument("collar_flow_closed_form: requires constant a_1 (normalize first)");
    const double c = a1.c0;
    const double kk = k.c0;
    const double v = kk / c;  // theta rate
    const double theta1 = x0[1] + v * t;
    double expo = 0.0;  // (1/c) int_0^t h_theta(s, theta0 + v s) ds
    for (const auto& term : h.terms) {
        TrigPoly eta_p = term.space.derivative();
        if (term.time.is_constant()) {
            double tau = term.time.c0;
            if (v != 0.0) {
                // exact: (tau/(c v)) [eta(theta0 + v t) - eta(theta0)]
                expo += tau / (c * v) * (term.space.eval(x0[1] + v * t) - term.space.eval(x0[1]));
            } else {
                expo += tau / c * eta_p.eval(x0[1]) * t;
            }
        } else {
            // time-modulated term: composite Gauss-Legendre (5-point) quadrature
            static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                         0.5384693101056831, 0.9061798459386640};
            static const double gw[5] = {0.2369268850561891, 0.4786286704993665,
                                         0.5688888888888889, 0.4786286704993665,
                                         0.2369268850561891};
            int segments = std::max(32, int(std::ceil(std::abs(t) * 64)));
            double acc = 0.0;
            for (int seg = 0; seg < segments; ++seg) {
                double s0 = t * double(seg) / double(segments);
                double s1 = t * double(seg + 1) / double(segments);
                double half = 0.5 * (s1 - s0), mid = 0.5 * (s0 + s1);
                for (int q = 0; q < 5; ++q) {
                    double s = mid + half * gx[q];
                    acc += half * gw[q] * term.time.eval(s) * eta_p.eval(x0[1] + v * s);
                }
            }
            expo += acc / c;
        }
    }
    return {x0[0] * std::exp(-expo), theta1};
}

FlowPath integrate(const ChartField& field, const Vec2& x0, double duration, double tol) {
    if (!field.in_domain(x0))
        throw std::invalid_argument("integrate: initial point outside chart domain");
    auto rhs = [&field](double t, const std::array<double, 2>& y, std::array<double, 2>& dy) {
        Vec2 v = field.velocity(t, {y[0], y[1]});
        dy[0] = v[0];
        dy[1] = v[1];
    };
    auto abort = [&field](double, const std::array<double, 2>& y) {
        return !field.in_domain({y[0], y[1]});
    };
    OdeResult<2> r = integrate_ode<2>(rhs, {x0[0], x0[1]}, 0.0, duration, tol, abort, true);
    FlowPath path;
    path.aborted = r.aborted;
    path.t_reached = r.t_reached;
    path.points.reserve(r.path.size());
    for (const auto& [t, y] : r.path) path.points.push_back({t, {y[0], y[1]}});
    return path;
}

TimeOneMap time_one_map(const ChartField& field, const Vec2& x0, double tol) {
    // State: (x, y, J00, J01, J10, J11) with dJ/dt = A(t,x) J.
    auto rhs = [&field](double t, const std::array<double, 6>& y, std::array<double, 6>& dy) {
        Vec2 v = field.velocity(t, {y[0], y[1]});
        Mat2 A = field.jacobian(t, {y[0], y[1]});
        dy[0] = v[0];
        dy[1] = v[1];
        dy[2] = A[0][0] * y[2] + A[0][1] * y[4];
        dy[3] = A[0][0] * y[3] + A[0][1] * y[5];
        dy[4] = A[1][0] * y[2] + A[1][1] * y[4];
        dy[5] = A[1][0] * y[3] + A[1][1] * y[5];
    };
    auto abort = [&field](double, const std::array<double, 6>& y) {
        return !field.in_domain({y[0], y[1]});
    };
    OdeResult<6> r = integrate_ode<6>(rhs, {x0[0], x0[1], 1.0, 0.0, 0.0, 1.0}, 0.0, 1.0, tol,
                                      abort, false);
    TimeOneMap out;
    out.aborted = r.aborted;
    out.image = {r.y[0], r.y[1]};
    out.jacobian = {{{r.y[2], r.y[3]}, {r.y[4], r.y[5]}}};
    return out;
}

void classify_index(OrbitRecord& rec, const ChartField& field) {
    rec.index_supported = false;
    if (!field.hamiltonian(rec.point).has_value()) return;
    auto Hv = [&](double x, double y) { return *field.hamiltonian({x, y}); };
    const double d = 1e-5;
    double x = rec.point[0], y = rec.point[1];
    double hxx = (Hv(x + d, y) - 2.0 * Hv(x, y) + Hv(x - d, y)) / (d * d);
    double hyy = (Hv(x, y + d) - 2.0 * Hv(x, y) + Hv(x, y - d)) / (d * d);
    double hxy = (Hv(x + d, y + d) - Hv(x + d, y - d) - Hv(x - d, y + d) + Hv(x - d, y - d)) /
                 (4.0 * d * d);
    double gx = (Hv(x + d, y) - Hv(x - d, y)) / (2.0 * d);
    double gy = (Hv(x, y + d) - Hv(x, y - d)) / (2.0 * d);
    double hscale = std::max({std::abs(hxx), std::abs(hyy), std::abs(hxy), 1e-12});
    if (std::hypot(gx, gy) > 1e-4 * hscale * std::max(1.0, std::hypot(x, y))) return;
    double tr = hxx + hyy;
    double det = hxx * hyy - hxy * hxy;
    if (std::abs(det) < 1e-12 * hscale * hscale) return;
    if (det < 0.0) {
        rec.index = 0;  // saddle
    } else {
        rec.index = tr > 0.0 ? +1 : -1;  // min -> +1, max -> -1
    }
    rec.index_supported = true;
}

OrbitSearch find_periodic_orbits(const ChartField& field, int grid_density, double tol) {
    const auto box = field.seed_box();
    const Vec2 per = field.periods();
    const int n = grid_density;

    struct Candidate {
        bool ok = false;
        Vec2 x{};
        double residual = 0.0;
        double det = 0.0;
    };

    auto newton_from = [&](Vec2 seed) -> Candidate {
        Candidate cand;
        Vec2 x = seed;
        for (int it = 0; it < 12; ++it) {
            if (!field.in_domain(x)) return cand;
            TimeOneMap tm;
            try {
                tm = time_one_map(field, x, std::min(tol * 1e-2, 1e-12));
            } catch (const std::exception&) {
                return cand;
            }
            if (tm.aborted) return cand;
            Vec2 g = {wrap_delta(tm.image[0] - x[0], per[0]),
                      wrap_delta(tm.image[1] - x[1], per[1])};
            double res = std::hypot(g[0], g[1]);
            double j00 = tm.jacobian[0][0] - 1.0, j01 = tm.jacobian[0][1];
            double j10 = tm.jacobian[1][0], j11 = tm.jacobian[1][1] - 1.0;
            double det = j00 * j11 - j01 * j10;
            if (res < tol) {
                cand.ok = true;
                cand.x = {wrap_into(x[0], per[0]), wrap_into(x[1], per[1])};
                cand.residual = res;
                // det(Id - Dphi) = det(-(Dphi - Id)) = det(Dphi - Id) in 2d
                cand.det = det;
                return cand;
            }
            if (std::abs(det) < 1e-14) return cand;  // singular Newton system
            Vec2 step = {(g[0] * j11 - g[1] * j01) / det, (g[1] * j00 - g[0] * j10) / det};
            double maxstep = 0.25 * std::max(std::abs(box[1] - box[0]), std::abs(box[3] - box[2]));
            double slen = std::hypot(step[0], step[1]);
            if (slen > maxstep) {
                step[0] *= maxstep / slen;
                step[1] *= maxstep / slen;
            }
            x = {x[0] - step[0], x[1] - step[1]};
        }
        return cand;
    };

    // Seed grid, processed concurrently; slot-indexed results keep the merge
    // deterministic under any thread schedule.
    std::vector<Vec2> seeds;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec2 s = {box[0] + (box[1] - box[0]) * (double(i) + 0.5) / double(n),
                      box[2] + (box[3] - box[2]) * (double(j) + 0.5) / double(n)};
            if (field.in_domain(s)) seeds.push_back(s);
        }
    std::vector<Candidate> cands =
        par::map_indexed<Candidate>(seeds.size(), [&](std::size_t i) { return newton_from(seeds[i]); });

    // Partition into nondegenerate candidates and degenerate-family evidence.
    const double kDegenerateDet = 1e-6;
    std::vector<Candidate> isolated, degenerate;
    for (const auto& cand : cands) {
        if (!cand.ok) continue;
        (std::abs(cand.det) < kDegenerateDet ? degenerate : isolated).push_back(cand);
    }

    OrbitSearch out;
    // Collinearity test on degenerate converged seeds (PCA line fit).
    if (degenerate.size() >= 8) {
        double mx = 0.0, my = 0.0;
        for (const auto& cand : degenerate) {
            mx += cand.x[0];
            my += cand.x[1];
        }
        mx /= double(degenerate.size());
        my /= double(degenerate.size());
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (const auto& cand : degenerate) {
            double dx = wrap_delta(cand.x[0] - mx, per[0]);
            double dy = wrap_delta(cand.x[1] - my, per[1]);
            sxx += dx * dx;
            sxy += dx * dy;
            syy += dy * dy;
        }
        // smaller eigenvalue of the scatter matrix = residual off the line
        double tr = sxx + syy, dd = sxx * syy - sxy * sxy;
        double lam_min = 0.5 * (tr - std::sqrt(std::max(tr * tr - 4.0 * dd, 0.0)));
        double spread = tr / double(degenerate.size());
        bool collinear =
            spread < 1e-20 || lam_min / double(degenerate.size()) < 1e-2 * std::max(spread, 1e-12);
        // A 2d continuum of converged degenerate seeds (e.g. k in T*Z with no
        // interior term: every collar point is fixed) is a family as well.
        bool continuum = degenerate.size() >= std::max<std::size_t>(seeds.size() / 4, 32);
        if (collinear || continuum) {
            out.degenerate_family_flagged = true;
            out.family_seed_count = degenerate.size();
        }
    }

    // Deduplicate isolated candidates, then sort lexicographically for
    // determinism. Converged points scatter by roughly residual / sigma_min
    // of (Id - Dphi^1), which for a near-identity map is far larger than the
    // residual tolerance; the radius therefore also scales with the seed box.
    auto sbox = field.seed_box();
    double extent = std::max(sbox[1] - sbox[0], sbox[3] - sbox[2]);
    const double dedup = std::max(10.0 * tol, 1e-5 * extent);
    std::vector<OrbitRecord> records;
    for (const auto& cand : isolated) {
        bool dup = false;
        for (const auto& rec : records) {
            double dx = wrap_delta(cand.x[0] - rec.point[0], per[0]);
            double dy = wrap_delta(cand.x[1] - rec.point[1], per[1]);
            if (std::hypot(dx, dy) < dedup) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        OrbitRecord rec;
        rec.chart_id = field.chart_id;
        rec.point = cand.x;
        rec.residual = cand.residual;
        rec.det = cand.det;
        rec.nondegenerate = std::abs(cand.det) > kDegenerateDet;
        classify_index(rec, field);
        records.push_back(rec);
    }
    std::sort(records.begin(), records.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
        if (a.point[0] != b.point[0]) return a.point[0] < b.point[0];
        return a.point[1] < b.point[1];
    });
    out.orbits = std::move(records);
    return out;
}

OrbitSearch find_collar_periodic_orbits(const AdmissibleHamiltonian& H, const BSurface& s,
                                        int grid_density, double tol) {
    OrbitSearch total;
    for (const auto& circle : s.circles) {
        CollarField field(circle, H.k(circle.id), H.collar_profile(circle.id));
        OrbitSearch one = find_periodic_orbits(field, grid_density, tol);
        total.degenerate_family_flagged |= one.degenerate_family_flagged;
        total.family_seed_count += one.family_seed_count;
        for (auto& rec : one.orbits) total.orbits.push_back(std::move(rec));
    }
    return total;
}

RootsOfF roots_of_F(const CriticalCircle& circle, const TrigPoly& k,
                    const TimeSpaceProfile& h) {
    if (circle.order != 1) throw std::invalid_argument("roots_of_F: requires m = 1");
    if (!k.is_constant() || k.c0 == 0.0)
        throw std::invalid_argument("roots_of_F: requires constant k != 0");
    const double T = circle.theta_period;
    const double kk = k.c0;
    const double duration = T / kk;

    auto F = [&](double theta0) {
        // int_0^{T/k} h_theta(t, theta0 + k t) dt, composite Simpson
        const int n = 512;  // even
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            double t = duration * double(i) / double(n);
            double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += w * h.dtheta(t, theta0 + kk * t);
        }
        return acc * duration / (3.0 * double(n));
    };

    RootsOfF out;
    const int scan = (int)std::ceil(T / 1e-4);
    double maxabs = 0.0;
    std::vector<double> vals(scan + 1);
    for (int i = 0; i <= scan; ++i) {
        vals[i] = F(T * double(i) / double(scan));
        maxabs = std::max(maxabs, std::abs(vals[i]));
    }
    if (maxabs < 1e-12) {
        out.identically_zero = true;
        return out;
    }
    for (int i = 0; i < scan; ++i) {
        double x0 = T * double(i) / double(scan), x1 = T * double(i + 1) / double(scan);
        double f0 = vals[i], f1 = vals[i + 1];
        if (f0 == 0.0) {
            out.roots.push_back(x0);
            continue;
        }
        if (f0 * f1 >= 0.0) continue;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (x0 + x1);
            double fm = F(mid);
            if (f0 * fm <= 0.0) {
                x1 = mid;
                f1 = fm;
            } else {
                x0 = mid;
                f0 = fm;
            }
        }
        out.roots.push_back(0.5 * (x0 + x1));
    }
    return out;
}

}  // namespace bsing
