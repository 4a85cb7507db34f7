#include "bsing/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bsing/parallel.hpp"

namespace bsing {

const TrigPoly& AdmissibleHamiltonian::k(const std::string& circle_id) const {
    auto it = per_circle.find(circle_id);
    if (it == per_circle.end())
        throw std::invalid_argument("Hamiltonian: no k profile for circle " + circle_id);
    return it->second;
}

TimeSpaceProfile AdmissibleHamiltonian::collar_profile(const std::string& circle_id) const {
    auto it = collar_h.find(circle_id);
    if (it != collar_h.end()) return it->second;
    return TimeSpaceProfile{};
}

double t_eps_threshold(const CriticalCircle& circle) {
    const int m = circle.order;
    const double T = circle.theta_period;
    const double eps = circle.epsilon;
    const double flip = circle.a_top().eval(0.0) < 0.0 ? -1.0 : 1.0;
    // inf over the collar grid of sum a_i z^{m-i} (the z^m-rescaled coefficient)
    const std::size_t nz = 201, nth = 128;
    double inf = par::min_over_grid(nz * nth, [&](std::size_t idx) {
        std::size_t iz = idx / nth, ith = idx % nth;
        double z = -eps + 2.0 * eps * double(iz) / double(nz - 1);
        double theta = T * double(ith) / double(nth);
        double acc = 0.0;
        for (int i = 1; i <= m; ++i)
            acc += flip * circle.laurent_coeffs[i - 1].eval(theta) * std::pow(z, m - i);
        return acc;
    });
    return 0.5 * T * inf;
}

AdmissibilityReport admissibility_report(const AdmissibleHamiltonian& H, const BSurface& s) {
    s.validate();
    AdmissibilityReport report;
    report.overall = true;
    for (const auto& circle : s.circles) {
        const TrigPoly& k = H.k(circle.id);
        CircleAdmissibility entry;
        entry.circle_id = circle.id;
        entry.k_integral = k.integrate(0.0, 1.0);
        const double flip = circle.a_top().eval(0.0) < 0.0 ? -1.0 : 1.0;
        const double T = flip * modular_weight(circle);
        const double I = flip * entry.k_integral;

        if (k.is_constant() && std::abs(k.c0) < 1e-14) {
            entry.pass = false;
            entry.criterion = "k nonzero";
            entry.witness = "k = 0: Reeb-invariant first integral, orbit families near Z";
            entry.threshold = 0.0;
        } else if (circle.order == 1) {
            entry.criterion = "interval (0,T)";
            entry.threshold = T;
            entry.pass = I > 0.0 && I < T;
        } else {
            entry.criterion = "interval (0,T_eps)";
            entry.threshold = t_eps_threshold(circle);
            entry.pass = I > 0.0 && I < entry.threshold;
        }
        if (!entry.pass && entry.witness.empty()) {
            double rem = std::remainder(I, T);
            std::ostringstream os;
            if (std::abs(rem) < 1e-10) {
                os << "integral of k in T*Z (degenerate 1-periodic orbit families)";
            } else {
                os << "integral of k = " << I << " outside (0, " << entry.threshold << ")";
            }
            entry.witness = os.str();
        }
        report.overall = report.overall && entry.pass;
        report.per_circle.push_back(std::move(entry));
    }
    return report;
}

bool is_unimodular(const AdmissibleHamiltonian& H, const BSurface& s,
                   const std::optional<SignAssignment>& coloring) {
    if (!coloring.has_value()) return false;  // no global defining function
    if (coloring->kind != SignAssignment::Kind::vertex2coloring) return false;
    // The coloring must actually 2-color the associated graph.
    BGraph g = build_graph(s);
    for (const auto& e : g.edges) {
        auto ia = coloring->sign.find(e.a), ib = coloring->sign.find(e.b);
        if (ia == coloring->sign.end() || ib == coloring->sign.end()) return false;
        if (ia->second == ib->second) return false;
    }
    // A single k(t) must serve every circle (collar expressions generated by
    // one global defining function; a sign-flipped k on some circle means the
    // local expression comes from a different local defining function).
    const TrigPoly* ref = nullptr;
    for (const auto& circle : s.circles) {
        const TrigPoly& k = H.k(circle.id);
        if (!ref) ref = &k;
        else if (!ref->approx_equal(k, 1e-10)) return false;
    }
    return ref != nullptr;
}

bool disk_admissible(const TrigPoly& k, double a_m) {
    if (a_m <= 0.0) throw std::invalid_argument("disk_admissible: a_m must be positive");
    if (k.min_value() <= 0.0) return false;
    return k.integrate(0.0, 1.0) < 2.0 * std::numbers::pi / a_m;
}

}  // namespace bsing
