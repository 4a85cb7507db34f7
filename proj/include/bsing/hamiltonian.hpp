#pragma once

#include <map>
#include <string>
#include <vector>

#include "bsing/geometry.hpp"
#include "bsing/graph.hpp"

namespace bsing {

/// Hamiltonian linear along the transverse field on every collar:
///   H = k_i(t) * log|z|              (m = 1)
///   H = -k_i(t) / ((m-1) z^{m-1})    (m > 1)
/// plus a per-component interior term; on collars the interior term is the
/// restriction h_t(theta) (collar-independent when strictly admissible).
struct AdmissibleHamiltonian {
    std::map<std::string, TrigPoly> per_circle;           // circle id -> k_i, period 1
    std::map<std::string, TimeSpaceProfile> per_component;  // component id -> h
    std::map<std::string, TimeSpaceProfile> collar_h;       // circle id -> h restricted to collar

    const TrigPoly& k(const std::string& circle_id) const;  // throws if missing
    /// Collar restriction of the interior term (empty profile if none given).
    TimeSpaceProfile collar_profile(const std::string& circle_id) const;
};

struct CircleAdmissibility {
    std::string circle_id;
    bool pass = false;
    std::string criterion;  // which sufficient condition was applied
    std::string witness;    // failure diagnostics
    double k_integral = 0.0;
    double threshold = 0.0;  // T (m=1) or T_eps (m>1)
};

struct AdmissibilityReport {
    std::vector<CircleAdmissibility> per_circle;
    bool overall = false;
};

/// m=1 circles pass iff 0 < int_0^1 k < T; m>1 circles pass iff
/// 0 < int_0^1 k < T_eps with T_eps = T/2 * inf_{|z|<eps} sum a_i z^{m-i}
/// (theta orientation flipped first if a_m < 0); k ≡ 0 fails.
/// Throws std::invalid_argument if a circle of the surface has no k entry.
AdmissibilityReport admissibility_report(const AdmissibleHamiltonian& H, const BSurface& s);

/// True iff a single k(t) serves every circle and the collar expressions come
/// from one global defining function consistent with the vertex coloring.
bool is_unimodular(const AdmissibleHamiltonian& H, const BSurface& s,
                   const std::optional<SignAssignment>& coloring);

/// Disk model: true iff k(t) > 0 for all t and int_0^1 k < 2*pi/a_m.
bool disk_admissible(const TrigPoly& k, double a_m);

/// T_eps = T/2 * inf_{|z| < eps} sum a_i(theta) z^{m-i} over a dense collar
/// grid (parallel reduction); sign-normalized so a_m > 0.
double t_eps_threshold(const CriticalCircle& circle);

}  // namespace bsing
