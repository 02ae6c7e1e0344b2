#pragma once

// Cross-check of the quadratic bounds against the exact monoid size.  Lives
// apart from the oracle and bounds headers so neither depends on the other.

#include <icmb/bounds.hpp>
#include <icmb/oracle.hpp>

#include <stdexcept>

namespace icmb::oracle {

struct AuditRecord {
    Integer d;
    Integer f;
    Integer icm;          // exact #ICM(R)
    Integer bound_cor52;  // #Cl(O) * prod bass factors
    Integer bound_cor53;  // #Cl(R) * prod (ord_p(f) + 1)
};

// Computes #ICM exactly for the order of conductor f in Q(sqrt(d)), d < 0,
// and checks it against both bounds.  Throws logic_error on any violation.
inline AuditRecord bound_audit(const Integer& d, const Integer& f) {
    AuditRecord rec;
    rec.d = d;
    rec.f = f;
    rec.icm = icm_exact(d, f);
    const auto rep = bounds::quad_bound(d, f);
    rec.bound_cor52 = rep.bound_cor52;
    if (!rep.bound_cor53)
        throw std::logic_error("bound_audit: secondary bound unavailable");
    rec.bound_cor53 = *rep.bound_cor53;
    if (rec.icm > rec.bound_cor52)
        throw std::logic_error("bound_audit: exact monoid size exceeds the class-number bound");
    if (rec.icm > rec.bound_cor53)
        throw std::logic_error("bound_audit: exact monoid size exceeds the #Cl(R) bound");
    return rec;
}

}  // namespace icmb::oracle
