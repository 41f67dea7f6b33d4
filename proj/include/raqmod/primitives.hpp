#pragma once

#include "raqmod/series.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace raqmod {

struct PrimitiveSolution {
    RAForm primitive;
    // Kernel positions (0,n) at k = -r, set to zero in `primitive`.
    std::vector<std::string> free_parameters;
    std::vector<std::string> obstruction_report;
    bool ok() const { return obstruction_report.empty(); }
};

// Solves del_r F = f coefficientwise, f of weights (r+1, s-1).
// m >= 1: top-down from the largest k down to b^{(-r)}, bottom-up for the
// block below k = -r, whose closing equation at k = -r is checked.
// m = 0: b^{(k)} = a^{(k)}/(r+k), and a^{(-r)}_{0,n} != 0 is an obstruction.
// With `throw_on_obstruction` an obstruction raises ObstructionViolated.
PrimitiveSolution solve_del_primitive(const RAForm& f, int target_r, bool throw_on_obstruction = true);

using Family = std::map<std::pair<int, int>, RAForm>;

// Joint system for F_{r,s}, r + s = W:
//   del F_{W-s,s}  - (W-s+1) F_{W-s+1,s-1} = hol[s]   (no second term for s = 0)
//   dbar F_{r,W-r} - (W-r+1) F_{r-1,W-r+1} = anti[r]  (no second term for r = 0)
// Missing entries are zero.  Every right-hand side carries the weights of
// the left-hand side.
struct EquivariantSystem {
    int W = 0;
    int order = 0;
    std::map<int, RAForm> hol;
    std::map<int, RAForm> anti;
};

struct FamilySolution {
    Family members;
    // Named constants left undetermined by both systems.
    std::vector<std::string> constants;
};

// F_{W,0} = primitive of hol[0] plus L^{-W} kappa(qbar); the dbar system then
// gives every other member by differentiation, and dbar F_{0,W} = anti[0]
// fixes kappa_n slot by slot.  Undetermined kappa_n become named constants
// (`constant_name` for n = 0).  Raises ObstructionViolated when the system
// is inconsistent.
FamilySolution solve_equivariant_system(const EquivariantSystem& sys, const std::string& constant_name);

// Exact residual check; returns one line per violated equation.
std::vector<std::string> check_equivariant_system(const EquivariantSystem& sys, const Family& members);

EquivariantSystem eisenstein_system(int w, int order);

struct DoubleEisensteinFamily {
    int a = 0, b = 0, k = 0, w = 0;
    Family members;
    std::vector<std::string> undetermined_constants;
};

// Right-hand sides for the family (a,b,k), 2w = 2a + 2b - 2k:
//   hol[s]  = C(2a,k) C(k+s,k) L^{k+1} G_{2a+2} E_{2b-k-s,k+s}
//   anti[r] = C(2b,k) C(k+r,k) L^{k+1} conj(G_{2b+2}) E_{k+r,2a-k-r}
EquivariantSystem double_eisenstein_system(int a, int b, int k, int order);
// Raises CuspCorrectionRequired for 2a + 2b - 2k + 2 >= 12.
DoubleEisensteinFamily build_double_eisenstein(int a, int b, int k, int order);

// Values for `symbols` making every solution[i] equal target[i]; symbols
// that cannot be pinned are left out of the result.
std::map<std::string, PeriodScalar> match_constants(const std::vector<RAForm>& solution,
                                                    const std::vector<RAForm>& target,
                                                    const std::vector<std::string>& symbols);

} // namespace raqmod
