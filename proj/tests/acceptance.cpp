// One PASS/FAIL line per acceptance criterion.  A criterion passes when all
// of its suites pass and their total wall time is under the limit.
#include "raqmod/parallel.hpp"
#include "raqmod/verify.hpp"

#include <cstdio>
#include <string>
#include <vector>

using namespace raqmod;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> suites;
    double limit_seconds;
};

const std::vector<Criterion> kCriteria{
    {1, "exact operator algebra (N=10, 100 random series)", {"sl2", "laplace-ops"}, 10},
    {2, "Ramanujan system and theta(Delta) = 0 (N=20)", {"ramanujan"}, 10},
    {3, "real-analytic Eisenstein systems, w in {2,4,6,8} (N=16)", {"eisenstein-system"}, 30},
    {4, "primitive solver (N=24)", {"primitive-solver"}, 60},
    {5, "double Eisenstein shuffles and Laplace table (N=12)", {"double-eis", "laplace-table"}, 60},
    {6, "C111 = 2/3 L^2 E22 + zeta(3) within 5e-3 (M=50, N=24)", {"zagier"}, 300},
    {7, "C211 affine fit over 5 points (M=50, N=24)", {"c211"}, 1800},
    {8, "Petersson orthogonality, oracle and scaling (64x64)", {"petersson-orth"}, 120},
    {9, "9(a28 - a82) + 14(a46 - a64) vanishes within 1e-3 max|a|", {"orthogonality-9-14"}, 300},
    {10, "lattice vs closed form Eisenstein within 1e-5 (M=4000)", {"lattice-eisenstein"}, 60},
};

} // namespace

int main()
{
    VerifyOptions opts;
    opts.jobs = default_jobs();
    int failed = 0;
    for (const auto& c : kCriteria) {
        bool ok = true;
        double seconds = 0.0;
        std::string why;
        for (const auto& s : c.suites) {
            const VerifyReport rep = run_suite(s, opts);
            seconds += rep.seconds;
            for (const auto& chk : rep.checks)
                if (!chk.passed) {
                    ok = false;
                    why += " [" + s + ": " + chk.id + (chk.detail.empty() ? "" : " (" + chk.detail + ")") + "]";
                }
        }
        if (seconds >= c.limit_seconds) {
            ok = false;
            why += " [runtime over limit]";
        }
        std::printf("%s criterion %d: %s; %.1fs of %.0fs%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds,
                    c.limit_seconds, why.c_str());
        std::fflush(stdout);
        failed += ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
