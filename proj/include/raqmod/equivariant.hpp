#pragma once

#include "raqmod/json_io.hpp"
#include "raqmod/series.hpp"

#include <map>
#include <utility>

namespace raqmod {

// Polynomials in V_{2n} are written in the scaled variables
//   w = i pi z,  wbar = i pi zbar,  Yh = Y / (i pi),
// so that X - zY = X - w Yh, X - zbar Y = X - wbar Yh and L = w - wbar.
// With these every frame change has rational coefficients.

// Polynomial in wbar with series coefficients: j -> c_j, meaning sum c_j wbar^j.
// No stored zero coefficient.
using ZPoly = std::map<int, BiSeries>;

ZPoly zpoly_add(const ZPoly& a, const ZPoly& b);
ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b);
ZPoly zpoly_scale(const ZPoly& a, const Rational& q);
bool zpoly_is_zero(const ZPoly& a);
// (1/i pi) d/dz and (1/i pi) d/dzbar; the latter also differentiates wbar^j.
ZPoly zpoly_dz(const ZPoly& a);
ZPoly zpoly_dzbar(const ZPoly& a);

enum class Frame { XY, Modular };

// Element (i pi)^{ipi_power} * sum_{a+b=2n} c_{a,b} e_a e_b' of V_{2n} (x) M, where
// (e, e') = (X, Yh) in the XY frame with c_{a,b} the coefficient of X^a Yh^b,
// and (e, e') = (X - zY, X - zbar Y) in the modular frame.
struct FramePoly {
    int n = 0;
    Frame frame = Frame::XY;
    int ipi_power = 0;
    int order = 0;
    std::map<std::pair<int, int>, ZPoly> coeffs;

    bool operator==(const FramePoly& o) const = default;
};

FramePoly frame_change(const FramePoly& p, Frame target);

// (d_X (x) d_Y - d_Y (x) d_X)^k followed by multiplication, computed in the
// XY frame (inputs are converted when necessary).  Derivatives are taken in
// (X, Yh), so the result carries ipi_power(p) + ipi_power(q) - k relative to
// the derivatives in (X, Y).  With `normalize` the result is divided by (k!)^2.
// Zero when k > 2 deg p or k > 2 deg q.
FramePoly delta_proj(int k, const FramePoly& p, const FramePoly& q, bool normalize = true);

// Modular-frame section sum_{r+s=2n} F_{r,s} (X - zY)^r (X - zbar Y)^s.
FramePoly section_from_family(const std::map<std::pair<int, int>, RAForm>& family, int order);
// Inverse of section_from_family; requires ipi_power 0 and wbar-free components.
std::map<std::pair<int, int>, RAForm> family_from_section(const FramePoly& p);

// Componentwise z-derivatives of an XY-frame polynomial (X, Yh held fixed).
FramePoly frame_dz(const FramePoly& p);
FramePoly frame_dzbar(const FramePoly& p);

FramePoly frame_add(const FramePoly& a, const FramePoly& b);
FramePoly frame_sub(const FramePoly& a, const FramePoly& b);
bool frame_is_zero(const FramePoly& p);

json frame_to_json(const FramePoly& p);

} // namespace raqmod
