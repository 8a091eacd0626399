#include "hydrostat/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hydrostat/state.hpp"

namespace hydrostat {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("physics." + what);
}

}  // namespace

void PhysParams::validate() const {
    require(std::isfinite(Re1) && Re1 > 0.0, "Re1 must be positive");
    require(std::isfinite(Re2) && Re2 > 0.0, "Re2 must be positive");
    require(std::isfinite(R_T) && R_T > 0.0, "R_T must be positive");
    require(std::isfinite(f), "f must be finite");
    require(std::isfinite(eps) && eps >= 0.0, "eps must be non-negative");
    require(std::isfinite(alpha_T) && alpha_T >= 0.0, "alpha_T must be non-negative");
    require(std::isfinite(alpha_v) && alpha_v >= 0.0, "alpha_v must be non-negative");
    require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
}

bool State::all_finite() const {
    if (!v.all_finite() || !T.all_finite() || !ps.all_finite()) return false;
    for (double x : w.values())
        if (!std::isfinite(x)) return false;
    return std::isfinite(t);
}

}  // namespace hydrostat
