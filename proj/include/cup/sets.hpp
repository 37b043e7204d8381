#pragma once

// Borel test sets for the isoperimetric checks.  Both variants admit an exact
// signed distance, so epsilon-neighborhoods and memberships are computed
// analytically, never by smoothing.

#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cup/batch.hpp"
#include "cup/errors.hpp"

namespace cup::verify {

struct HalfSpace {
    std::vector<double> direction;  // unit vector
    double offset = 0;              // A = {x : <direction, x> <= offset}
};

struct CenteredBall {
    double radius = 0;  // A = {x : |x| <= radius}
};

class SetSpec {
  public:
    using Variant = std::variant<HalfSpace, CenteredBall>;

    static SetSpec halfspace(std::vector<double> direction, double offset) {
        const double len = norm(std::span<const double>(direction));
        require_config(std::fabs(len - 1.0) < 1e-9, "HalfSpace: direction must be a unit vector");
        SetSpec s;
        s.v_ = HalfSpace{std::move(direction), offset};
        return s;
    }

    /// Half-space {x_1 <= offset}; every measure in the suite is rotationally
    /// invariant, so the axis choice is irrelevant.
    static SetSpec halfspace_e1(int dim, double offset) {
        std::vector<double> e1(dim, 0.0);
        e1[0] = 1.0;
        return halfspace(std::move(e1), offset);
    }

    static SetSpec ball(double radius) {
        require_config(radius > 0, "CenteredBall: radius must be positive");
        SetSpec s;
        s.v_ = CenteredBall{radius};
        return s;
    }

    /// Signed distance to A: <= 0 inside, and the open eps-neighborhood is
    /// exactly {signed_distance < eps}.
    double signed_distance(std::span<const double> x) const {
        if (const auto* hs = std::get_if<HalfSpace>(&v_))
            return dot(std::span<const double>(hs->direction), x) - hs->offset;
        return norm(x) - std::get<CenteredBall>(v_).radius;
    }

    bool is_halfspace() const { return std::holds_alternative<HalfSpace>(v_); }
    const HalfSpace& as_halfspace() const { return std::get<HalfSpace>(v_); }
    const CenteredBall& as_ball() const { return std::get<CenteredBall>(v_); }

    std::string describe() const {
        std::ostringstream os;
        if (const auto* hs = std::get_if<HalfSpace>(&v_))
            os << "halfspace(offset=" << hs->offset << ")";
        else
            os << "ball(r=" << std::get<CenteredBall>(v_).radius << ")";
        return os.str();
    }

    /// Parses "halfspace:<offset>" or "ball:<radius>".
    static SetSpec parse(const std::string& text, int dim) {
        const auto colon = text.find(':');
        require_config(colon != std::string::npos,
                       "set spec must look like halfspace:<offset> or ball:<radius>");
        const std::string kind = text.substr(0, colon);
        char* end = nullptr;
        const std::string num = text.substr(colon + 1);
        const double value = std::strtod(num.c_str(), &end);
        require_config(end != num.c_str() && *end == '\0', "set spec: bad number '" + num + "'");
        if (kind == "halfspace") return halfspace_e1(dim, value);
        if (kind == "ball") return ball(value);
        throw config_error("set spec: unknown kind '" + kind + "'");
    }

  private:
    Variant v_;
};

}  // namespace cup::verify
