#pragma once

// Smooth test functions with analytic gradients and certified Lipschitz
// bounds.  These play the role of f in every inequality report; the bounds
// are provable per variant, so rescaling by lipschitz_bound() always yields
// a function with Lipschitz constant <= 1.

#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cup/batch.hpp"
#include "cup/errors.hpp"

namespace cup::funcs {

/// f(x) = <direction, x>.  |grad| = |direction|.
struct Linear {
    std::vector<double> direction;
};

/// f(x) = sqrt(epsilon^2 + |x|^2), a smooth |x|.  |grad| < 1.
struct SmoothNorm {
    double epsilon;
    int dim;
};

struct RbfBump {
    double weight;
    double width;
    std::vector<double> center;
};

/// f(x) = sum_i w_i exp(-|x - c_i|^2 / (2 s_i^2)).
/// Per-bump gradient norm peaks at radius s_i with value |w_i| e^{-1/2} / s_i.
struct RbfMixture {
    std::vector<RbfBump> bumps;
};

/// f(x) = logistic((<theta, x> - offset) / softness), theta a unit vector.
/// Smooth stand-in for the indicator of a half-space; max slope of the
/// logistic is 1/4, so the Lipschitz bound is 1/(4 softness).
struct SmoothedHalfspace {
    std::vector<double> direction;
    double offset;
    double softness;
};

class TestFunction {
  public:
    using Spec = std::variant<Linear, SmoothNorm, RbfMixture, SmoothedHalfspace>;

    static TestFunction build(Spec spec) {
        TestFunction f;
        if (auto* lin = std::get_if<Linear>(&spec)) {
            require_config(!lin->direction.empty(), "Linear: direction must be non-empty");
            f.dim_ = static_cast<int>(lin->direction.size());
        } else if (auto* sn = std::get_if<SmoothNorm>(&spec)) {
            require_config(sn->epsilon > 0, "SmoothNorm: epsilon must be positive");
            require_config(sn->dim >= 1, "SmoothNorm: dim must be >= 1");
            f.dim_ = sn->dim;
        } else if (auto* rbf = std::get_if<RbfMixture>(&spec)) {
            require_config(!rbf->bumps.empty(), "RbfMixture: needs at least one bump");
            f.dim_ = static_cast<int>(rbf->bumps.front().center.size());
            for (const auto& b : rbf->bumps) {
                require_config(b.width > 0, "RbfMixture: widths must be positive");
                require_config(static_cast<int>(b.center.size()) == f.dim_,
                               "RbfMixture: all centers must share one dimension");
            }
        } else {
            auto& hs = std::get<SmoothedHalfspace>(spec);
            require_config(!hs.direction.empty(), "SmoothedHalfspace: direction must be non-empty");
            require_config(hs.softness > 0, "SmoothedHalfspace: softness must be positive");
            const double len = norm(std::span<const double>(hs.direction));
            require_config(std::fabs(len - 1.0) < 1e-9,
                           "SmoothedHalfspace: direction must be a unit vector");
            f.dim_ = static_cast<int>(hs.direction.size());
        }
        f.spec_ = std::move(spec);
        return f;
    }

    int dim() const { return dim_; }

    double operator()(std::span<const double> x) const {
        thread_local std::vector<double> scratch;
        scratch.resize(x.size());
        return eval_with_grad(x, scratch);
    }

    /// Value and analytic gradient at x (gradient written into grad).
    double eval_with_grad(std::span<const double> x, std::span<double> grad) const {
        require_domain(static_cast<int>(x.size()) == dim_ &&
                           grad.size() == x.size(),
                       "TestFunction: point dimension mismatch");
        if (const auto* lin = std::get_if<Linear>(&spec_)) {
            for (std::size_t i = 0; i < x.size(); ++i) grad[i] = lin->direction[i];
            return dot(std::span<const double>(lin->direction), x);
        }
        if (const auto* sn = std::get_if<SmoothNorm>(&spec_)) {
            const double v = std::sqrt(sn->epsilon * sn->epsilon + squared_norm(x));
            for (std::size_t i = 0; i < x.size(); ++i) grad[i] = x[i] / v;
            return v;
        }
        if (const auto* rbf = std::get_if<RbfMixture>(&spec_)) {
            double value = 0;
            for (auto& g : grad) g = 0;
            for (const auto& b : rbf->bumps) {
                double d2 = 0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double d = x[i] - b.center[i];
                    d2 += d * d;
                }
                const double s2 = b.width * b.width;
                const double e = b.weight * std::exp(-d2 / (2 * s2));
                value += e;
                for (std::size_t i = 0; i < x.size(); ++i)
                    grad[i] -= e * (x[i] - b.center[i]) / s2;
            }
            return value;
        }
        const auto& hs = std::get<SmoothedHalfspace>(spec_);
        const double z = (dot(std::span<const double>(hs.direction), x) - hs.offset) / hs.softness;
        const double s = 1.0 / (1.0 + std::exp(-z));
        const double slope = s * (1.0 - s) / hs.softness;
        for (std::size_t i = 0; i < x.size(); ++i) grad[i] = slope * hs.direction[i];
        return s;
    }

    /// Certified upper bound on sup_x |grad f(x)|.
    double lipschitz_bound() const {
        if (const auto* lin = std::get_if<Linear>(&spec_))
            return norm(std::span<const double>(lin->direction));
        if (std::holds_alternative<SmoothNorm>(spec_)) return 1.0;
        if (const auto* rbf = std::get_if<RbfMixture>(&spec_)) {
            double bound = 0;
            for (const auto& b : rbf->bumps)
                bound += std::fabs(b.weight) * std::exp(-0.5) / b.width;
            return bound;
        }
        return 0.25 / std::get<SmoothedHalfspace>(spec_).softness;
    }

    const Spec& spec() const { return spec_; }

    std::string describe() const {
        std::ostringstream os;
        if (const auto* lin = std::get_if<Linear>(&spec_)) {
            os << "linear(dim=" << lin->direction.size() << ")";
        } else if (const auto* sn = std::get_if<SmoothNorm>(&spec_)) {
            os << "smoothnorm(eps=" << sn->epsilon << ")";
        } else if (const auto* rbf = std::get_if<RbfMixture>(&spec_)) {
            os << "rbf(" << rbf->bumps.size() << " bumps)";
        } else {
            const auto& hs = std::get<SmoothedHalfspace>(spec_);
            os << "halfspace(c=" << hs.offset << ", delta=" << hs.softness << ")";
        }
        return os.str();
    }

  private:
    Spec spec_;
    int dim_ = 0;
};

}  // namespace cup::funcs
