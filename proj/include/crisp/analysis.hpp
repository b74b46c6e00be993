#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crisp/confusion.hpp"
#include "crisp/measures.hpp"

namespace crisp {

/// One evaluated candidate threshold: the split it induces and the measure
/// value there.
struct CurvePoint {
    double t = 0.0;
    ConfusionMatrix matrix{0, 0, 0, 1};
    MetricValue value = MetricValue::defined(0.0);
};

/// A measure evaluated at every achievable split of a dataset, thresholds
/// strictly increasing: one point per adjacent distinct-score midpoint plus
/// the two outer sentinels (all-class-1 and all-class-0).
struct ThresholdCurve {
    MeasureId measure = MeasureId::se;
    std::vector<CurvePoint> points;
};

ThresholdCurve sweep_thresholds(const ScoredDataset& data, MeasureId id,
                                const CostParams& params = {});

struct OptimalPoint {
    double t = 0.0;
    MetricValue value = MetricValue::defined(0.0);
    std::size_t index = 0;  // position in the curve
};

/// Best defined point under the measure's direction; ties break toward the
/// smaller threshold. Throws infeasible_error when every point is undefined.
OptimalPoint optimal_threshold(const ThresholdCurve& curve);

struct ConstrainedResult {
    bool feasible = false;
    double t = 0.0;
    MetricValue value = MetricValue::defined(0.0);
    MetricValue fixed_value = MetricValue::defined(0.0);
};

/// Best value of `optimize` among thresholds where the fixed single-rate
/// measure meets its target (>= for larger-is-better fixed measures, <=
/// otherwise). Infeasibility is a result, not an error.
ConstrainedResult constrained_optimum(const ScoredDataset& data, MeasureId fixed,
                                      double target, MeasureId optimize,
                                      const CostParams& params = {});

/// All matrices with total n whose defined value lies within tol of target.
/// n is guarded (default limit 200) because the simplex has C(n+3,3) members.
std::vector<ConfusionMatrix> isoeffectiveness_set(MeasureId id, std::int64_t n, double target,
                                                  double tol, const CostParams& params = {},
                                                  std::int64_t n_guard = 200);

/// A labelled 2-D feature point.
struct Point2D {
    double x = 0.0;
    double y = 0.0;
    int label = 0;
};

/// Oriented line in normal form. With polarity +1, points whose projection
/// x*cos(angle) + y*sin(angle) exceeds offset are predicted class 1; polarity
/// -1 flips the predicted side. Ties go to the non-exceeding side.
struct LinearBoundary {
    double angle = 0.0;  // radians in [0, pi)
    double offset = 0.0;
    int polarity = 1;

    bool predicts_class1(const Point2D& p) const {
        const bool above = p.x * std::cos(angle) + p.y * std::sin(angle) > offset;
        return polarity > 0 ? above : !above;
    }
};

ConfusionMatrix confusion_from_boundary(std::span<const Point2D> points,
                                        const LinearBoundary& boundary);

/// Grid-search budget: base angular resolution and refinement schedule.
struct SearchBudget {
    int angles = 360;
    int rounds = 2;
    int refine_factor = 10;
};

struct BoundaryResult {
    LinearBoundary boundary;
    MetricValue value = MetricValue::defined(0.0);
    std::int64_t candidates_evaluated = 0;
};

/// Coarse-to-fine deterministic grid search over (angle, offset, polarity).
/// The crisp objective is piecewise constant, so offsets are projected-point
/// midpoints plus sentinels. Tie-break: lowest angle, lowest offset, then
/// positive polarity. Throws input_error unless both labels are present.
BoundaryResult fit_linear_boundary(std::span<const Point2D> points, MeasureId id,
                                   const CostParams& params = {},
                                   const SearchBudget& budget = {});

}  // namespace crisp
