#include "crisp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "crisp/properties.hpp"

namespace crisp {

namespace {

std::vector<double> distinct_sorted_scores(const ScoredDataset& data) {
    std::vector<double> scores;
    scores.reserve(data.size());
    for (const auto& r : data.records()) scores.push_back(r.score);
    std::sort(scores.begin(), scores.end());
    scores.erase(std::unique(scores.begin(), scores.end()), scores.end());
    return scores;
}

/// Candidate thresholds realizing every achievable split: a sentinel below
/// the minimum (everything predicted class 1), the adjacent midpoints, and
/// the maximum itself (ties go to class 0, so everything predicted class 0).
std::vector<double> candidate_thresholds(const std::vector<double>& scores) {
    std::vector<double> ts;
    ts.reserve(scores.size() + 1);
    ts.push_back(scores.front() - 1.0);
    for (std::size_t i = 0; i + 1 < scores.size(); ++i)
        ts.push_back(scores[i] + (scores[i + 1] - scores[i]) / 2.0);
    ts.push_back(scores.back());
    return ts;
}

bool is_single_rate(MeasureId id) {
    switch (id) {
        case MeasureId::se:
        case MeasureId::sp:
        case MeasureId::pr:
        case MeasureId::fdr:
        case MeasureId::npv:
        case MeasureId::for_:
            return true;
        default:
            return false;
    }
}

}  // namespace

ThresholdCurve sweep_thresholds(const ScoredDataset& data, MeasureId id,
                                const CostParams& params) {
    ThresholdCurve curve{.measure = id, .points = {}};
    const auto scores = distinct_sorted_scores(data);
    for (const double t : candidate_thresholds(scores)) {
        const ConfusionMatrix m = build_confusion(data, t);
        curve.points.push_back({t, m, evaluate(id, m, params)});
    }
    return curve;
}

OptimalPoint optimal_threshold(const ThresholdCurve& curve) {
    const Direction dir = descriptor(curve.measure).direction;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const auto& point = curve.points[i];
        if (!point.value.is_defined()) continue;
        if (!best || strictly_better(point.value, curve.points[*best].value, dir)) best = i;
    }
    if (!best)
        throw infeasible_error("every candidate threshold yields an undefined value");
    return {curve.points[*best].t, curve.points[*best].value, *best};
}

ConstrainedResult constrained_optimum(const ScoredDataset& data, MeasureId fixed, double target,
                                      MeasureId optimize, const CostParams& params) {
    if (!is_single_rate(fixed))
        throw input_error("the fixed measure must be one of se, sp, pr, fdr, npv, for");
    const Direction fixed_dir = descriptor(fixed).direction;
    const Direction opt_dir = descriptor(optimize).direction;

    const auto scores = distinct_sorted_scores(data);
    ConstrainedResult result;
    for (const double t : candidate_thresholds(scores)) {
        const ConfusionMatrix m = build_confusion(data, t);
        const MetricValue fixed_value = evaluate(fixed, m, params);
        if (!fixed_value.is_defined()) continue;
        const bool qualifies = fixed_dir == Direction::LargerIsBetter
                                   ? fixed_value.value() >= target
                                   : fixed_value.value() <= target;
        if (!qualifies) continue;
        const MetricValue v = evaluate(optimize, m, params);
        if (!v.is_defined()) continue;
        if (!result.feasible || strictly_better(v, result.value, opt_dir)) {
            result.feasible = true;
            result.t = t;
            result.value = v;
            result.fixed_value = fixed_value;
        }
    }
    return result;
}

std::vector<ConfusionMatrix> isoeffectiveness_set(MeasureId id, std::int64_t n, double target,
                                                  double tol, const CostParams& params,
                                                  std::int64_t n_guard) {
    if (n < 1) throw input_error("isoeffectiveness set requires n >= 1");
    if (n > n_guard) {
        std::ostringstream os;
        os << "isoeffectiveness enumeration guard exceeded: n=" << n << " > " << n_guard;
        throw input_error(os.str());
    }
    if (tol < 0.0) throw input_error("tolerance must be nonnegative");

    std::vector<ConfusionMatrix> out;
    for_each_matrix_of_total(n, [&](const ConfusionMatrix& m) {
        const MetricValue v = evaluate(id, m, params);
        if (v.is_defined() && std::fabs(v.value() - target) <= tol) out.push_back(m);
    });
    return out;
}

ConfusionMatrix confusion_from_boundary(std::span<const Point2D> points,
                                        const LinearBoundary& boundary) {
    std::int64_t a = 0, b = 0, c = 0, d = 0;
    for (const auto& p : points) {
        const bool predicted_one = boundary.predicts_class1(p);
        if (p.label == 1)
            (predicted_one ? d : b) += 1;
        else
            (predicted_one ? c : a) += 1;
    }
    return ConfusionMatrix(a, b, c, d);
}

namespace {

struct BoundarySearchState {
    bool have_best = false;
    LinearBoundary best;
    MetricValue best_value = MetricValue::defined(0.0);
    std::int64_t evaluated = 0;
};

/// Evaluates one angle: projects the points, tries every midpoint offset and
/// both polarities, in ascending (offset, +1 before -1) order. Replacement is
/// on strict improvement only, so the scan order realizes the tie-break.
void scan_angle(std::span<const Point2D> points, MeasureId id, const CostParams& params,
                Direction dir, double angle, BoundarySearchState& state) {
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    std::vector<double> projections;
    projections.reserve(points.size());
    for (const auto& p : points) projections.push_back(p.x * ux + p.y * uy);
    std::sort(projections.begin(), projections.end());
    projections.erase(std::unique(projections.begin(), projections.end()), projections.end());

    std::vector<double> offsets;
    offsets.reserve(projections.size() + 1);
    offsets.push_back(projections.front() - 1.0);
    for (std::size_t i = 0; i + 1 < projections.size(); ++i)
        offsets.push_back(projections[i] + (projections[i + 1] - projections[i]) / 2.0);
    offsets.push_back(projections.back());

    auto tie_breaks_lower = [](const LinearBoundary& x, const LinearBoundary& y) {
        if (x.angle != y.angle) return x.angle < y.angle;
        if (x.offset != y.offset) return x.offset < y.offset;
        return x.polarity > y.polarity;  // +1 beats -1
    };

    for (const double offset : offsets) {
        for (const int polarity : {+1, -1}) {
            const LinearBoundary candidate{angle, offset, polarity};
            const MetricValue v =
                evaluate(id, confusion_from_boundary(points, candidate), params);
            ++state.evaluated;
            if (!v.is_defined()) continue;
            const bool take =
                !state.have_best || strictly_better(v, state.best_value, dir) ||
                (v.value() == state.best_value.value() && tie_breaks_lower(candidate, state.best));
            if (take) {
                state.have_best = true;
                state.best = candidate;
                state.best_value = v;
            }
        }
    }
}

}  // namespace

BoundaryResult fit_linear_boundary(std::span<const Point2D> points, MeasureId id,
                                   const CostParams& params, const SearchBudget& budget) {
    if (points.size() < 2) throw input_error("boundary search requires at least two points");
    bool has0 = false, has1 = false;
    for (const auto& p : points) {
        if (p.label == 0) has0 = true;
        else if (p.label == 1) has1 = true;
        else throw input_error("point labels must be 0 or 1");
    }
    if (!has0 || !has1) throw input_error("boundary search requires both labels present");
    if (budget.angles < 1 || budget.rounds < 0 || budget.refine_factor < 2)
        throw input_error("invalid search budget");

    const Direction dir = descriptor(id).direction;
    const double pi = std::acos(-1.0);

    BoundarySearchState state;
    double step = pi / static_cast<double>(budget.angles);
    for (int i = 0; i < budget.angles; ++i)
        scan_angle(points, id, params, dir, static_cast<double>(i) * step, state);

    for (int round = 0; round < budget.rounds && state.have_best; ++round) {
        const double center = state.best.angle;
        const double fine = step / static_cast<double>(budget.refine_factor);
        const double lo = std::max(0.0, center - step);
        const double hi = std::min(pi, center + step);
        for (double angle = lo; angle < hi + fine / 2.0; angle += fine)
            scan_angle(points, id, params, dir, std::min(angle, hi), state);
        step = fine;
    }

    if (!state.have_best)
        throw infeasible_error("every candidate boundary yields an undefined value");
    return {state.best, state.best_value, state.evaluated};
}

}  // namespace crisp
