#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crisp/confusion.hpp"
#include "crisp/measures.hpp"
#include "crisp/metric_value.hpp"

namespace crisp {

// ---------------------------------------------------------------------------
// Exhaustive matrix enumeration

/// Visits every matrix with a+b+c+d == n, in lexicographic (a,b,c) order.
/// There are C(n+3,3) of them.
template <typename Fn>
void for_each_matrix_of_total(std::int64_t n, Fn&& fn) {
    for (std::int64_t a = 0; a <= n; ++a)
        for (std::int64_t b = 0; a + b <= n; ++b)
            for (std::int64_t c = 0; a + b + c <= n; ++c)
                fn(ConfusionMatrix(a, b, c, n - a - b - c));
}

/// Visits every matrix with 1 <= a+b+c+d <= n_max exactly once, totals
/// ascending; C(n_max+4,4) - 1 matrices cumulatively.
template <typename Fn>
void for_each_matrix(std::int64_t n_max, Fn&& fn) {
    for (std::int64_t n = 1; n <= n_max; ++n) for_each_matrix_of_total(n, fn);
}

/// Number of matrices with total exactly n: C(n+3,3).
std::int64_t matrix_count_of_total(std::int64_t n);
/// Number of matrices with total in [1, n_max]: C(n_max+4,4) - 1.
std::int64_t matrix_count_up_to(std::int64_t n_max);

// ---------------------------------------------------------------------------
// Property checks

enum class PropertyId : std::uint8_t {
    Monotonicity,
    BoundedAbove,
    BoundedBelow,
    UnitInterval,
    ConstantBaseline,
    Complete,
    Symmetry,
    IgnoresCells,
    BalancedPrevalenceInvariant,
};

std::string_view to_string(PropertyId id);

enum class Verdict : std::uint8_t { Holds, Fails, NotMachineCheckable };

std::string_view to_string(Verdict v);

/// Per-grid-point statistics from the constant-baseline Monte Carlo.
struct BaselineGridStat {
    std::int64_t q = 0;  // predicted-class-1 count
    double mean = 0.0;
    double stddev = 0.0;
    double stderr_mean = 0.0;
    std::int64_t defined_draws = 0;
    std::int64_t skipped_draws = 0;
};

/// Outcome of one automated property check for one measure.
struct PropertyCheckResult {
    MeasureId measure = MeasureId::se;
    PropertyId property = PropertyId::Monotonicity;
    Verdict verdict = Verdict::NotMachineCheckable;

    /// Violations witnessed by matrices re-verify by re-evaluating them.
    std::optional<ConfusionMatrix> counterexample;
    std::optional<ConfusionMatrix> counterexample_pair;

    /// Completeness payload: which cells influenced the value (a,b,c,d order),
    /// populated for Complete and IgnoresCells.
    std::array<bool, 4> sensitive_cells{false, false, false, false};

    /// Bounds payload: empirical extrema over the enumeration.
    std::optional<double> observed_min;
    std::optional<double> observed_max;

    /// Constant-baseline payload.
    std::vector<BaselineGridStat> baseline_stats;

    std::string domain_note;  // enumeration bounds / trial counts / skip rates
    std::int64_t pairs_checked = 0;
    std::int64_t pairs_skipped = 0;
};

/// Shared configuration for all checks. All randomness flows from seed.
struct CheckConfig {
    std::int64_t n_max = 50;            // enumeration bound
    std::int64_t trials = 200;          // completeness sampling
    std::uint64_t seed = 0;
    std::int64_t baseline_n = 100;      // constant-baseline test-set size
    std::int64_t baseline_trials = 20000;
    double baseline_pi1 = 0.3;          // true class-1 proportion
    double tol = 1e-12;
    CostParams params{.k = 0.3, .alpha = 0.5, .theta = 1.0, .k_fraud = 10.0};
};

/// Transfer inequalities: correcting one misclassified point never worsens
/// the measure (direction-aware). Pairs with an undefined side are skipped.
PropertyCheckResult check_monotonicity(MeasureId id, const CheckConfig& cfg);

/// Empirical extrema vs the declared range; measures declared unbounded must
/// show witness values exceeding any fixed bound. Returns results for
/// BoundedAbove, BoundedBelow, UnitInterval in that order.
std::array<PropertyCheckResult, 3> check_bounds(MeasureId id, const CheckConfig& cfg);

/// Label-swap invariance: M(a,b,c,d) vs M(d,c,b,a); holds iff both sides are
/// defined and equal or both undefined, over the full enumeration.
PropertyCheckResult check_symmetry(MeasureId id, const CheckConfig& cfg);

/// Cell-influence sampling: perturb each cell by +1 on sampled matrices and
/// look for value changes. Returns {Complete, IgnoresCells}; they are
/// complements sharing the sensitive-cell data.
std::array<PropertyCheckResult, 2> check_completeness(MeasureId id, const CheckConfig& cfg);

/// Random-assignment Monte Carlo over a grid of predicted-class-1 counts;
/// holds iff all grid means agree within 3 combined standard errors.
PropertyCheckResult check_constant_baseline(MeasureId id, const CheckConfig& cfg);

/// Prevalence invariance: M(a, λb, c, λd) == M(a,b,c,d) for λ in {2,3,5}.
PropertyCheckResult check_balanced(MeasureId id, const CheckConfig& cfg);

/// Every check for one measure, ordered by PropertyId.
std::vector<PropertyCheckResult> run_checks(MeasureId id, const CheckConfig& cfg);

/// Every check for the given measures (all 28 when empty), ordered by
/// (measure, property).
std::vector<PropertyCheckResult> run_all_checks(const std::vector<MeasureId>& measures,
                                                const CheckConfig& cfg);

// ---------------------------------------------------------------------------
// Reference-table reconciliation

/// The reference-table columns subject to reconciliation.
enum class ReferenceColumn : std::uint8_t {
    Costs, Complete, Symmetry, Meaning, Balanced, IgnoresCells,
};

std::string_view to_string(ReferenceColumn col);

inline constexpr std::array<ReferenceColumn, 6> kReferenceColumns = {
    ReferenceColumn::Costs,    ReferenceColumn::Complete, ReferenceColumn::Symmetry,
    ReferenceColumn::Meaning,  ReferenceColumn::Balanced, ReferenceColumn::IgnoresCells,
};

/// A cell where the behavioral check provably cannot reproduce the claimed
/// flag: the claimed flag contradicts the measure's own formula. These ship
/// as reference data and are surfaced, never suppressed.
struct ExpectedDiscrepancy {
    MeasureId measure;
    ReferenceColumn column;
    bool claimed;            // the transcribed flag
    Verdict checked;         // what the honest check finds
    std::string_view note;
};

const std::vector<ExpectedDiscrepancy>& expected_discrepancies();

struct ReconciliationCell {
    MeasureId measure = MeasureId::se;
    ReferenceColumn column = ReferenceColumn::Costs;
    bool claimed = false;
    bool machine_checkable = true;
    Verdict checked = Verdict::NotMachineCheckable;
    bool agree = false;               // meaningful only when machine_checkable
    bool expected_discrepancy = false;
    std::string note;
};

struct ReconciliationReport {
    std::vector<ReconciliationCell> cells;  // sorted by (measure, column)

    /// Disagreeing machine-checkable cells not on the expected list, plus
    /// expected discrepancies that failed to materialize as documented.
    std::vector<ReconciliationCell> unexpected() const;

    /// Ignore-cells == NOT Complete for every row, on claimed flags and on
    /// checked verdicts.
    bool complement_identity_claimed = false;
    bool complement_identity_checked = false;
};

/// Builds the per-cell agreement grid from check results. When require_full
/// is set, missing (measure, property) results for any reference-table row
/// raise input_error listing the gaps; otherwise the grid covers whatever
/// results are present.
ReconciliationReport reconcile_reference_flags(const std::vector<PropertyCheckResult>& results,
                                      bool require_full = true,
                                      bool use_expected_list = true);

}  // namespace crisp
