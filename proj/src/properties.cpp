#include "crisp/properties.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "crisp/rng.hpp"

namespace crisp {

namespace {

std::string note_counts(std::int64_t n_max, std::int64_t checked, std::int64_t skipped) {
    std::ostringstream out;
    out << "enumeration n<=" << n_max << "; pairs checked=" << checked
        << ", skipped (undefined)=" << skipped;
    return out.str();
}

/// v2 is at least as good as v1 under dir, with float slack.
bool no_worse(double v2, double v1, Direction dir, double tol) {
    return dir == Direction::LargerIsBetter ? v2 >= v1 - tol : v2 <= v1 + tol;
}

}  // namespace

std::string_view to_string(PropertyId id) {
    switch (id) {
        case PropertyId::Monotonicity: return "monotonicity";
        case PropertyId::BoundedAbove: return "bounded_above";
        case PropertyId::BoundedBelow: return "bounded_below";
        case PropertyId::UnitInterval: return "unit_interval";
        case PropertyId::ConstantBaseline: return "constant_baseline";
        case PropertyId::Complete: return "complete";
        case PropertyId::Symmetry: return "symmetry";
        case PropertyId::IgnoresCells: return "ignores_cells";
        case PropertyId::BalancedPrevalenceInvariant: return "balanced";
    }
    return "unknown";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::NotMachineCheckable: return "not_machine_checkable";
    }
    return "unknown";
}

std::string_view to_string(ReferenceColumn col) {
    switch (col) {
        case ReferenceColumn::Costs: return "costs";
        case ReferenceColumn::Complete: return "complete";
        case ReferenceColumn::Symmetry: return "symmetry";
        case ReferenceColumn::Meaning: return "meaning";
        case ReferenceColumn::Balanced: return "balanced";
        case ReferenceColumn::IgnoresCells: return "ignores_cells";
    }
    return "unknown";
}

std::int64_t matrix_count_of_total(std::int64_t n) {
    return (n + 1) * (n + 2) * (n + 3) / 6;
}

std::int64_t matrix_count_up_to(std::int64_t n_max) {
    return (n_max + 1) * (n_max + 2) * (n_max + 3) * (n_max + 4) / 24 - 1;
}

PropertyCheckResult check_monotonicity(MeasureId id, const CheckConfig& cfg) {
    PropertyCheckResult r;
    r.measure = id;
    r.property = PropertyId::Monotonicity;
    r.verdict = Verdict::Holds;
    const Direction dir = descriptor(id).direction;

    auto try_pair = [&](const ConfusionMatrix& m, const MetricValue& v1,
                        const ConfusionMatrix& improved) {
        const MetricValue v2 = evaluate(id, improved, cfg.params);
        if (!v1.is_defined() || !v2.is_defined()) {
            ++r.pairs_skipped;
            return;
        }
        ++r.pairs_checked;
        if (r.verdict == Verdict::Holds && !no_worse(v2.value(), v1.value(), dir, cfg.tol)) {
            r.verdict = Verdict::Fails;
            r.counterexample = m;
            r.counterexample_pair = improved;
        }
    };

    for_each_matrix(cfg.n_max, [&](const ConfusionMatrix& m) {
        const MetricValue v1 = evaluate(id, m, cfg.params);
        if (m.c() >= 1)
            try_pair(m, v1, ConfusionMatrix(m.a() + 1, m.b(), m.c() - 1, m.d()));
        if (m.b() >= 1)
            try_pair(m, v1, ConfusionMatrix(m.a(), m.b() - 1, m.c(), m.d() + 1));
    });
    r.domain_note = note_counts(cfg.n_max, r.pairs_checked, r.pairs_skipped);
    return r;
}

std::array<PropertyCheckResult, 3> check_bounds(MeasureId id, const CheckConfig& cfg) {
    const auto& desc = descriptor(id);

    double observed_min = 0.0, observed_max = 0.0;
    bool any_defined = false;
    std::optional<ConfusionMatrix> argmin, argmax;
    std::int64_t defined_count = 0, undefined_count = 0;

    for_each_matrix(cfg.n_max, [&](const ConfusionMatrix& m) {
        const MetricValue v = evaluate(id, m, cfg.params);
        if (!v.is_defined()) {
            ++undefined_count;
            return;
        }
        ++defined_count;
        if (!any_defined || v.value() < observed_min) { observed_min = v.value(); argmin = m; }
        if (!any_defined || v.value() > observed_max) { observed_max = v.value(); argmax = m; }
        any_defined = true;
    });

    // Declared-unbounded measures must exhibit growth along witness families.
    double witness_max = 0.0;
    std::optional<ConfusionMatrix> witness_arg;
    if (!desc.upper_bound.has_value()) {
        for (std::int64_t k = 4; k <= (1 << 20); k *= 4) {
            const ConfusionMatrix candidates[] = {
                ConfusionMatrix(k, 1, 1, k), ConfusionMatrix(1, k, k, 1),
                ConfusionMatrix(1, k, 1, 1), ConfusionMatrix(1, 1, k, k)};
            for (const auto& w : candidates) {
                const MetricValue v = evaluate(id, w, cfg.params);
                if (v.is_defined() && v.value() > witness_max) {
                    witness_max = v.value();
                    witness_arg = w;
                }
            }
        }
    }

    auto base = [&](PropertyId prop) {
        PropertyCheckResult r;
        r.measure = id;
        r.property = prop;
        r.observed_min = any_defined ? std::optional<double>(observed_min) : std::nullopt;
        r.observed_max = any_defined ? std::optional<double>(observed_max) : std::nullopt;
        r.pairs_checked = defined_count;
        r.pairs_skipped = undefined_count;
        return r;
    };

    PropertyCheckResult above = base(PropertyId::BoundedAbove);
    if (desc.upper_bound.has_value()) {
        above.verdict = (!any_defined || observed_max <= *desc.upper_bound + cfg.tol)
                            ? Verdict::Holds
                            : Verdict::Fails;
        if (above.verdict == Verdict::Fails) above.counterexample = argmax;
        std::ostringstream note;
        note << "declared upper bound " << *desc.upper_bound << "; observed max "
             << (any_defined ? observed_max : 0.0);
        above.domain_note = note.str();
    } else if (witness_max > 1e6) {
        above.verdict = Verdict::Fails;  // genuinely unbounded above
        above.counterexample = witness_arg;
        std::ostringstream note;
        note << "declared unbounded; witness value " << witness_max << " at "
             << to_string(*witness_arg);
        above.domain_note = note.str();
    } else {
        above.verdict = Verdict::NotMachineCheckable;
        above.domain_note = "declared unbounded but witness families show no growth";
    }

    PropertyCheckResult below = base(PropertyId::BoundedBelow);
    if (desc.lower_bound.has_value()) {
        below.verdict = (!any_defined || observed_min >= *desc.lower_bound - cfg.tol)
                            ? Verdict::Holds
                            : Verdict::Fails;
        if (below.verdict == Verdict::Fails) below.counterexample = argmin;
        std::ostringstream note;
        note << "declared lower bound " << *desc.lower_bound << "; observed min "
             << (any_defined ? observed_min : 0.0);
        below.domain_note = note.str();
    } else {
        below.verdict = Verdict::NotMachineCheckable;
        below.domain_note = "no declared lower bound";
    }

    PropertyCheckResult unit = base(PropertyId::UnitInterval);
    const bool declared_unit = desc.lower_bound == 0.0 && desc.upper_bound == 1.0;
    if (declared_unit && above.verdict == Verdict::Holds && below.verdict == Verdict::Holds) {
        unit.verdict = Verdict::Holds;
        unit.domain_note = "declared range [0,1]; " + above.domain_note;
    } else {
        unit.verdict = Verdict::Fails;
        unit.counterexample = any_defined && observed_min < -cfg.tol ? argmin
                              : (!desc.upper_bound.has_value() ? witness_arg : argmax);
        std::ostringstream note;
        note << "not confined to [0,1]; declared ["
             << (desc.lower_bound ? std::to_string(*desc.lower_bound) : std::string("-inf"))
             << ","
             << (desc.upper_bound ? std::to_string(*desc.upper_bound) : std::string("+inf"))
             << "]";
        unit.domain_note = note.str();
    }

    return {above, below, unit};
}

PropertyCheckResult check_symmetry(MeasureId id, const CheckConfig& cfg) {
    PropertyCheckResult r;
    r.measure = id;
    r.property = PropertyId::Symmetry;
    r.verdict = Verdict::Holds;
    for_each_matrix(cfg.n_max, [&](const ConfusionMatrix& m) {
        const ConfusionMatrix swapped = m.label_swapped();
        const MetricValue v1 = evaluate(id, m, cfg.params);
        const MetricValue v2 = evaluate(id, swapped, cfg.params);
        ++r.pairs_checked;
        bool symmetric;
        if (v1.is_defined() != v2.is_defined())
            symmetric = false;  // one-sided undefinedness breaks the swap identity
        else
            symmetric = !v1.is_defined() || std::fabs(v1.value() - v2.value()) <= cfg.tol;
        if (!symmetric && r.verdict == Verdict::Holds) {
            r.verdict = Verdict::Fails;
            r.counterexample = m;
            r.counterexample_pair = swapped;
        }
    });
    r.domain_note = note_counts(cfg.n_max, r.pairs_checked, r.pairs_skipped);
    return r;
}

std::array<PropertyCheckResult, 2> check_completeness(MeasureId id, const CheckConfig& cfg) {
    std::mt19937_64 rng(mix_seed(cfg.seed, 0xC0115ULL + static_cast<std::uint64_t>(id)));
    std::array<bool, 4> sensitive{false, false, false, false};
    std::int64_t checked = 0, skipped = 0;

    auto draw_cell = [&rng]() -> std::int64_t {
        const auto u = bounded(rng, 50);
        return u < 8 ? 0 : static_cast<std::int64_t>(u - 8);
    };

    for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
        std::int64_t cells[4];
        do {
            for (auto& cell : cells) cell = draw_cell();
        } while (cells[0] + cells[1] + cells[2] + cells[3] == 0);
        const ConfusionMatrix m(cells[0], cells[1], cells[2], cells[3]);
        const MetricValue v1 = evaluate(id, m, cfg.params);
        for (int i = 0; i < 4; ++i) {
            std::int64_t perturbed[4] = {cells[0], cells[1], cells[2], cells[3]};
            perturbed[i] += 1;
            const ConfusionMatrix m2(perturbed[0], perturbed[1], perturbed[2], perturbed[3]);
            const MetricValue v2 = evaluate(id, m2, cfg.params);
            if (!v1.is_defined() || !v2.is_defined()) {
                ++skipped;
                continue;
            }
            ++checked;
            if (std::fabs(v1.value() - v2.value()) > cfg.tol) sensitive[i] = true;
        }
    }

    const bool all_sensitive = sensitive[0] && sensitive[1] && sensitive[2] && sensitive[3];
    std::ostringstream note;
    note << "trials=" << cfg.trials << ", perturbations checked=" << checked
         << ", skipped=" << skipped << "; insensitive cells: {";
    const char* names = "abcd";
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        if (sensitive[i]) continue;
        if (!first) note << ",";
        note << names[i];
        first = false;
    }
    note << "}";

    PropertyCheckResult complete;
    complete.measure = id;
    complete.property = PropertyId::Complete;
    complete.verdict = all_sensitive ? Verdict::Holds : Verdict::Fails;
    complete.sensitive_cells = sensitive;
    complete.pairs_checked = checked;
    complete.pairs_skipped = skipped;
    complete.domain_note = note.str();

    PropertyCheckResult ignores = complete;
    ignores.property = PropertyId::IgnoresCells;
    ignores.verdict = all_sensitive ? Verdict::Fails : Verdict::Holds;
    return {complete, ignores};
}

namespace {

std::vector<std::int64_t> baseline_grid(std::int64_t n) {
    std::vector<std::int64_t> grid = {1,           n / 20,      n / 10,
                                      n / 4,       n / 2,       3 * n / 4,
                                      n - n / 10,  n - n / 20,  n - 1};
    for (auto& q : grid) q = std::clamp<std::int64_t>(q, 1, n - 1);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

/// Shared Monte Carlo pass: draws depend only on (seed, grid point), so every
/// measure sees identical random assignments.
std::vector<PropertyCheckResult> constant_baseline_multi(const std::vector<MeasureId>& measures,
                                                         const CheckConfig& cfg) {
    const std::int64_t n = cfg.baseline_n;
    const auto m1 = static_cast<std::int64_t>(std::llround(cfg.baseline_pi1 * static_cast<double>(n)));
    if (n < 20) throw input_error("constant-baseline check requires n >= 20");
    if (cfg.baseline_trials < 10000)
        throw input_error("constant-baseline check requires at least 10000 trials");
    if (m1 < 1 || m1 > n - 1)
        throw input_error("constant-baseline class split leaves a class empty");

    const auto grid = baseline_grid(n);

    struct Welford {
        std::int64_t count = 0;
        double mean = 0.0;
        double m2 = 0.0;
        std::int64_t skipped = 0;
        void add(double x) {
            ++count;
            const double delta = x - mean;
            mean += delta / static_cast<double>(count);
            m2 += delta * (x - mean);
        }
    };
    // stats[measure][grid point]
    std::vector<std::vector<Welford>> stats(measures.size(), std::vector<Welford>(grid.size()));

    std::vector<int> predicted(static_cast<std::size_t>(n));
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const std::int64_t q = grid[gi];
        std::mt19937_64 rng(mix_seed(cfg.seed, 0xBA5E11E0ULL + static_cast<std::uint64_t>(q)));
        std::fill(predicted.begin(), predicted.end(), 0);
        std::fill(predicted.begin(), predicted.begin() + static_cast<std::ptrdiff_t>(q), 1);
        for (std::int64_t trial = 0; trial < cfg.baseline_trials; ++trial) {
            deterministic_shuffle(predicted, rng);
            // truth vector: first n-m1 zeros, then m1 ones
            std::int64_t d = 0;
            for (std::int64_t i = n - m1; i < n; ++i) d += predicted[static_cast<std::size_t>(i)];
            const std::int64_t b = m1 - d;
            const std::int64_t c = q - d;
            const std::int64_t a = (n - m1) - c;
            const ConfusionMatrix m(a, b, c, d);
            for (std::size_t mi = 0; mi < measures.size(); ++mi) {
                const MetricValue v = evaluate(measures[mi], m, cfg.params);
                if (v.is_defined())
                    stats[mi][gi].add(v.value());
                else
                    ++stats[mi][gi].skipped;
            }
        }
    }

    std::vector<PropertyCheckResult> results;
    results.reserve(measures.size());
    for (std::size_t mi = 0; mi < measures.size(); ++mi) {
        PropertyCheckResult r;
        r.measure = measures[mi];
        r.property = PropertyId::ConstantBaseline;
        r.verdict = Verdict::Holds;
        for (std::size_t gi = 0; gi < grid.size(); ++gi) {
            const auto& w = stats[mi][gi];
            BaselineGridStat stat;
            stat.q = grid[gi];
            stat.defined_draws = w.count;
            stat.skipped_draws = w.skipped;
            if (w.count >= 2) {
                stat.mean = w.mean;
                stat.stddev = std::sqrt(w.m2 / static_cast<double>(w.count - 1));
                stat.stderr_mean = stat.stddev / std::sqrt(static_cast<double>(w.count));
            }
            r.baseline_stats.push_back(stat);
        }
        // All grid means must agree within 3 combined standard errors.
        std::string offending;
        for (std::size_t i = 0; i < r.baseline_stats.size() && offending.empty(); ++i) {
            for (std::size_t k = i + 1; k < r.baseline_stats.size(); ++k) {
                const auto& x = r.baseline_stats[i];
                const auto& y = r.baseline_stats[k];
                if (x.defined_draws < 2 || y.defined_draws < 2) continue;
                const double gap = std::fabs(x.mean - y.mean);
                const double band =
                    3.0 * std::sqrt(x.stderr_mean * x.stderr_mean + y.stderr_mean * y.stderr_mean);
                if (gap > band) {
                    r.verdict = Verdict::Fails;
                    std::ostringstream os;
                    os << "means differ: q=" << x.q << " mean=" << x.mean << " vs q=" << y.q
                       << " mean=" << y.mean;
                    offending = os.str();
                    break;
                }
            }
        }
        std::ostringstream note;
        note << "n=" << n << ", pi1=" << cfg.baseline_pi1 << ", trials=" << cfg.baseline_trials
             << ", grid points=" << grid.size();
        std::int64_t total_skipped = 0;
        for (const auto& s : r.baseline_stats) total_skipped += s.skipped_draws;
        if (total_skipped > 0) note << ", skipped draws=" << total_skipped;
        if (!offending.empty()) note << "; " << offending;
        r.domain_note = note.str();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace

PropertyCheckResult check_constant_baseline(MeasureId id, const CheckConfig& cfg) {
    return constant_baseline_multi({id}, cfg)[0];
}

PropertyCheckResult check_balanced(MeasureId id, const CheckConfig& cfg) {
    PropertyCheckResult r;
    r.measure = id;
    r.property = PropertyId::BalancedPrevalenceInvariant;
    r.verdict = Verdict::Holds;
    static constexpr std::int64_t kLambdas[] = {2, 3, 5};
    for_each_matrix(cfg.n_max, [&](const ConfusionMatrix& m) {
        const MetricValue v1 = evaluate(id, m, cfg.params);
        for (const auto lambda : kLambdas) {
            const ConfusionMatrix scaled(m.a(), lambda * m.b(), m.c(), lambda * m.d());
            const MetricValue v2 = evaluate(id, scaled, cfg.params);
            if (v1.is_defined() != v2.is_defined()) {
                ++r.pairs_skipped;
                continue;
            }
            ++r.pairs_checked;
            if (v1.is_defined() && std::fabs(v1.value() - v2.value()) > cfg.tol &&
                r.verdict == Verdict::Holds) {
                r.verdict = Verdict::Fails;
                r.counterexample = m;
                r.counterexample_pair = scaled;
            }
        }
    });
    r.domain_note = note_counts(cfg.n_max, r.pairs_checked, r.pairs_skipped) +
                    "; lambda in {2,3,5}";
    return r;
}

std::vector<PropertyCheckResult> run_checks(MeasureId id, const CheckConfig& cfg) {
    std::vector<PropertyCheckResult> out;
    out.push_back(check_monotonicity(id, cfg));
    const auto bounds = check_bounds(id, cfg);
    out.insert(out.end(), bounds.begin(), bounds.end());
    out.push_back(check_constant_baseline(id, cfg));
    const auto completeness = check_completeness(id, cfg);
    out.push_back(completeness[0]);
    out.push_back(check_symmetry(id, cfg));
    out.push_back(completeness[1]);
    out.push_back(check_balanced(id, cfg));
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.property < y.property;
    });
    return out;
}

std::vector<PropertyCheckResult> run_all_checks(const std::vector<MeasureId>& measures,
                                                const CheckConfig& cfg) {
    std::vector<MeasureId> ids = measures;
    if (ids.empty()) ids.assign(all_measure_ids().begin(), all_measure_ids().end());

    // Constant baseline shares its Monte Carlo draws across measures.
    const auto baseline = constant_baseline_multi(ids, cfg);

    std::vector<PropertyCheckResult> out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const MeasureId id = ids[i];
        std::vector<PropertyCheckResult> per;
        per.push_back(check_monotonicity(id, cfg));
        const auto bounds = check_bounds(id, cfg);
        per.insert(per.end(), bounds.begin(), bounds.end());
        per.push_back(baseline[i]);
        const auto completeness = check_completeness(id, cfg);
        per.push_back(completeness[0]);
        per.push_back(check_symmetry(id, cfg));
        per.push_back(completeness[1]);
        per.push_back(check_balanced(id, cfg));
        std::sort(per.begin(), per.end(), [](const auto& x, const auto& y) {
            return x.property < y.property;
        });
        out.insert(out.end(), per.begin(), per.end());
    }
    return out;
}

const std::vector<ExpectedDiscrepancy>& expected_discrepancies() {
    // Reference-table cells that contradict the measures' own formulas; the
    // behavioral checks reproduce the formulas, so these cells can never
    // agree. Shipped as data, surfaced in every report.
    static const std::vector<ExpectedDiscrepancy> list = {
        {MeasureId::bacc, ReferenceColumn::Symmetry, false, Verdict::Holds,
         "0.5*(Se+Sp) is invariant under the label swap, which exchanges Se and Sp"},
        {MeasureId::gacc, ReferenceColumn::Symmetry, false, Verdict::Holds,
         "sqrt(Se*Sp) is invariant under the label swap"},
        {MeasureId::j, ReferenceColumn::Symmetry, false, Verdict::Holds,
         "Se+Sp-1 is invariant under the label swap"},
        {MeasureId::mar, ReferenceColumn::Symmetry, false, Verdict::Holds,
         "Pr+NPV-1 is invariant under the label swap, which exchanges Pr and NPV"},
        {MeasureId::mcc, ReferenceColumn::Symmetry, false, Verdict::Holds,
         "(ad-bc)/sqrt(margin product) is invariant under the label swap"},
        {MeasureId::dor, ReferenceColumn::Symmetry, false, Verdict::Holds,
         "ad/(bc) is invariant under the label swap"},
        {MeasureId::fm, ReferenceColumn::Complete, true, Verdict::Fails,
         "sqrt(Se*Pr) uses only cells b, c, d; cell a never influences it"},
        {MeasureId::fm, ReferenceColumn::IgnoresCells, false, Verdict::Holds,
         "sqrt(Se*Pr) ignores cell a, exactly like F1"},
        {MeasureId::fs, ReferenceColumn::Complete, false, Verdict::Holds,
         "the four-rate harmonic mean depends on every cell (Sp and NPV involve a)"},
        {MeasureId::fs, ReferenceColumn::IgnoresCells, true, Verdict::Fails,
         "no cell is ignored by the four-rate harmonic mean"},
        {MeasureId::fa, ReferenceColumn::Complete, false, Verdict::Holds,
         "the averaged F pair depends on every cell"},
        {MeasureId::fa, ReferenceColumn::IgnoresCells, true, Verdict::Fails,
         "no cell is ignored by the averaged F pair"},
        {MeasureId::se, ReferenceColumn::Balanced, false, Verdict::Holds,
         "d/(b+d) is a within-class rate; scaling class 1 cancels"},
        {MeasureId::sp, ReferenceColumn::Balanced, false, Verdict::Holds,
         "a/(a+c) does not involve class-1 cells at all"},
        {MeasureId::gacc, ReferenceColumn::Balanced, false, Verdict::Holds,
         "a function of Se and Sp only; prevalence-invariant like BACC"},
        {MeasureId::plr, ReferenceColumn::Balanced, false, Verdict::Holds,
         "Se/(1-Sp) is a function of within-class rates only"},
        {MeasureId::nlr, ReferenceColumn::Balanced, false, Verdict::Holds,
         "(1-Se)/Sp is a function of within-class rates only"},
        {MeasureId::dor, ReferenceColumn::Balanced, false, Verdict::Holds,
         "ad/(bc) is invariant: the class-1 scale factor cancels"},
        {MeasureId::mar, ReferenceColumn::Balanced, true, Verdict::Fails,
         "Pr and NPV shift with prevalence; e.g. (3,1,1,1) changes under lambda=2"},
    };
    return list;
}

namespace {

std::optional<PropertyId> column_property(ReferenceColumn col) {
    switch (col) {
        case ReferenceColumn::Complete: return PropertyId::Complete;
        case ReferenceColumn::Symmetry: return PropertyId::Symmetry;
        case ReferenceColumn::Balanced: return PropertyId::BalancedPrevalenceInvariant;
        case ReferenceColumn::IgnoresCells: return PropertyId::IgnoresCells;
        case ReferenceColumn::Costs:
        case ReferenceColumn::Meaning: return std::nullopt;
    }
    return std::nullopt;
}

bool claimed_flag(const ReferenceFlags& flags, ReferenceColumn col) {
    switch (col) {
        case ReferenceColumn::Costs: return flags.costs;
        case ReferenceColumn::Complete: return flags.complete;
        case ReferenceColumn::Symmetry: return flags.symmetry;
        case ReferenceColumn::Meaning: return flags.meaning;
        case ReferenceColumn::Balanced: return flags.balanced;
        case ReferenceColumn::IgnoresCells: return flags.ignores_cells;
    }
    return false;
}

}  // namespace

std::vector<ReconciliationCell> ReconciliationReport::unexpected() const {
    std::vector<ReconciliationCell> out;
    for (const auto& cell : cells) {
        if (!cell.machine_checkable) continue;
        const bool flagged = (!cell.agree && !cell.expected_discrepancy) ||
                             (cell.agree && cell.expected_discrepancy);
        if (flagged) out.push_back(cell);
    }
    return out;
}

ReconciliationReport reconcile_reference_flags(const std::vector<PropertyCheckResult>& results,
                                      bool require_full, bool use_expected_list) {
    std::map<std::pair<MeasureId, PropertyId>, const PropertyCheckResult*> index;
    for (const auto& r : results) index[{r.measure, r.property}] = &r;

    ReconciliationReport report;
    report.complement_identity_claimed = true;
    report.complement_identity_checked = true;
    std::vector<std::string> gaps;

    std::map<MeasureId, bool> has_any_result;
    for (const auto& r : results) has_any_result[r.measure] = true;

    for (const auto& desc : all_measures()) {
        if (!desc.claimed.has_value()) continue;  // t1, pev: outside the reference table
        if (!require_full && !has_any_result[desc.id]) continue;
        const auto& flags = *desc.claimed;

        if (flags.ignores_cells != !flags.complete) report.complement_identity_claimed = false;

        const PropertyCheckResult* complete_check = nullptr;
        const PropertyCheckResult* ignores_check = nullptr;

        for (const auto col : kReferenceColumns) {
            ReconciliationCell cell;
            cell.measure = desc.id;
            cell.column = col;
            cell.claimed = claimed_flag(flags, col);

            const auto prop = column_property(col);
            if (!prop.has_value()) {
                cell.machine_checkable = false;
                cell.checked = Verdict::NotMachineCheckable;
                cell.note = "conceptual flag carried as descriptor metadata";
                report.cells.push_back(std::move(cell));
                continue;
            }

            const auto it = index.find({desc.id, *prop});
            if (it == index.end()) {
                if (require_full) {
                    gaps.push_back(std::string(desc.cli_id) + "/" +
                                   std::string(to_string(col)));
                }
                continue;
            }
            const PropertyCheckResult& check = *it->second;
            if (*prop == PropertyId::Complete) complete_check = &check;
            if (*prop == PropertyId::IgnoresCells) ignores_check = &check;

            cell.checked = check.verdict;
            cell.agree = (check.verdict == Verdict::Holds) == cell.claimed;
            if (use_expected_list) {
                for (const auto& exp : expected_discrepancies()) {
                    if (exp.measure == desc.id && exp.column == col &&
                        exp.claimed == cell.claimed && exp.checked == check.verdict) {
                        cell.expected_discrepancy = true;
                        cell.note = std::string(exp.note);
                        break;
                    }
                }
            }
            if (cell.note.empty()) cell.note = check.domain_note;
            report.cells.push_back(std::move(cell));
        }

        if (complete_check && ignores_check) {
            const bool complete_holds = complete_check->verdict == Verdict::Holds;
            const bool ignores_holds = ignores_check->verdict == Verdict::Holds;
            if (ignores_holds != !complete_holds) report.complement_identity_checked = false;
        }
    }

    if (require_full && !gaps.empty()) {
        std::ostringstream os;
        os << "reconciliation is missing check results for:";
        for (const auto& g : gaps) os << " " << g;
        throw input_error(os.str());
    }
    return report;
}

}  // namespace crisp
