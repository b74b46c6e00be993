#include "crisp/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace crisp {

namespace {

void validate_same_instances(const std::vector<ClassifierScores>& classifiers) {
    const auto& reference = classifiers.front();
    for (std::size_t i = 1; i < classifiers.size(); ++i) {
        const auto& other = classifiers[i];
        if (other.data.size() != reference.data.size())
            throw input_error("classifier '" + other.name + "' has " +
                              std::to_string(other.data.size()) + " records but '" +
                              reference.name + "' has " +
                              std::to_string(reference.data.size()));
        for (std::size_t r = 0; r < reference.data.size(); ++r) {
            const auto& x = reference.data.records()[r];
            const auto& y = other.data.records()[r];
            if (x.id.has_value() && y.id.has_value() && *x.id != *y.id)
                throw input_error("instance id mismatch at record " + std::to_string(r) +
                                  ": '" + *x.id + "' vs '" + *y.id + "'");
            if (x.label != y.label)
                throw input_error("true-label mismatch at record " + std::to_string(r) +
                                  " between '" + reference.name + "' and '" + other.name + "'");
        }
    }
}

}  // namespace

std::vector<int> rank_column(std::span<const MetricValue> values, Direction dir) {
    const std::size_t k = values.size();
    std::vector<std::size_t> order(k);
    for (std::size_t i = 0; i < k; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return strictly_better(values[x], values[y], dir);
    });

    std::vector<int> ranks(k, 0);
    std::size_t pos = 0;
    while (pos < k) {
        std::size_t end = pos + 1;
        auto tied = [&](std::size_t x, std::size_t y) {
            const auto& vx = values[x];
            const auto& vy = values[y];
            if (vx.is_defined() != vy.is_defined()) return false;
            return !vx.is_defined() || vx.value() == vy.value();
        };
        while (end < k && tied(order[pos], order[end])) ++end;
        for (std::size_t i = pos; i < end; ++i)
            ranks[order[i]] = static_cast<int>(pos) + 1;  // min-tie rank
        pos = end;
    }
    return ranks;
}

RankTable rank_classifiers(const std::vector<ClassifierScores>& classifiers,
                           const std::vector<MeasureId>& measures, const CostParams& params) {
    if (classifiers.size() < 2)
        throw input_error("ranking requires at least two classifiers");
    if (measures.empty()) throw input_error("ranking requires at least one measure");
    validate_same_instances(classifiers);

    RankTable table;
    table.measures = measures;
    for (const auto& c : classifiers) table.classifiers.push_back(c.name);

    table.values.resize(classifiers.size());
    for (std::size_t ci = 0; ci < classifiers.size(); ++ci) {
        const ConfusionMatrix m =
            build_confusion(classifiers[ci].data, classifiers[ci].threshold);
        for (const MeasureId id : measures)
            table.values[ci].push_back(evaluate(id, m, params));
    }

    table.ranks.assign(classifiers.size(), std::vector<int>(measures.size(), 0));
    std::vector<MetricValue> column;
    for (std::size_t mi = 0; mi < measures.size(); ++mi) {
        column.clear();
        for (std::size_t ci = 0; ci < classifiers.size(); ++ci)
            column.push_back(table.values[ci][mi]);
        const auto ranks = rank_column(column, descriptor(measures[mi]).direction);
        for (std::size_t ci = 0; ci < classifiers.size(); ++ci)
            table.ranks[ci][mi] = ranks[ci];
    }
    return table;
}

double kendall_tau_b(std::span<const int> x, std::span<const int> y) {
    if (x.size() != y.size()) throw input_error("kendall_tau_b: length mismatch");
    const std::size_t k = x.size();
    std::int64_t concordant = 0, discordant = 0, ties_x = 0, ties_y = 0, pairs = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            ++pairs;
            const int dx = x[i] == x[j] ? 0 : (x[i] < x[j] ? -1 : 1);
            const int dy = y[i] == y[j] ? 0 : (y[i] < y[j] ? -1 : 1);
            if (dx == 0) ++ties_x;
            if (dy == 0) ++ties_y;
            if (dx != 0 && dy != 0) (dx == dy ? concordant : discordant) += 1;
        }
    }
    const double denom_x = static_cast<double>(pairs - ties_x);
    const double denom_y = static_cast<double>(pairs - ties_y);
    if (denom_x <= 0.0 || denom_y <= 0.0)
        return std::equal(x.begin(), x.end(), y.begin()) ? 1.0 : 0.0;
    return static_cast<double>(concordant - discordant) / std::sqrt(denom_x * denom_y);
}

DisagreementSummary disagreement(const RankTable& table) {
    const std::size_t num_classifiers = table.classifiers.size();
    const std::size_t num_measures = table.measures.size();
    if (num_classifiers < 2 || num_measures < 2)
        throw input_error("disagreement summary requires >= 2 classifiers and >= 2 measures");

    DisagreementSummary summary;

    auto rank_vector = [&](std::size_t mi) {
        std::vector<int> v(num_classifiers);
        for (std::size_t ci = 0; ci < num_classifiers; ++ci) v[ci] = table.ranks[ci][mi];
        return v;
    };

    for (std::size_t mi = 0; mi < num_measures; ++mi) {
        const auto rx = rank_vector(mi);
        for (std::size_t mj = mi + 1; mj < num_measures; ++mj) {
            const auto ry = rank_vector(mj);
            summary.taus.push_back({mi, mj, kendall_tau_b(rx, ry)});
            for (std::size_t ci = 0; ci < num_classifiers; ++ci) {
                for (std::size_t cj = ci + 1; cj < num_classifiers; ++cj) {
                    const int dx = rx[ci] - rx[cj];
                    const int dy = ry[ci] - ry[cj];
                    if ((dx < 0 && dy > 0) || (dx > 0 && dy < 0))
                        summary.reversals.push_back({ci, cj, mi, mj});
                }
            }
        }
    }

    std::set<std::size_t> winners;
    for (std::size_t mi = 0; mi < num_measures; ++mi)
        for (std::size_t ci = 0; ci < num_classifiers; ++ci)
            if (table.ranks[ci][mi] == 1) winners.insert(ci);
    summary.distinct_winners = static_cast<int>(winners.size());
    return summary;
}

}  // namespace crisp
