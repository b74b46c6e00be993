#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crisp/confusion.hpp"
#include "crisp/measures.hpp"

namespace crisp {

/// One classifier entering a ranking: its name, its scores over the common
/// test instances, and the threshold it operates at.
struct ClassifierScores {
    std::string name;
    ScoredDataset data;
    double threshold = 0.0;
};

enum class UndefinedRankPolicy : std::uint8_t { RankLast };

/// Classifier-by-measure grid of values and direction-aware ranks.
/// Ranks are min-tie: tied values share the smallest rank in their block;
/// undefined values rank strictly last (policy recorded).
struct RankTable {
    std::vector<std::string> classifiers;
    std::vector<MeasureId> measures;
    std::vector<std::vector<MetricValue>> values;  // [classifier][measure]
    std::vector<std::vector<int>> ranks;           // [classifier][measure]
    UndefinedRankPolicy undefined_policy = UndefinedRankPolicy::RankLast;
};

/// Evaluates every measure on every classifier's confusion matrix at its own
/// threshold. Requires >= 2 classifiers over the same instances: equal sizes,
/// matching id sequences when ids are present, matching true labels.
RankTable rank_classifiers(const std::vector<ClassifierScores>& classifiers,
                           const std::vector<MeasureId>& measures,
                           const CostParams& params = {});

/// Min-tie ranks of one value column under dir; undefined entries share the
/// last rank.
std::vector<int> rank_column(std::span<const MetricValue> values, Direction dir);

/// Kendall tau-b between two equally-long rank vectors. When no untied pair
/// exists in either vector the coefficient is degenerate: returns 1 for
/// identical vectors, 0 otherwise.
double kendall_tau_b(std::span<const int> x, std::span<const int> y);

struct MeasurePairTau {
    std::size_t measure_i = 0;
    std::size_t measure_j = 0;
    double tau = 0.0;
};

/// Two classifiers ordered oppositely by two measures.
struct RankReversal {
    std::size_t classifier_i = 0;
    std::size_t classifier_j = 0;
    std::size_t measure_i = 0;
    std::size_t measure_j = 0;
};

struct DisagreementSummary {
    std::vector<MeasurePairTau> taus;       // all measure pairs i < j
    std::vector<RankReversal> reversals;    // exhaustive
    int distinct_winners = 0;               // union of rank-1 holders across measures
};

DisagreementSummary disagreement(const RankTable& table);

}  // namespace crisp
