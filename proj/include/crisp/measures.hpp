#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crisp/confusion.hpp"
#include "crisp/metric_value.hpp"

namespace crisp {

/// The full crisp-measure catalog. Published reference flags exist for the
/// first 26; t1 and pev are catalogued without reference flags.
enum class MeasureId : std::uint8_t {
    se, sp, pr, fdr, npv, for_, acc, bacc, gacc, er, wer, kappa, j, mar,
    f1, fbeta, fstar, fs, fa, mcc, plr, nlr, dor, fm, wracc, mi, t1, pev,
};

inline constexpr std::size_t kMeasureCount = 28;

/// Every catalogued measure, in canonical order.
const std::array<MeasureId, kMeasureCount>& all_measure_ids();

enum class Direction : std::uint8_t { LargerIsBetter, SmallerIsBetter };

/// True when x is a strictly better defined value than y under dir.
inline bool strictly_better(double x, double y, Direction dir) {
    return dir == Direction::LargerIsBetter ? x > y : x < y;
}

/// Undefined results compare worse than every defined value.
inline bool strictly_better(const MetricValue& x, const MetricValue& y, Direction dir) {
    if (!x.is_defined()) return false;
    if (!y.is_defined()) return true;
    return strictly_better(x.value(), y.value(), dir);
}

/// Which external parameters a measure consumes.
struct ParamSet {
    bool k = false;
    bool alpha = false;
    bool theta = false;
    bool k_fraud = false;

    bool any() const { return k || alpha || theta || k_fraud; }
};

/// External cost/weight parameters. No built-in defaults: evaluate() raises a
/// parameter error when a required value is missing, so callers state their
/// choices explicitly.
struct CostParams {
    std::optional<double> k;        // WER misclassification-severity weight, in (0,1)
    std::optional<double> alpha;    // Fbeta precision weight, in (0,1)
    std::optional<double> theta;    // T1 investigation cost, > 0
    std::optional<double> k_fraud;  // T1 missed-fraud / investigation cost ratio, > 0

    static double beta_from_alpha(double alpha);
    static double alpha_from_beta(double beta);
};

/// The six reference property flags, transcribed verbatim from the published
/// cross-classification. Read-only reference data.
struct ReferenceFlags {
    bool costs = false;
    bool complete = false;
    bool symmetry = false;
    bool meaning = false;
    bool balanced = false;
    bool ignores_cells = false;
};

/// Identity, naming, orientation, parameter needs, declared range, and
/// claimed reference flags for one measure.
struct MeasureDescriptor {
    MeasureId id;
    std::string_view canonical_name;         // e.g. "Se"
    std::string_view cli_id;                 // e.g. "se"
    std::vector<std::string_view> aliases;   // lowercase, e.g. {"recall", "tpr"}
    Direction direction;
    ParamSet params_required;
    std::optional<ReferenceFlags> claimed;      // absent for t1 and pev
    std::optional<double> lower_bound;       // declared range; absent = unbounded
    std::optional<double> upper_bound;
    bool baseline_adjusted = false;
};

const MeasureDescriptor& descriptor(MeasureId id);
const std::vector<MeasureDescriptor>& all_measures();

/// Case-insensitive id/alias lookup ("recall" -> se). Empty on failure.
std::optional<MeasureId> parse_measure(std::string_view name);

/// Lookup that throws input_error on an unknown name.
MeasureId require_measure(std::string_view name);

// Family operations. Each returns every member measure of the family computed
// from one matrix; evaluate() dispatches to exactly these, so the two routes
// are bit-identical.

struct RateFamily {
    MetricValue se, sp, pr, fdr, npv, for_;
};
RateFamily rate_family(const ConfusionMatrix& m);

struct AccuracyFamily {
    MetricValue acc, bacc, gacc, er;
};
AccuracyFamily accuracy_family(const ConfusionMatrix& m);

MetricValue weighted_error(const ConfusionMatrix& m, double k);

struct AgreementFamily {
    MetricValue kappa, j, mar, mcc;
};
AgreementFamily agreement_family(const ConfusionMatrix& m);

struct FFamily {
    MetricValue f1, fbeta, fstar, fs, fa, fm;
};
FFamily f_family(const ConfusionMatrix& m, double alpha);

struct LikelihoodFamily {
    MetricValue plr, nlr, dor;
};
LikelihoodFamily likelihood_family(const ConfusionMatrix& m);

struct InfoFamily {
    MetricValue wracc, mi, pev;
};
InfoFamily info_family(const ConfusionMatrix& m);

MetricValue fraud_cost_t1(const ConfusionMatrix& m, double theta, double k_fraud);

/// The average within-prediction variance of the true label, the intermediate
/// quantity PEV normalizes; exposed for testing.
double pev_average_within_variance(const ConfusionMatrix& m);

/// Registry dispatch over the whole catalog. Throws input_error when params
/// omits a value the measure requires or a parameter is out of range.
MetricValue evaluate(MeasureId id, const ConfusionMatrix& m, const CostParams& params = {});

}  // namespace crisp
