#include "crisp/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

namespace crisp {

namespace {

MetricValue ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) return MetricValue::undefined(UndefinedReason::ZeroDenominator);
    return MetricValue::defined(static_cast<double>(num) / static_cast<double>(den));
}

void require_open_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
        throw input_error(std::string(name) + " must lie strictly between 0 and 1");
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw input_error(std::string(name) + " must be positive");
}

double require_param(const std::optional<double>& v, const char* name) {
    if (!v.has_value())
        throw input_error(std::string("missing required parameter: ") + name);
    return *v;
}

inline double log2p(double p) { return std::log2(p); }

}  // namespace

std::string_view to_string(UndefinedReason reason) {
    switch (reason) {
        case UndefinedReason::ZeroDenominator: return "zero_denominator";
        case UndefinedReason::LogOfZeroMass: return "log_of_zero_mass";
        case UndefinedReason::EmptyClass: return "empty_class";
    }
    return "unknown";
}

double CostParams::beta_from_alpha(double alpha) {
    require_open_unit(alpha, "alpha");
    return std::sqrt(1.0 / alpha - 1.0);
}

double CostParams::alpha_from_beta(double beta) {
    require_positive(beta, "beta");
    return 1.0 / (1.0 + beta * beta);
}

RateFamily rate_family(const ConfusionMatrix& m) {
    RateFamily out{
        .se = ratio(m.d(), m.b() + m.d()),
        .sp = ratio(m.a(), m.a() + m.c()),
        .pr = ratio(m.d(), m.c() + m.d()),
        .fdr = ratio(m.c(), m.c() + m.d()),
        .npv = ratio(m.a(), m.a() + m.b()),
        .for_ = ratio(m.b(), m.a() + m.b()),
    };
    return out;
}

AccuracyFamily accuracy_family(const ConfusionMatrix& m) {
    const double n = static_cast<double>(m.n());
    AccuracyFamily out{
        .acc = MetricValue::defined(static_cast<double>(m.a() + m.d()) / n),
        .bacc = MetricValue::undefined(UndefinedReason::EmptyClass),
        .gacc = MetricValue::undefined(UndefinedReason::EmptyClass),
        .er = MetricValue::defined(static_cast<double>(m.b() + m.c()) / n),
    };
    if (m.a() + m.c() > 0 && m.b() + m.d() > 0) {
        const double se = static_cast<double>(m.d()) / static_cast<double>(m.b() + m.d());
        const double sp = static_cast<double>(m.a()) / static_cast<double>(m.a() + m.c());
        out.bacc = MetricValue::defined((se + sp) / 2.0);
        out.gacc = MetricValue::defined(std::sqrt(se * sp));
    }
    return out;
}

MetricValue weighted_error(const ConfusionMatrix& m, double k) {
    require_open_unit(k, "k");
    const double n = static_cast<double>(m.n());
    return MetricValue::defined((k * static_cast<double>(m.b()) + (1.0 - k) * static_cast<double>(m.c())) / n);
}

AgreementFamily agreement_family(const ConfusionMatrix& m) {
    const auto a = m.a(), b = m.b(), c = m.c(), d = m.d();
    AgreementFamily out{
        .kappa = MetricValue::undefined(UndefinedReason::ZeroDenominator),
        .j = MetricValue::undefined(UndefinedReason::ZeroDenominator),
        .mar = MetricValue::undefined(UndefinedReason::ZeroDenominator),
        .mcc = MetricValue::undefined(UndefinedReason::ZeroDenominator),
    };

    const std::int64_t kappa_den = (c + d) * (a + c) + (b + d) * (a + b);
    if (kappa_den != 0)
        out.kappa = MetricValue::defined(2.0 * static_cast<double>(a * d - b * c) /
                                         static_cast<double>(kappa_den));

    if (b + d > 0 && a + c > 0) {
        const double se = static_cast<double>(d) / static_cast<double>(b + d);
        const double sp = static_cast<double>(a) / static_cast<double>(a + c);
        out.j = MetricValue::defined(se + sp - 1.0);
    }
    if (c + d > 0 && a + b > 0) {
        const double pr = static_cast<double>(d) / static_cast<double>(c + d);
        const double npv = static_cast<double>(a) / static_cast<double>(a + b);
        out.mar = MetricValue::defined(pr + npv - 1.0);
    }
    if (a + b > 0 && c + d > 0 && a + c > 0 && b + d > 0) {
        const double den = std::sqrt(static_cast<double>(c + d) * static_cast<double>(b + d) *
                                     static_cast<double>(a + c) * static_cast<double>(a + b));
        out.mcc = MetricValue::defined(static_cast<double>(a * d - b * c) / den);
    }
    return out;
}

FFamily f_family(const ConfusionMatrix& m, double alpha) {
    require_open_unit(alpha, "alpha");
    const auto a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const auto undef = MetricValue::undefined(UndefinedReason::ZeroDenominator);
    FFamily out{.f1 = undef, .fbeta = undef, .fstar = undef, .fs = undef, .fa = undef, .fm = undef};

    // F1 and F* use the count forms and are defined whenever the denominator
    // carries any mass.
    if (b + c + 2 * d > 0)
        out.f1 = MetricValue::defined(2.0 * static_cast<double>(d) / static_cast<double>(b + c + 2 * d));
    if (b + c + d > 0)
        out.fstar = MetricValue::defined(static_cast<double>(d) / static_cast<double>(b + c + d));

    const bool se_ok = b + d > 0;
    const bool sp_ok = a + c > 0;
    const bool pr_ok = c + d > 0;
    const bool npv_ok = a + b > 0;
    const double se = se_ok ? static_cast<double>(d) / static_cast<double>(b + d) : 0.0;
    const double sp = sp_ok ? static_cast<double>(a) / static_cast<double>(a + c) : 0.0;
    const double pr = pr_ok ? static_cast<double>(d) / static_cast<double>(c + d) : 0.0;
    const double npv = npv_ok ? static_cast<double>(a) / static_cast<double>(a + b) : 0.0;

    // Harmonic-mean forms need every constituent rate defined and nonzero.
    if (se_ok && pr_ok && se > 0.0 && pr > 0.0)
        out.fbeta = MetricValue::defined(1.0 / (alpha / pr + (1.0 - alpha) / se));
    if (se_ok && sp_ok && pr_ok && npv_ok && se > 0.0 && sp > 0.0 && pr > 0.0 && npv > 0.0) {
        out.fs = MetricValue::defined(4.0 / (1.0 / se + 1.0 / sp + 1.0 / pr + 1.0 / npv));
        out.fa = MetricValue::defined(
            0.5 * (2.0 / (1.0 / se + 1.0 / pr) + 2.0 / (1.0 / sp + 1.0 / npv)));
    }
    if (se_ok && pr_ok) out.fm = MetricValue::defined(std::sqrt(se * pr));
    return out;
}

LikelihoodFamily likelihood_family(const ConfusionMatrix& m) {
    const auto a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const auto undef = MetricValue::undefined(UndefinedReason::ZeroDenominator);
    LikelihoodFamily out{.plr = undef, .nlr = undef, .dor = undef};

    if (b + d > 0 && a + c > 0) {
        const double pos_rate_1 = static_cast<double>(d) / static_cast<double>(b + d);
        const double pos_rate_0 = static_cast<double>(c) / static_cast<double>(a + c);
        const double neg_rate_1 = static_cast<double>(b) / static_cast<double>(b + d);
        const double neg_rate_0 = static_cast<double>(a) / static_cast<double>(a + c);
        if (pos_rate_0 > 0.0) out.plr = MetricValue::defined(pos_rate_1 / pos_rate_0);
        if (neg_rate_0 > 0.0) out.nlr = MetricValue::defined(neg_rate_1 / neg_rate_0);
    }
    if (b * c != 0)
        out.dor = MetricValue::defined(static_cast<double>(a * d) / static_cast<double>(b * c));
    return out;
}

double pev_average_within_variance(const ConfusionMatrix& m) {
    const auto a = m.a(), b = m.b(), c = m.c(), d = m.d();
    double within = 0.0;
    // Empty predicted rows contribute zero variance.
    if (a + b > 0)
        within += static_cast<double>(a) * static_cast<double>(b) / static_cast<double>(a + b);
    if (c + d > 0)
        within += static_cast<double>(c) * static_cast<double>(d) / static_cast<double>(c + d);
    return within / static_cast<double>(m.n());
}

InfoFamily info_family(const ConfusionMatrix& m) {
    const auto a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const double n = static_cast<double>(m.n());
    InfoFamily out{
        .wracc = MetricValue::undefined(UndefinedReason::EmptyClass),
        .mi = MetricValue::defined(0.0),
        .pev = MetricValue::undefined(UndefinedReason::ZeroDenominator),
    };

    if (b + d > 0) {
        const double se = static_cast<double>(d) / static_cast<double>(b + d);
        out.wracc = MetricValue::defined(4.0 * (se - m.p1()) * m.pi1());
    }

    // Mutual information in bits, 0*log0 = 0. Each occupied cell contributes
    // p * log2(p / (p_row * p_col)).
    {
        const std::int64_t cells[4] = {a, b, c, d};
        const std::int64_t rows[4] = {a + b, a + b, c + d, c + d};   // predicted-class margin
        const std::int64_t cols[4] = {a + c, b + d, a + c, b + d};   // true-class margin
        double mi = 0.0;
        for (int i = 0; i < 4; ++i) {
            if (cells[i] == 0) continue;
            const double p = static_cast<double>(cells[i]) / n;
            const double p_row = static_cast<double>(rows[i]) / n;
            const double p_col = static_cast<double>(cols[i]) / n;
            mi += p * log2p(p / (p_row * p_col));
        }
        out.mi = MetricValue::defined(mi);
    }

    if (a + c > 0 && b + d > 0) {
        const double total_variance =
            static_cast<double>(a + c) * static_cast<double>(b + d) / (n * n);
        out.pev = MetricValue::defined(1.0 - pev_average_within_variance(m) / total_variance);
    }
    return out;
}

MetricValue fraud_cost_t1(const ConfusionMatrix& m, double theta, double k_fraud) {
    require_positive(theta, "theta");
    require_positive(k_fraud, "k_fraud");
    return MetricValue::defined(
        (static_cast<double>(m.b()) * k_fraud + static_cast<double>(m.c() + m.d())) * theta);
}

MetricValue evaluate(MeasureId id, const ConfusionMatrix& m, const CostParams& params) {
    switch (id) {
        case MeasureId::se: return rate_family(m).se;
        case MeasureId::sp: return rate_family(m).sp;
        case MeasureId::pr: return rate_family(m).pr;
        case MeasureId::fdr: return rate_family(m).fdr;
        case MeasureId::npv: return rate_family(m).npv;
        case MeasureId::for_: return rate_family(m).for_;
        case MeasureId::acc: return accuracy_family(m).acc;
        case MeasureId::bacc: return accuracy_family(m).bacc;
        case MeasureId::gacc: return accuracy_family(m).gacc;
        case MeasureId::er: return accuracy_family(m).er;
        case MeasureId::wer: return weighted_error(m, require_param(params.k, "k"));
        case MeasureId::kappa: return agreement_family(m).kappa;
        case MeasureId::j: return agreement_family(m).j;
        case MeasureId::mar: return agreement_family(m).mar;
        case MeasureId::f1: return f_family(m, 0.5).f1;
        case MeasureId::fbeta: return f_family(m, require_param(params.alpha, "alpha")).fbeta;
        case MeasureId::fstar: return f_family(m, 0.5).fstar;
        case MeasureId::fs: return f_family(m, 0.5).fs;
        case MeasureId::fa: return f_family(m, 0.5).fa;
        case MeasureId::mcc: return agreement_family(m).mcc;
        case MeasureId::plr: return likelihood_family(m).plr;
        case MeasureId::nlr: return likelihood_family(m).nlr;
        case MeasureId::dor: return likelihood_family(m).dor;
        case MeasureId::fm: return f_family(m, 0.5).fm;
        case MeasureId::wracc: return info_family(m).wracc;
        case MeasureId::mi: return info_family(m).mi;
        case MeasureId::t1:
            return fraud_cost_t1(m, require_param(params.theta, "theta"),
                                 require_param(params.k_fraud, "k_fraud"));
        case MeasureId::pev: return info_family(m).pev;
    }
    throw input_error("unknown measure id");
}

namespace {

std::vector<MeasureDescriptor> build_registry() {
    auto flags = [](bool costs, bool complete, bool symmetry, bool meaning, bool balanced,
                    bool ignores) {
        return ReferenceFlags{costs, complete, symmetry, meaning, balanced, ignores};
    };
    const auto larger = Direction::LargerIsBetter;
    const auto smaller = Direction::SmallerIsBetter;

    std::vector<MeasureDescriptor> r;
    r.push_back({MeasureId::se, "Se", "se", {"recall", "tpr", "sensitivity", "hitrate", "r"},
                 larger, {}, flags(0, 0, 0, 1, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::sp, "Sp", "sp", {"tnr", "specificity", "selectivity"},
                 larger, {}, flags(0, 0, 0, 1, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::pr, "Pr", "pr", {"ppv", "precision"},
                 larger, {}, flags(0, 0, 0, 1, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::fdr, "FDR", "fdr", {},
                 smaller, {}, flags(0, 0, 0, 1, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::npv, "NPV", "npv", {},
                 larger, {}, flags(0, 0, 0, 1, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::for_, "FOR", "for", {},
                 smaller, {}, flags(0, 0, 0, 1, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::acc, "ACC", "acc", {"accuracy"},
                 larger, {}, flags(0, 1, 1, 1, 0, 0), 0.0, 1.0, false});
    r.push_back({MeasureId::bacc, "BACC", "bacc", {"balanced_accuracy"},
                 larger, {}, flags(0, 1, 0, 1, 1, 0), 0.0, 1.0, false});
    r.push_back({MeasureId::gacc, "GACC", "gacc", {"geometric_accuracy"},
                 larger, {}, flags(0, 1, 0, 1, 0, 0), 0.0, 1.0, false});
    r.push_back({MeasureId::er, "ER", "er", {"error_rate", "misclassification_rate"},
                 smaller, {}, flags(0, 1, 1, 1, 0, 0), 0.0, 1.0, false});
    r.push_back({MeasureId::wer, "WER", "wer", {"weighted_error_rate"},
                 smaller, {.k = true}, flags(1, 1, 0, 1, 0, 0), 0.0, 1.0, false});
    r.push_back({MeasureId::kappa, "K", "kappa", {"k", "cohen_kappa"},
                 larger, {}, flags(0, 1, 1, 1, 0, 0), -1.0, 1.0, true});
    r.push_back({MeasureId::j, "J", "j", {"youden", "informedness", "inf"},
                 larger, {}, flags(0, 1, 0, 0, 1, 0), -1.0, 1.0, false});
    r.push_back({MeasureId::mar, "MAR", "mar", {"deltap", "markedness"},
                 larger, {}, flags(0, 1, 0, 0, 1, 0), -1.0, 1.0, false});
    r.push_back({MeasureId::f1, "F1", "f1", {"f", "f_measure"},
                 larger, {}, flags(0, 0, 0, 0, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::fbeta, "Fbeta", "fbeta", {},
                 larger, {.alpha = true}, flags(1, 0, 0, 0, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::fstar, "F*", "fstar", {"jaccard", "f_star", "threat_score"},
                 larger, {}, flags(0, 0, 0, 0, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::fs, "FS", "fs", {"symmetric_f"},
                 larger, {}, flags(0, 0, 1, 0, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::fa, "FA", "fa", {"average_f"},
                 larger, {}, flags(0, 0, 1, 0, 0, 1), 0.0, 1.0, false});
    r.push_back({MeasureId::mcc, "MCC", "mcc", {"phi", "matthews"},
                 larger, {}, flags(0, 1, 0, 0, 0, 0), -1.0, 1.0, false});
    r.push_back({MeasureId::plr, "PLR", "plr", {},
                 larger, {}, flags(0, 1, 0, 0, 0, 0), 0.0, std::nullopt, false});
    r.push_back({MeasureId::nlr, "NLR", "nlr", {},
                 smaller, {}, flags(0, 1, 0, 0, 0, 0), 0.0, std::nullopt, false});
    r.push_back({MeasureId::dor, "DOR", "dor", {"diagnostic_odds_ratio"},
                 larger, {}, flags(0, 1, 0, 0, 0, 0), 0.0, std::nullopt, false});
    r.push_back({MeasureId::fm, "FM", "fm", {"fowlkes_mallows"},
                 larger, {}, flags(0, 1, 0, 1, 0, 0), 0.0, 1.0, false});
    r.push_back({MeasureId::wracc, "WRACC", "wracc", {"weighted_relative_accuracy"},
                 larger, {}, flags(0, 1, 0, 0, 0, 0), -1.0, 1.0, true});
    r.push_back({MeasureId::mi, "MI", "mi", {"mutual_information"},
                 larger, {}, flags(0, 1, 1, 0, 0, 0), 0.0, 1.0, false});
    r.push_back({MeasureId::t1, "T1", "t1", {},
                 smaller, {.theta = true, .k_fraud = true}, std::nullopt, 0.0, std::nullopt, false});
    r.push_back({MeasureId::pev, "PEV", "pev", {"explained_variation"},
                 larger, {}, std::nullopt, 0.0, 1.0, false});

    // descriptor() indexes by enum value.
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i].id != static_cast<MeasureId>(i))
            throw std::logic_error("measure registry out of order");
    if (r.size() != kMeasureCount) throw std::logic_error("measure registry incomplete");
    return r;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

std::unordered_map<std::string, MeasureId> build_alias_map() {
    std::unordered_map<std::string, MeasureId> map;
    for (const auto& desc : all_measures()) {
        map.emplace(lowercase(desc.cli_id), desc.id);
        map.emplace(lowercase(desc.canonical_name), desc.id);
        for (const auto& alias : desc.aliases) map.emplace(lowercase(alias), desc.id);
    }
    return map;
}

}  // namespace

const std::vector<MeasureDescriptor>& all_measures() {
    static const std::vector<MeasureDescriptor> registry = build_registry();
    return registry;
}

const std::array<MeasureId, kMeasureCount>& all_measure_ids() {
    static const std::array<MeasureId, kMeasureCount> ids = [] {
        std::array<MeasureId, kMeasureCount> out{};
        const auto& regs = all_measures();
        for (std::size_t i = 0; i < regs.size(); ++i) out[i] = regs[i].id;
        return out;
    }();
    return ids;
}

const MeasureDescriptor& descriptor(MeasureId id) {
    return all_measures()[static_cast<std::size_t>(id)];
}

std::optional<MeasureId> parse_measure(std::string_view name) {
    static const std::unordered_map<std::string, MeasureId> aliases = build_alias_map();
    const auto it = aliases.find(lowercase(name));
    if (it == aliases.end()) return std::nullopt;
    return it->second;
}

MeasureId require_measure(std::string_view name) {
    const auto id = parse_measure(name);
    if (!id) throw input_error("unknown measure: " + std::string(name));
    return *id;
}

}  // namespace crisp
