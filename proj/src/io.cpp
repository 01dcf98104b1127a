#include "oambandit/io.hpp"

#include <iomanip>
#include <ostream>

namespace oambandit {

namespace {

struct Precision {
    explicit Precision(std::ostream& os) : os_(os), saved_(os.precision(12)) {}
    ~Precision() { os_.precision(saved_); }
    std::ostream& os_;
    std::streamsize saved_;
};

}  // namespace

std::string_view to_string(OutcomeKind kind) noexcept {
    switch (kind) {
        case OutcomeKind::SameSideA: return "SameSideA";
        case OutcomeKind::SameSideB: return "SameSideB";
        case OutcomeKind::CrossSide: return "CrossSide";
    }
    return "unknown";
}

nlohmann::json to_json(const TwoPhotonDistribution& dist) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [outcome, p] : dist.entries()) {
        entries.push_back({{"kind", to_string(outcome.kind)},
                           {"first", outcome.first},
                           {"second", outcome.second},
                           {"p", p}});
    }
    return {{"K", dist.mode_count()},
            {"theta", std::vector<double>(dist.theta().begin(), dist.theta().end())},
            {"entries", std::move(entries)}};
}

void write_csv(std::ostream& os, const TwoPhotonDistribution& dist) {
    Precision guard(os);
    os << "kind,first,second,p\n";
    for (const auto& [outcome, p] : dist.entries()) {
        os << to_string(outcome.kind) << ',' << outcome.first << ',' << outcome.second << ',' << p << '\n';
    }
}

void write_series_csv(std::ostream& os, const MetricsSeries& m) {
    Precision guard(os);
    const char* tags[] = {"a", "b"};
    os << 't';
    for (std::size_t p = 0; p < m.players; ++p) {
        for (std::size_t k = 0; k < m.arms; ++k) os << ",select_" << tags[p] << "_arm" << k + 1;
    }
    os << ",cdr,reward_a,reward_b,reward_total";
    if (m.players == 2) os << ",conflict_rate";
    os << '\n';
    for (std::size_t t = 0; t < m.horizon; ++t) {
        os << t + 1;
        for (std::size_t p = 0; p < m.players; ++p) {
            for (std::size_t k = 0; k < m.arms; ++k) os << ',' << m.selection(p, t, k);
        }
        os << ',' << m.cdr[t] << ',' << m.reward_a[t] << ',' << m.reward_b[t] << ',' << m.reward_total[t];
        if (m.players == 2) os << ',' << m.conflict_rate[t];
        os << '\n';
    }
}

nlohmann::json summary_json(const ExperimentConfig& cfg, const MetricsSeries& m, std::size_t window) {
    nlohmann::json config = {
        {"probs", cfg.probs},
        {"arms", cfg.arms()},
        {"trials", cfg.horizon},
        {"reps", cfg.reps},
        {"beta", cfg.beta},
        {"players", cfg.players},
        {"policy", to_string(cfg.policy)},
        {"coupling", to_string(cfg.coupling)},
        {"theta", cfg.theta},
        {"seed", cfg.seed},
    };

    nlohmann::json select = nlohmann::json::array();
    for (std::size_t p = 0; p < m.players; ++p) {
        std::vector<double> per_arm(m.arms);
        for (std::size_t k = 0; k < m.arms; ++k) per_arm[k] = tail_selection(m, p, k, window);
        select.push_back(per_arm);
    }
    nlohmann::json final_levels = {
        {"window", std::min(window, m.horizon)},
        {"cdr", tail_mean(m.cdr, window)},
        {"reward_a", tail_mean(m.reward_a, window)},
        {"reward_b", tail_mean(m.reward_b, window)},
        {"reward_total", tail_mean(m.reward_total, window)},
        {"select_prob", std::move(select)},
    };
    if (m.players == 2) final_levels["conflict_rate"] = tail_mean(m.conflict_rate, window);

    nlohmann::json matrix = nlohmann::json::array();
    for (std::size_t a = 0; a < m.conflict_matrix.size(); ++a) {
        std::vector<double> row(m.conflict_matrix.size());
        for (std::size_t b = 0; b < row.size(); ++b) row[b] = m.conflict_matrix(a, b);
        matrix.push_back(row);
    }

    return {{"config", std::move(config)},
            {"best_arm", m.best_arm + 1},
            {"tied_best", m.tied_best},
            {"final", std::move(final_levels)},
            {"conflicts", m.conflicts},
            {"conflict_matrix", std::move(matrix)}};
}

nlohmann::json series_json(const MetricsSeries& m) {
    nlohmann::json out;
    const char* tags[] = {"a", "b"};
    for (std::size_t p = 0; p < m.players; ++p) {
        for (std::size_t k = 0; k < m.arms; ++k) {
            std::vector<double> col(m.horizon);
            for (std::size_t t = 0; t < m.horizon; ++t) col[t] = m.selection(p, t, k);
            out["select_" + std::string(tags[p]) + "_arm" + std::to_string(k + 1)] = std::move(col);
        }
    }
    out["cdr"] = m.cdr;
    out["reward_a"] = m.reward_a;
    out["reward_b"] = m.reward_b;
    out["reward_total"] = m.reward_total;
    if (m.players == 2) out["conflict_rate"] = m.conflict_rate;
    return out;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    Precision guard(os);
    const std::size_t k = rows.empty() ? 0 : rows.front().probs.size();
    for (std::size_t i = 0; i < k; ++i) os << 'p' << i + 1 << ',';
    os << "greedy,equilibrium,quantum\n";
    for (const SweepRow& row : rows) {
        for (double p : row.probs) os << p << ',';
        os << row.greedy << ',' << row.equilibrium << ',' << row.quantum << '\n';
    }
}

std::string output_stem(const ExperimentConfig& cfg) {
    const std::string_view policy = cfg.players == 1 ? std::string_view("greedy") : to_string(cfg.policy);
    return std::string(policy) + "_" + std::to_string(cfg.arms()) + "arm_" + std::to_string(cfg.seed);
}

}  // namespace oambandit
