#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lilliput/attack.hpp"

namespace lilliput::dfa {

enum class CampaignMode {
    kFixedBudgetRate,          // fixed fault count per trial, measure success rate
    kMinimumFaultsDistribution // inject until recovery, record the minimum count
};

struct CampaignConfig {
    int model = 1;  // 1, 2 or 3
    std::uint64_t trials = 4096;
    int fault_budget = 8;
    std::optional<std::pair<int, int>> allocation;  // model I: (phase 1, phase 2)
    std::uint64_t seed = 0x1111D0D0CAFEBEEFULL;
    CampaignMode mode = CampaignMode::kFixedBudgetRate;
    int workers = 0;             // 0 = hardware concurrency
    int distribution_cap = 512;  // safety stop for distribution mode

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

/// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct CampaignStats {
    CampaignConfig config;
    std::uint64_t successes = 0;
    /// distribution mode: minimum fault count -> number of trials
    std::map<int, std::uint64_t> histogram;
    double wall_seconds = 0.0;

    double rate() const {
        return config.trials == 0 ? 0.0
                                  : static_cast<double>(successes) / static_cast<double>(config.trials);
    }
    WilsonInterval wilson() const { return wilson_interval(successes, config.trials); }

    /// Identical runs differ only in wall time.
    friend bool equivalent(const CampaignStats& a, const CampaignStats& b) {
        return a.successes == b.successes && a.histogram == b.histogram;
    }
};

/// Run the configured Monte-Carlo campaign. Each trial draws a fresh random
/// master key and plaintext from its own (seed, index)-derived stream, so
/// results are reproducible independently of the worker count. Per-trial
/// attack errors count as failures and never abort the campaign.
CampaignStats run_campaign(const CampaignConfig& cfg);

struct SingleRunResult {
    MasterKey generated;
    MasterKey recovered;
    bool match = false;
    int faults_used = 0;
    std::vector<std::string> trace;  // exactly one line per injected fault
    InversionResult inversion;
};

/// One fully logged attack: generate a key, mount the model's attack until
/// the subkeys are pinned, then finish with the master-key recovery.
SingleRunResult run_single(int model, std::uint64_t seed, bool verbose);

std::string to_csv(const CampaignStats& stats);
std::string to_json(const CampaignStats& stats);

/// Write stats to path in the given format ("csv" or "json").
/// Throws std::runtime_error on an unwritable path.
void emit_results(const CampaignStats& stats, const std::string& format, const std::string& path);

}  // namespace lilliput::dfa
