#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lilliput/campaign.hpp"
#include "lilliput/cipher.hpp"
#include "lilliput/ddt.hpp"
#include "lilliput/fault.hpp"
#include "lilliput/key_schedule.hpp"

namespace {

using namespace lilliput;
using namespace lilliput::dfa;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LILLIPUT_SEED")) {
        try {
            return std::stoull(env, nullptr, 0);
        } catch (const std::exception&) {
            throw std::invalid_argument("LILLIPUT_SEED is not a number");
        }
    }
    return CampaignConfig{}.seed;
}

void print_ddt() {
    const DdtTable& t = ddt();
    std::cout << "in\\out";
    for (int b = 0; b < 16; ++b) std::cout << ' ' << std::uppercase << std::hex << b;
    std::cout << std::dec << '\n';
    for (int a = 0; a < 16; ++a) {
        std::cout << "    " << std::uppercase << std::hex << a << std::dec << ' ';
        for (int b = 0; b < 16; ++b) {
            std::cout << ' ' << static_cast<int>(t.counts[a][b]);
        }
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LILLIPUT block cipher workbench and differential fault attack simulator"};
    app.require_subcommand(1);

    std::string key_hex, block_hex, fault_text;
    auto* enc = app.add_subcommand("encrypt", "Encrypt one 64-bit block");
    enc->add_option("--key", key_hex, "80-bit master key, 20 hex digits")->required();
    enc->add_option("--block", block_hex, "64-bit plaintext, 16 hex digits")->required();
    enc->add_option("--fault", fault_text, "inject a nibble fault, e.g. r27:b7:v5");

    auto* dec = app.add_subcommand("decrypt", "Decrypt one 64-bit block");
    dec->add_option("--key", key_hex, "80-bit master key, 20 hex digits")->required();
    dec->add_option("--block", block_hex, "64-bit ciphertext, 16 hex digits")->required();

    auto* exp = app.add_subcommand("expand-key", "Print all 30 round keys");
    exp->add_option("--key", key_hex, "80-bit master key, 20 hex digits")->required();

    app.add_subcommand("ddt", "Print the S-box differential distribution table");

    int model = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool verbose = false;
    auto* atk = app.add_subcommand("attack", "Run one end-to-end key-recovery attack");
    atk->add_option("--model", model, "fault model (1, 2 or 3)")->required();
    atk->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { seed_given = true; });
    atk->add_flag("--verbose", verbose, "print one trace line per injected fault");

    CampaignConfig cfg;
    std::string mode_str = "rate";
    std::string out_path, format = "csv";
    std::pair<int, int> alloc{0, 0};
    bool alloc_given = false;
    bool cfg_seed_given = false;
    auto* camp = app.add_subcommand("campaign", "Run a Monte-Carlo campaign");
    camp->add_option("--model", cfg.model, "fault model (1, 2 or 3)")->required();
    camp->add_option("--faults", cfg.fault_budget, "faults per trial (rate mode)");
    camp->add_option("--alloc", alloc, "model 1 fault split: p1,p2")
        ->delimiter(',')
        ->each([&](const std::string&) { alloc_given = true; });
    camp->add_option("--trials", cfg.trials, "number of trials (default 4096)");
    camp->add_option("--seed", cfg.seed, "campaign seed")->each([&](const std::string&) {
        cfg_seed_given = true;
    });
    camp->add_option("--mode", mode_str, "rate | distribution")
        ->check(CLI::IsMember({"rate", "distribution"}));
    camp->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
    camp->add_option("--out", out_path, "write results to this path");
    camp->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enc) {
            const RoundKeys rks = expand_key(key_from_hex(key_hex));
            const CipherState p = state_from_hex(block_hex);
            const CipherState c = fault_text.empty()
                                      ? encrypt(p, rks)
                                      : faulty_encrypt(p, rks, FaultSpec::parse(fault_text));
            std::cout << to_hex(c) << '\n';
        } else if (*dec) {
            std::cout << to_hex(decrypt(state_from_hex(block_hex), expand_key(key_from_hex(key_hex))))
                      << '\n';
        } else if (*exp) {
            const RoundKeys rks = expand_key(key_from_hex(key_hex));
            for (int r = 0; r < kNumRounds; ++r)
                std::cout << "RK" << r << " " << to_hex(rks[static_cast<std::size_t>(r)]) << '\n';
        } else if (app.get_subcommand("ddt")->parsed()) {
            print_ddt();
        } else if (*atk) {
            const SingleRunResult res = run_single(model, seed_given ? seed : default_seed(), verbose);
            if (verbose)
                for (const std::string& line : res.trace) std::cout << line << '\n';
            std::cout << "faults used     " << res.faults_used << '\n';
            std::cout << "generated key   " << to_hex(res.generated) << '\n';
            std::cout << "recovered key   " << to_hex(res.recovered) << '\n';
            std::cout << "constraint rank " << res.inversion.rank << " (kernel dimension "
                      << res.inversion.kernel_dim << ", " << res.inversion.candidates_tried
                      << " candidates tried)\n";
            std::cout << (res.match ? "match\n" : "MISMATCH\n");
            if (!res.match) return 1;
        } else if (*camp) {
            if (alloc_given) cfg.allocation = alloc;
            if (!cfg_seed_given) cfg.seed = default_seed();
            cfg.mode = mode_str == "rate" ? CampaignMode::kFixedBudgetRate
                                          : CampaignMode::kMinimumFaultsDistribution;
            cfg.validate();
            const CampaignStats stats = run_campaign(cfg);
            const WilsonInterval w = stats.wilson();
            std::cout << "trials " << stats.config.trials << "  successes " << stats.successes
                      << "  rate " << stats.rate() << "  wilson95 [" << w.low << ", " << w.high
                      << "]  wall " << stats.wall_seconds << "s\n";
            if (cfg.mode == CampaignMode::kMinimumFaultsDistribution) {
                for (const auto& [count, freq] : stats.histogram)
                    std::cout << count << " faults: " << freq << '\n';
            }
            if (!out_path.empty()) emit_results(stats, format, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
