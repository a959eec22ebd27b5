// Acceptance gate: one check per release criterion, one [PASS]/[FAIL] line
// each, exit code = number of failures. Runs standalone (no test framework).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "bgc/channels.hpp"
#include "bgc/coupling.hpp"
#include "bgc/decompose.hpp"
#include "bgc/degradability.hpp"
#include "bgc/gaussian_state.hpp"
#include "bgc/rng.hpp"
#include "cli_runner.hpp"

namespace {

using bgc::CouplingMatrix;
using bgc::CouplingRegime;
using bgc::GaussianState;

int g_failures = 0;

void report(int idx, const char* what, bool pass, const std::string& measured) {
    std::printf("[%s] %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, what,
                measured.c_str());
    if (!pass) ++g_failures;
}

std::string residual_vs(double measured, double threshold) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.3g vs %.3g", measured, threshold);
    return buf;
}

const std::vector<GaussianState>& environments() {
    static const std::vector<GaussianState> envs = {
        bgc::vacuum_state(), bgc::thermal_state(1.0),
        bgc::apply_squeeze(bgc::thermal_state(0.5), {0.4, 1.1})};
    return envs;
}

// 1. Every constructed coupling satisfies the symplectic constraints.
void criterion_constraints() {
    double worst = 0.0;
    bgc::SampleRng rng(101);
    for (int i = 0; i < 50; ++i) {
        worst = std::max(worst,
                         bgc::validate_coupling(bgc::bs_coupling(rng.uniform(0.0, 1.0)))
                             .max_residual());
        worst = std::max(worst,
                         bgc::validate_coupling(bgc::amp_coupling(rng.uniform(1.0, 6.0)))
                             .max_residual());
    }
    for (CouplingRegime regime :
         {CouplingRegime::kBSq, CouplingRegime::kAMPq, CouplingRegime::kNEGq}) {
        for (int i = 0; i < 100; ++i) {
            const auto seed = static_cast<std::uint64_t>(1000 + i);
            worst = std::max(
                worst, bgc::validate_coupling(bgc::generate_coupling(seed, regime))
                           .max_residual());
        }
    }
    report(1, "coupling constraints hold for canonical and generated matrices",
           worst < 1e-10, residual_vs(worst, 1e-10));
}

// 2. The invariant q: canonical value, generation target, swap flip.
void criterion_invariant() {
    double worst_canonical = 0.0;
    bgc::SampleRng rng(202);
    for (int i = 0; i < 100; ++i) {
        const double kb = rng.uniform(0.0, 1.0);
        const double ka = rng.uniform(1.0, 8.0);
        worst_canonical = std::max(
            worst_canonical, std::abs(bgc::compute_q(bgc::bs_coupling(kb)) - kb));
        worst_canonical = std::max(
            worst_canonical, std::abs(bgc::compute_q(bgc::amp_coupling(ka)) - ka));
    }

    double worst_target = 0.0;
    double worst_swap = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto seed = static_cast<std::uint64_t>(2000 + i);
        const double kb = 0.05 + 0.9 * i / 49.0;
        const double ka = 1.1 + 0.1 * i;
        const CouplingMatrix bs = bgc::generate_coupling(seed, CouplingRegime::kBSq, kb);
        const CouplingMatrix amp = bgc::generate_coupling(seed, CouplingRegime::kAMPq, ka);
        const CouplingMatrix neg = bgc::generate_coupling(seed, CouplingRegime::kNEGq, ka);
        worst_target = std::max(worst_target, std::abs(bgc::compute_q(bs) - kb));
        worst_target = std::max(worst_target, std::abs(bgc::compute_q(amp) - ka));
        worst_target = std::max(worst_target, std::abs(bgc::compute_q(neg) - (1.0 - ka)));
        for (const CouplingMatrix& A : {bs, amp, neg}) {
            worst_swap = std::max(
                worst_swap, std::abs(bgc::compute_q(bgc::swap_coupling(A)) -
                                     (1.0 - bgc::compute_q(A))));
        }
    }

    const bool pass = worst_canonical < 1e-12 && worst_target < 1e-10 && worst_swap < 1e-12;
    char buf[96];
    std::snprintf(buf, sizeof buf, "canonical %.3g, target %.3g, swap %.3g",
                  worst_canonical, worst_target, worst_swap);
    report(2, "q invariant: canonical value, generation target, swap flip", pass, buf);
}

// 3. Closed-form channel maps agree with the conjugate-and-trace evaluation.
void criterion_oracle_equivalence() {
    bgc::SampleRng rng(303);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double k = (i % 2 == 0) ? rng.uniform(0.0, 1.0) : 1.0 + rng.uniform(0.0, 4.0);
        const GaussianState env = bgc::sample_state(rng, /*zero_displacement=*/true);
        const GaussianState rho = bgc::sample_state(rng);
        const bgc::KChannel ch{k, env};
        const bgc::ChannelSpec spec{bgc::coupling_for_k(k), env};
        worst = std::max(worst, bgc::state_distance(bgc::apply_k(ch, rho),
                                                    bgc::apply_general(spec, rho)));
        worst = std::max(worst,
                         bgc::state_distance(bgc::apply_k_complementary(ch, rho),
                                             bgc::apply_general_complementary(spec, rho)));
    }
    report(3, "two independent simulation paths agree on 500 random triples",
           worst < 1e-9, residual_vs(worst, 1e-9));
}

// 4. Weak-degradability composition identity across both regimes.
void criterion_weak_identity() {
    const double ks[] = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.5, 2.0, 5.0};
    double worst = 0.0;
    std::uint64_t seed = 40000;
    for (const GaussianState& env : environments()) {
        for (double k : ks) {
            worst = std::max(
                worst, bgc::verify_weak_degradability(k, env, 100, seed++).max_residual);
        }
    }
    report(4, "weak-degrading composition reproduces the complementary map",
           worst < 1e-9, residual_vs(worst, 1e-9));
}

// 5. Anti-degradability composition identity, including both classes at 1/2.
void criterion_anti_identity() {
    const double ks[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    double worst = 0.0;
    std::uint64_t seed = 50000;
    for (const GaussianState& env : environments()) {
        for (double k : ks) {
            worst = std::max(
                worst, bgc::verify_anti_degradability(k, env, 100, seed++).max_residual);
        }
    }
    const double both_weak =
        bgc::verify_weak_degradability(0.5, environments()[1], 100, 555).max_residual;
    worst = std::max(worst, both_weak);
    report(5, "anti-degrading composition reproduces the channel (both hold at k = 1/2)",
           worst < 1e-9, residual_vs(worst, 1e-9));
}

// 6. The degrading parameter satisfies k (k' - 1) = k - 1 exactly.
void criterion_gain_identity() {
    bgc::SampleRng rng(606);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double k = rng.uniform(0.5, 10.0);
        const double kp = bgc::degrading_k(k);
        worst = std::max(worst, std::abs(k * (kp - 1.0) - (k - 1.0)));
    }
    report(6, "degrading parameter identity k(k'-1) = k-1", worst < 1e-12,
           residual_vs(worst, 1e-12));
}

// 7. Decomposition round trip in all three regimes; boundary q unsupported.
void criterion_decomposition() {
    double worst = 0.0;
    int env_pick = 0;
    for (CouplingRegime regime :
         {CouplingRegime::kBSq, CouplingRegime::kAMPq, CouplingRegime::kNEGq}) {
        for (int i = 0; i < 100; ++i) {
            const auto seed = static_cast<std::uint64_t>(70000 + i);
            const CouplingMatrix A = bgc::generate_coupling(seed, regime);
            const GaussianState& env =
                environments()[static_cast<std::size_t>(env_pick++ % 3)];
            worst = std::max(
                worst, bgc::verify_decomposition(A, env, 5, seed + 7).max_residual);
        }
    }
    bool boundary_rejected = true;
    for (const CouplingMatrix& A :
         {bgc::bs_coupling(1.0), bgc::bs_coupling(0.0), bgc::identity_coupling()}) {
        try {
            bgc::decompose(A);
            boundary_rejected = false;
        } catch (const bgc::unsupported_error&) {
        }
    }
    report(7, "decomposition reproduces the channel; boundary q rejected",
           worst < 1e-9 && boundary_rejected,
           residual_vs(worst, 1e-9) + (boundary_rejected ? "" : ", boundary accepted"));
}

// 8. Classification table rows at representative q values.
void criterion_classification_table() {
    int good = 0;
    const int total = 7;

    const auto row = [&](const CouplingMatrix& A, double q, bool weak, bool anti,
                         bool has_dk, bool has_adk, bgc::EquivalentMap map) {
        const bgc::Classification c = bgc::classify(A);
        if (std::abs(c.q - q) < 1e-9 && c.weakly_degradable == weak &&
            c.anti_degradable == anti && c.degrading_k.has_value() == has_dk &&
            c.antidegrading_k.has_value() == has_adk && c.equivalent_map == map) {
            ++good;
        }
    };

    row(bgc::swap_coupling(bgc::amp_coupling(1.5)), -0.5, false, true, false, false,
        bgc::EquivalentMap::kConjugateAmplifier);
    row(bgc::bs_coupling(0.0), 0.0, false, true, false, false, bgc::EquivalentMap::kNone);
    row(bgc::bs_coupling(0.25), 0.25, false, true, false, true,
        bgc::EquivalentMap::kBeamSplitter);
    row(bgc::bs_coupling(0.5), 0.5, true, true, true, true,
        bgc::EquivalentMap::kBeamSplitter);
    row(bgc::bs_coupling(0.75), 0.75, true, false, true, false,
        bgc::EquivalentMap::kBeamSplitter);
    row(bgc::bs_coupling(1.0), 1.0, true, false, false, false, bgc::EquivalentMap::kNone);
    row(bgc::amp_coupling(2.0), 2.0, true, false, true, false,
        bgc::EquivalentMap::kAmplifier);

    char buf[32];
    std::snprintf(buf, sizeof buf, "%d/%d rows", good, total);
    report(8, "classification reproduces the channel table", good == total, buf);
}

// 9. Outputs stay physical; a mismatched environment is detected.
void criterion_validity_and_control() {
    bgc::SampleRng rng(909);
    double worst_invariant = 1e9;
    for (int i = 0; i < 150; ++i) {
        const double k = (i % 2 == 0) ? rng.uniform(0.0, 1.0) : 1.0 + rng.uniform(0.0, 4.0);
        const GaussianState env = bgc::sample_state(rng, /*zero_displacement=*/true);
        const GaussianState rho = bgc::sample_state(rng);
        const bgc::KChannel ch{k, env};
        for (const GaussianState& out :
             {bgc::apply_k(ch, rho), bgc::apply_k_complementary(ch, rho)}) {
            worst_invariant = std::min(worst_invariant, bgc::uncertainty_invariant(out));
        }
    }

    const double k = 0.7;
    const bgc::KChannel direct{k, bgc::vacuum_state()};
    const bgc::KChannel degrade{bgc::degrading_k(k), bgc::thermal_state(2.0)};
    double control = 0.0;
    for (int i = 0; i < 20; ++i) {
        const GaussianState rho = bgc::sample_state(rng);
        control = std::max(
            control, bgc::state_distance(
                         bgc::apply_k_complementary(direct, rho),
                         bgc::apply_k_complementary(degrade, bgc::apply_k(direct, rho))));
    }

    const bool pass = worst_invariant >= 0.25 - 1e-9 && control > 1e-3;
    char buf[96];
    std::snprintf(buf, sizeof buf, "min invariant %.6f vs 0.25, control residual %.3g",
                  worst_invariant, control);
    report(9, "channel outputs stay physical; mismatched environment detected", pass, buf);
}

// 10. The CLI reproduces the golden reports byte for byte.
void criterion_cli_golden() {
    const std::string cli = BGC_CLI_PATH;
    const std::string data = BGC_TEST_DATA_DIR;
    const std::string gold = BGC_GOLDEN_DIR;

    struct Invocation {
        const char* name;
        std::string args;
    };
    const Invocation runs[] = {
        {"classify_bs03.json", "classify --input " + data + "/spec_bs03_thermal.json"},
        {"simulate_bs03_oracle.json", "simulate --input " + data +
                                          "/spec_bs03_thermal.json --state " + data +
                                          "/state_in.json --oracle"},
        {"decompose_negq.json", "decompose --input " + data + "/coupling_negq.json"},
        {"verify_weak_k2.json", "verify --identity weak --k 2"},
    };

    int good = 0;
    std::string first_bad;
    for (const Invocation& inv : runs) {
        const auto r = cli::run(cli, inv.args);
        const std::string want = cli::read_file(gold + "/" + inv.name);
        if (r.exit_code == 0 && !want.empty() && r.out == want) {
            ++good;
        } else if (first_bad.empty()) {
            first_bad = inv.name;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/4 invocations byte-identical%s%s", good,
                  first_bad.empty() ? "" : ", first mismatch ", first_bad.c_str());
    report(10, "CLI reports are deterministic against golden files", good == 4, buf);
}

}  // namespace

int main() {
    criterion_constraints();
    criterion_invariant();
    criterion_oracle_equivalence();
    criterion_weak_identity();
    criterion_anti_identity();
    criterion_gain_identity();
    criterion_decomposition();
    criterion_classification_table();
    criterion_validity_and_control();
    criterion_cli_golden();
    return g_failures;
}
