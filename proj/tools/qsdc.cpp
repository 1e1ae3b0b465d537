#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qsdc/errors.hpp"
#include "qsdc/runner.hpp"

namespace {

struct CommonFlags {
    std::string variant = "2p";
    int m = 8;
    std::string backend = "stabilizer";
    std::string oracle_mode = "diagonal";
    std::string secret, secret_b, secret_c;
    std::string attack = "none";
    std::string leg = "return";
    bool eve_random_basis = false;
    int decoys = -1;
    int validate_k = -1;
    bool no_security = false;
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;
    int threads = 0;
    int dense_cap = qsdc::DenseState::kDefaultQubitCap;
    bool timing = false;
    bool transcripts = false;
    std::string out;
};

void add_common_flags(CLI::App& cmd, CommonFlags& f) {
    cmd.add_option("--variant", f.variant, "Protocol variant: 2p or 3p")
        ->capture_default_str();
    cmd.add_option("-m,--m", f.m, "Message length in bits")->capture_default_str();
    cmd.add_option("--backend", f.backend, "dense or stabilizer")->capture_default_str();
    cmd.add_option("--oracle-mode", f.oracle_mode,
                   "Secret embedding: diagonal or circuit (explicit |-> ancilla)")
        ->capture_default_str();
    cmd.add_option("--secret", f.secret, "Explicit secret bits, MSB first");
    cmd.add_option("--secret-b", f.secret_b, "Bob's partial secret (3p)");
    cmd.add_option("--secret-c", f.secret_c, "Charlie's partial secret (3p)");
    cmd.add_option("--attack", f.attack,
                   "none, measure_resend, intercept_resend_fake, entangle_measure, pns");
    cmd.add_option("--leg", f.leg, "Attacked leg: distribution or return")
        ->capture_default_str();
    cmd.add_flag("--eve-random-basis", f.eve_random_basis,
                 "Measure-resend adversary picks Z or X per qubit");
    cmd.add_option("-d,--decoys", f.decoys,
                   "Decoys per channel per leg (-1 = ceil(m/4))");
    cmd.add_option("-k,--validate-k", f.validate_k,
                   "Tuples sacrificed per validation checkpoint (-1 = ceil(m/4))");
    cmd.add_flag("--no-security", f.no_security,
                 "Skip decoys and validation (pure correctness runs)");
    cmd.add_option("-t,--trials", f.trials, "Trials to run")->capture_default_str();
    cmd.add_option("-s,--seed", f.seed, "Master seed")->capture_default_str();
    cmd.add_option("--threads", f.threads, "Worker threads (0 = hardware)");
    cmd.add_option("--dense-cap", f.dense_cap, "Dense backend qubit cap")
        ->capture_default_str();
    cmd.add_flag("--timing", f.timing, "Record wall time (makes reports nondeterministic)");
    cmd.add_flag("--transcripts", f.transcripts, "Include per-trial transcripts");
    cmd.add_option("-o,--out", f.out, "Output path (default: stdout)");
}

qsdc::RunConfig to_run_config(const CommonFlags& f) {
    qsdc::RunConfig cfg;
    cfg.variant = qsdc::parse_variant(f.variant);
    cfg.m = f.m;
    cfg.backend = qsdc::parse_backend(f.backend);
    cfg.oracle_mode = qsdc::parse_oracle_mode(f.oracle_mode);
    cfg.security_enabled = !f.no_security;
    cfg.decoys = f.decoys;
    cfg.validate_k = f.validate_k;
    cfg.attack = qsdc::parse_attack(f.attack);
    cfg.leg = qsdc::parse_leg(f.leg);
    cfg.eve_random_basis = f.eve_random_basis;
    if (!f.secret.empty()) cfg.secret = qsdc::BitVector::parse(f.secret);
    if (!f.secret_b.empty()) cfg.secret_b = qsdc::BitVector::parse(f.secret_b);
    if (!f.secret_c.empty()) cfg.secret_c = qsdc::BitVector::parse(f.secret_c);
    cfg.trials = f.trials;
    cfg.seed = f.seed;
    cfg.threads = f.threads;
    cfg.dense_qubit_cap = f.dense_cap;
    cfg.emit_timing = f.timing;
    cfg.include_transcripts = f.transcripts;
    cfg.out = f.out;
    return cfg;
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qsdc::dimension_error("cannot open output file " + path);
    out << payload;
}

int run_command(const CommonFlags& flags) {
    auto cfg = to_run_config(flags);
    cfg.validate();
    auto report = qsdc::run(cfg);
    write_output(cfg.out, qsdc::emit_report(report));
    std::cerr << "trials=" << report.trials.size()
              << " decode_success_rate=" << report.aggregate.decode_success_rate
              << " detection_rate=" << report.aggregate.detection_rate << "\n";
    return 0;
}

struct SweepFlags {
    CommonFlags base;
    std::vector<std::string> variants{"2p"};
    std::vector<int> ms{8};
    std::vector<std::string> backends{"stabilizer"};
    std::vector<std::string> attacks{"none"};
    std::vector<int> decoy_counts{-1};
    std::vector<int> validate_counts{-1};
};

int sweep_command(const SweepFlags& flags) {
    std::vector<qsdc::RunConfig> grid;
    std::uint64_t cell = 0;
    for (const auto& variant : flags.variants)
        for (int m : flags.ms)
            for (const auto& backend : flags.backends)
                for (const auto& attack : flags.attacks)
                    for (int d : flags.decoy_counts)
                        for (int k : flags.validate_counts) {
                            CommonFlags f = flags.base;
                            f.variant = variant;
                            f.m = m;
                            f.backend = backend;
                            f.attack = attack;
                            f.decoys = d;
                            f.validate_k = k;
                            auto cfg = to_run_config(f);
                            cfg.seed = qsdc::CounterRng(flags.base.seed)
                                           .derive(cell++)
                                           .next_u64();
                            grid.push_back(cfg);
                        }
    write_output(flags.base.out, qsdc::sweep(grid));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation driver for entanglement-based secure direct "
                 "communication protocols"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key=value file; subcommand options go in a [run] or "
                   "[sweep] section; command-line flags override");

    CommonFlags run_flags;
    auto* run_cmd = app.add_subcommand(
        "run", "Run trials of one configuration and emit a JSON report");
    add_common_flags(*run_cmd, run_flags);

    SweepFlags sweep_flags;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Run a config grid and emit CSV aggregates");
    add_common_flags(*sweep_cmd, sweep_flags.base);
    sweep_cmd->add_option("--variants", sweep_flags.variants, "Grid: variants")
        ->delimiter(',');
    sweep_cmd->add_option("--ms", sweep_flags.ms, "Grid: message lengths")
        ->delimiter(',');
    sweep_cmd->add_option("--backends", sweep_flags.backends, "Grid: backends")
        ->delimiter(',');
    sweep_cmd->add_option("--attacks", sweep_flags.attacks, "Grid: attack strategies")
        ->delimiter(',');
    sweep_cmd->add_option("--decoy-grid", sweep_flags.decoy_counts, "Grid: decoy counts")
        ->delimiter(',');
    sweep_cmd->add_option("--validate-grid", sweep_flags.validate_counts,
                          "Grid: validation tuple counts")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) return run_command(run_flags);
        if (sweep_cmd->parsed()) return sweep_command(sweep_flags);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qsdc::invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const qsdc::dimension_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qsdc::resource_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
