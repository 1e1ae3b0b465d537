#include "qsdc/runner.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

#include "qsdc/errors.hpp"

namespace qsdc {

namespace {

TrialRecord run_trial(const RunConfig& config, std::uint64_t index) {
    TrialRecord record;
    record.index = index;
    ProtocolSession session(config.session_config(index));
    session.distribute();
    if (!session.aborted()) {
        session.embed_secret();
        session.transmit();
    }
    if (!session.aborted()) {
        const BitVector decoded = session.decode();
        record.decoded_valid = true;
        record.decoded = decoded.str();
        record.correct = decoded == session.secret();
    } else {
        session.finalize_eve();
    }
    record.secret = session.secret().str();
    if (session.config().variant == Variant::three_party) {
        record.secret_b = session.secret_b().str();
        record.secret_c = session.secret_c().str();
    }
    record.aborted = session.aborted();
    record.detected = session.detected();
    record.checkpoint1 = session.checkpoint1();
    record.checkpoint2 = session.checkpoint2();
    for (int bit : session.eve().bits) record.eve_bits += bit ? '1' : '0';
    if (config.include_transcripts) record.transcript = session.transcript();
    return record;
}

} // namespace

RunReport run(const RunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    RunReport report;
    report.config = config;
    report.trials.resize(config.trials);

    unsigned workers = config.threads > 0
                           ? static_cast<unsigned>(config.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, config.trials));

    if (workers <= 1) {
        for (std::uint64_t i = 0; i < config.trials; ++i)
            report.trials[i] = run_trial(config, i);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t i = w; i < config.trials; i += workers)
                        report.trials[i] = run_trial(config, i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    report.recompute_aggregate();
    if (config.emit_timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        report.aggregate.wall_ms =
            std::chrono::duration<double, std::milli>(elapsed).count();
    }
    return report;
}

std::string sweep_csv_header() {
    return "variant,backend,m,oracle_mode,attack,leg,decoys,validate_k,security,"
           "trials,seed,decode_attempts,decode_successes,decode_success_rate,"
           "detected_runs,detection_rate,aborted_runs,status,error";
}

std::string sweep(const std::vector<RunConfig>& grid) {
    std::ostringstream csv;
    csv << sweep_csv_header() << "\n";
    for (const auto& cell : grid) {
        csv << to_string(cell.variant) << ',' << to_string(cell.backend) << ','
            << cell.m << ',' << to_string(cell.oracle_mode) << ','
            << to_string(cell.attack) << ',' << to_string(cell.leg) << ','
            << cell.decoys << ',' << cell.validate_k << ','
            << (cell.security_enabled ? 1 : 0) << ',' << cell.trials << ','
            << cell.seed << ',';
        try {
            RunReport report = run(cell);
            const auto& agg = report.aggregate;
            csv << agg.decode_attempts << ',' << agg.decode_successes << ','
                << agg.decode_success_rate << ',' << agg.detected_runs << ','
                << agg.detection_rate << ',' << agg.aborted_runs << ",ok,";
        } catch (const std::exception& err) {
            std::string what = err.what();
            for (auto& ch : what)
                if (ch == ',' || ch == '\n') ch = ';';
            csv << ",,,,,,failed," << what;
        }
        csv << "\n";
    }
    return csv.str();
}

} // namespace qsdc
