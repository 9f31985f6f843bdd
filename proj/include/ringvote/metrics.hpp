#pragma once

#include <optional>

#include "ringvote/actors.hpp"

namespace ringvote::metrics {

// Storage accounting for a ring of n signers: 256-bit curve sizes against the
// 3072-bit prime-order-group construction (analytic only; no such
// implementation exists here).
struct StorageReport {
    uint64_t n = 0;
    uint64_t ecc_pk_bytes = 0;     // 64 n
    uint64_t ecc_sig_bytes = 0;    // 32 (n + 3)
    uint64_t nonecc_pk_bytes = 0;  // 384 n
    uint64_t nonecc_sig_bytes = 0; // 384 (n + 2)

    friend bool operator==(const StorageReport&, const StorageReport&) = default;
};

StorageReport storage_report(uint64_t n); // n >= 1, else ValidationError

// Framed wire size of a serialized signature for the given curve: the raw
// signature body plus the ring-digest / coefficient-count framing.
uint64_t framed_signature_bytes(const Curve& curve, uint64_t n);

// Global ledger costs per phase: writes w, reads r, communication rounds c.
// A blank cell in the source accounting is a nullopt.
struct PhaseCost {
    std::string phase;
    std::optional<uint64_t> writes;
    std::optional<uint64_t> reads;
    std::optional<uint64_t> rounds;

    friend bool operator==(const PhaseCost&, const PhaseCost&) = default;
};

// M voters, K_i-of-N_i identification, K_e-of-N_e key sharing. In vote-claim
// mode the Encryption row drops and Tally costs M writes (one redeem each).
std::vector<PhaseCost> phase_costs(uint64_t m, uint64_t k_i, uint64_t n_e, uint64_t k_e,
                                   contracts::ConfMode mode = contracts::ConfMode::kThreshold);

struct MeasuredPhase {
    uint64_t writes = 0;
    uint64_t reads = 0;
    uint64_t rounds = 0;
};

struct SessionMeasurement {
    std::map<std::string, MeasuredPhase> phases;
    uint64_t convenience_writes = 0; // SetResult and organizer-fired events
    bool complete = false;           // a result was posted (or undecryptable noted)
    bool undecryptable = false;

    nlohmann::json to_json() const;
};

// Counts actual writes per phase from the audit log; read and round counts
// come from the session's actor instrumentation.
SessionMeasurement measure_session(const ledger::Ledger& ledger,
                                   const std::map<std::string, actors::PhaseIo>& io);

// Rendering helpers shared by the CLI.
nlohmann::json storage_report_json(const StorageReport& r);
std::string storage_table(const std::vector<StorageReport>& rows);
nlohmann::json phase_costs_json(const std::vector<PhaseCost>& rows);
std::string phase_table(const std::vector<PhaseCost>& rows);

} // namespace ringvote::metrics
