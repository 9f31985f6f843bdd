#include "ringvote/metrics.hpp"

#include <sstream>

#include "ringvote/errors.hpp"
#include "ringvote/lsag.hpp"

namespace ringvote::metrics {

StorageReport storage_report(uint64_t n) {
    if (n < 1) throw ValidationError("storage_report: n must be >= 1");
    StorageReport r;
    r.n = n;
    r.ecc_pk_bytes = 64 * n;
    r.ecc_sig_bytes = 32 * (n + 3);
    r.nonecc_pk_bytes = 384 * n;
    r.nonecc_sig_bytes = 384 * (n + 2);
    return r;
}

uint64_t framed_signature_bytes(const Curve& curve, uint64_t n) {
    // digest + tag point + count + n coefficients + anchor
    return curve.scalar_width() + curve.point_width() + 4 + (n + 1) * curve.scalar_width();
}

std::vector<PhaseCost> phase_costs(uint64_t m, uint64_t k_i, uint64_t n_e, uint64_t k_e,
                                   contracts::ConfMode mode) {
    if (k_i < 1) throw ValidationError("phase_costs: K_i must be >= 1");
    std::vector<PhaseCost> rows;
    rows.push_back({"Setup", 1, std::nullopt, 1});
    // registration reads are not part of the accounting; reported as blank
    rows.push_back({"Registration", m * k_i, std::nullopt, k_i});
    if (mode == contracts::ConfMode::kThreshold) {
        if (n_e < 1 || k_e < 1 || k_e > n_e) throw ValidationError("phase_costs: bad K_e/N_e");
        rows.push_back({"Encryption", 2 * n_e, n_e, 2});
        rows.push_back({"Voting", m, m, 1});
        rows.push_back({"Tally", k_e, std::nullopt, 1});
    } else {
        // vote claim: no key ceremony; every voter writes once more to redeem
        rows.push_back({"Voting", m, m, 1});
        rows.push_back({"Tally", m, std::nullopt, 1});
    }
    return rows;
}

namespace {

const char* phase_of_method(const std::string& target, const std::string& method) {
    if (target == "session") return "Setup";
    if (method == contracts::methods::kSignUp) return "Registration";
    if (method == contracts::methods::kCommitShare || method == contracts::methods::kPublishKey) {
        return "Encryption";
    }
    if (method == contracts::methods::kVote || method == contracts::methods::kVoteBatch) {
        return "Voting";
    }
    if (method == contracts::methods::kRevealShare || method == contracts::methods::kRedeem) {
        return "Tally";
    }
    return nullptr; // SetResult, Open, Close: convenience writes
}

} // namespace

SessionMeasurement measure_session(const ledger::Ledger& ledger,
                                   const std::map<std::string, actors::PhaseIo>& io) {
    SessionMeasurement m;
    for (const auto& entry : ledger.audit()) {
        const char* phase = phase_of_method(entry.tx.target, entry.tx.method);
        if (!phase) {
            m.convenience_writes++;
            continue;
        }
        m.phases[phase].writes++;
    }
    for (const auto& [phase, counters] : io) {
        m.phases[phase].reads = counters.reads;
        m.phases[phase].rounds = counters.rounds;
    }

    const auto* bb = ledger.contract<contracts::BallotBox>(contracts::BallotBox::kName);
    if (bb && bb->result()) m.complete = true;
    const auto* cm = ledger.contract<contracts::ConfManager>(contracts::ConfManager::kName);
    if (cm && bb && bb->closed() && !cm->decryption_key() &&
        bb->params().mode == contracts::ConfMode::kThreshold && !m.complete) {
        m.undecryptable = true;
    }
    return m;
}

nlohmann::json SessionMeasurement::to_json() const {
    nlohmann::json phases_json = nlohmann::json::object();
    for (const auto& [phase, p] : phases) {
        phases_json[phase] = {{"w", p.writes}, {"r", p.reads}, {"c", p.rounds}};
    }
    return nlohmann::json{{"phases", phases_json},
                          {"convenience_writes", convenience_writes},
                          {"complete", complete},
                          {"undecryptable", undecryptable}};
}

nlohmann::json storage_report_json(const StorageReport& r) {
    return nlohmann::json{{"signers", r.n},
                          {"ecc_pk_bytes", r.ecc_pk_bytes},
                          {"ecc_sig_bytes", r.ecc_sig_bytes},
                          {"nonecc_pk_bytes", r.nonecc_pk_bytes},
                          {"nonecc_sig_bytes", r.nonecc_sig_bytes}};
}

std::string storage_table(const std::vector<StorageReport>& rows) {
    std::ostringstream out;
    out << "Signers | ECC PKs | ECC Sig | non-ECC PKs | non-ECC Sig\n";
    out << "--------+---------+---------+-------------+------------\n";
    for (const auto& r : rows) {
        char line[128];
        std::snprintf(line, sizeof(line), "%7llu | %7llu | %7llu | %11llu | %11llu\n",
                      (unsigned long long)r.n, (unsigned long long)r.ecc_pk_bytes,
                      (unsigned long long)r.ecc_sig_bytes, (unsigned long long)r.nonecc_pk_bytes,
                      (unsigned long long)r.nonecc_sig_bytes);
        out << line;
    }
    return out.str();
}

nlohmann::json phase_costs_json(const std::vector<PhaseCost>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j{{"phase", r.phase}};
        j["w"] = r.writes ? nlohmann::json(*r.writes) : nlohmann::json(nullptr);
        j["r"] = r.reads ? nlohmann::json(*r.reads) : nlohmann::json(nullptr);
        j["c"] = r.rounds ? nlohmann::json(*r.rounds) : nlohmann::json(nullptr);
        out.push_back(std::move(j));
    }
    return out;
}

std::string phase_table(const std::vector<PhaseCost>& rows) {
    auto cell = [](const std::optional<uint64_t>& v) {
        return v ? std::to_string(*v) : std::string("-");
    };
    std::ostringstream out;
    out << "Phase        | w      | r      | c\n";
    out << "-------------+--------+--------+------\n";
    for (const auto& r : rows) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-12s | %-6s | %-6s | %-5s\n", r.phase.c_str(),
                      cell(r.writes).c_str(), cell(r.reads).c_str(), cell(r.rounds).c_str());
        out << line;
    }
    return out.str();
}

} // namespace ringvote::metrics
