#include "ringvote/scenario.hpp"

#include <chrono>
#include <fstream>

#include "ringvote/errors.hpp"

namespace ringvote::scenario {

using actors::OracleReport;
using actors::Session;
using actors::SessionConfig;
using actors::TallyResult;

namespace {

struct Runner {
    explicit Runner(const nlohmann::json& script)
        : config(script.contains("config") ? SessionConfig::from_json(script.at("config"))
                                           : SessionConfig{}),
          session(config) {
        size_t voters = script.value("voters", 0u);
        for (size_t i = 0; i < voters; i++) {
            session.add_voter("voter" + std::to_string(i) + "@example.org");
        }
    }

    SessionConfig config;
    Session session;
    TallyResult tally;
    bool tally_ran = false;
    std::optional<OracleReport> oracle;
    std::optional<bool> leaked_reconstruction;
    std::vector<std::pair<Digest, std::string>> expectations; // receipt -> reason
    uint64_t forged = 0;
    double forge_ms = 0, forge_verify_ms = 0;
    uint64_t forge_nonce = 1u << 20;

    void apply(const nlohmann::json& a) {
        const std::string op = a.at("op").get<std::string>();
        if (op == "setup") {
            session.setup();
        } else if (op == "register_all") {
            session.register_all();
        } else if (op == "register") {
            auto& v = session.voters().at(a.at("voter").get<size_t>());
            if (a.contains("email")) v.id_data.email = a.at("email").get<std::string>();
            session.register_voter(v);
        } else if (op == "encryption") {
            session.run_encryption();
        } else if (op == "open") {
            session.open_vote();
        } else if (op == "vote") {
            auto& v = session.voters().at(a.at("voter").get<size_t>());
            Digest d = session.vote(v, a.at("choice").get<uint32_t>());
            if (a.contains("expect")) {
                expectations.emplace_back(d, a.at("expect").get<std::string>());
            }
        } else if (op == "vote_all") {
            auto& voters = session.voters();
            if (a.contains("choices")) {
                auto choices = a.at("choices").get<std::vector<uint32_t>>();
                for (size_t i = 0; i < voters.size(); i++) session.vote(voters[i], choices.at(i));
            } else {
                uint32_t choice = a.value("choice", 0u);
                for (auto& v : voters) session.vote(v, choice);
            }
        } else if (op == "flush") {
            session.flush_votes();
        } else if (op == "close") {
            session.close_vote();
        } else if (op == "forge_flood") {
            forge(a.at("count").get<uint64_t>());
        } else if (op == "leak_shares") {
            leaked_reconstruction = session.leak_shares(a.at("count").get<uint32_t>());
        } else if (op == "withhold") {
            std::set<uint32_t> indices;
            if (a.contains("managers")) {
                for (auto m : a.at("managers")) indices.insert(m.get<uint32_t>());
            } else {
                uint32_t count = a.at("count").get<uint32_t>();
                for (uint32_t i = 1; i <= count; i++) indices.insert(i);
            }
            session.withhold_shares(indices);
        } else if (op == "reveal") {
            session.reveal_shares();
        } else if (op == "redeem") {
            session.redeem(session.voters().at(a.at("voter").get<size_t>()));
            session.ledger().produce_block();
        } else if (op == "redeem_all") {
            std::set<size_t> except;
            if (a.contains("except")) {
                for (auto v : a.at("except")) except.insert(v.get<size_t>());
            }
            for (auto& v : session.voters()) {
                if (!except.count(v.index) && !v.claim_plaintext.empty()) session.redeem(v);
            }
            session.ledger().produce_block();
        } else if (op == "doctor_result") {
            session.doctor_result(true);
        } else if (op == "advance") {
            if (a.contains("to_height")) {
                session.advance_to(a.at("to_height").get<uint64_t>());
            } else {
                uint64_t blocks = a.value("blocks", 1ull);
                for (uint64_t i = 0; i < blocks; i++) session.ledger().produce_block();
            }
        } else if (op == "tally") {
            tally = session.tally();
            tally_ran = true;
        } else if (op == "oracle") {
            oracle = actors::tally_oracle(session.ledger().export_chain());
        } else {
            throw ValidationError("scenario: unknown action op " + op);
        }
    }

    // Random-coefficient forgeries: cheap to make, expensive to reject. The
    // recorded timings document the availability asymmetry.
    void forge(uint64_t count) {
        const Curve& curve = Curve::builtin(config.curve_name);
        DeterministicRng rng(config.seed ^ 0xf0f0f0f0f0f0f0f0ull);
        size_t n = session.ballot_box().frozen_ring().size();
        auto t0 = std::chrono::steady_clock::now();
        std::vector<ledger::Transaction> txs;
        txs.reserve(count);
        for (uint64_t i = 0; i < count; i++) {
            lsag::Signature sig;
            sig.ring_digest = session.ballot_box().frozen_ring_digest();
            sig.tag = curve.mul_generator(curve.random_scalar(rng));
            sig.s.resize(n);
            for (auto& s : sig.s) s = curve.random_scalar(rng, true);
            sig.c = curve.random_scalar(rng, true);
            // structurally well-formed ballot so rejection happens at the
            // signature check, the expensive step the flood targets
            Bytes ballot;
            if (session.config().mode == contracts::ConfMode::kVoteClaim) {
                ballot = rng.bytes(kDigestSize);
            } else {
                conf::BallotCiphertext ct{curve.mul_generator(curve.random_scalar(rng)),
                                          rng.bytes(36)};
                ballot = conf::serialize_ciphertext(curve, ct);
            }
            ledger::Transaction tx;
            tx.sender = ledger::kAnonymous;
            tx.target = contracts::BallotBox::kName;
            tx.method = contracts::methods::kVote;
            tx.args = {lsag::serialize(curve, sig), ballot};
            tx.nonce = forge_nonce++;
            txs.push_back(std::move(tx));
        }
        auto t1 = std::chrono::steady_clock::now();
        for (const auto& tx : txs) session.ledger().submit(tx);
        session.ledger().produce_block();
        auto t2 = std::chrono::steady_clock::now();
        forge_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
        forge_verify_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
        forged += count;
    }

    uint64_t revert_count(const std::string& reason) const {
        uint64_t n = 0;
        for (const auto& e : session.ledger().audit()) {
            if (e.receipt.revert_reason == reason) n++;
        }
        return n;
    }

    uint64_t replaced_count() const {
        uint64_t n = 0;
        for (const auto& e : session.ledger().audit()) {
            if (e.receipt.ok && e.receipt.note == "replaced") n++;
        }
        return n;
    }

    bool forge_all_rejected() const {
        return revert_count("BAD_SIGNATURE") >= forged && forged > 0;
    }

    bool check(const nlohmann::json& a, std::string& failure) const {
        const std::string kind = a.at("check").get<std::string>();
        auto fail = [&](const std::string& got) {
            failure = kind + ": expected " + a.at("equals").dump() + ", got " + got;
            return false;
        };
        if (kind == "revert_count") {
            uint64_t got = revert_count(a.at("reason").get<std::string>());
            return got == a.at("equals").get<uint64_t>() || fail(std::to_string(got));
        }
        if (kind == "count") {
            uint32_t choice = a.at("choice").get<uint32_t>();
            uint64_t got = tally.counts.count(choice) ? tally.counts.at(choice) : 0;
            return got == a.at("equals").get<uint64_t>() || fail(std::to_string(got));
        }
        if (kind == "total") {
            return tally.total() == a.at("equals").get<uint64_t>() ||
                   fail(std::to_string(tally.total()));
        }
        if (kind == "invalid") {
            return tally.invalid == a.at("equals").get<uint64_t>() ||
                   fail(std::to_string(tally.invalid));
        }
        if (kind == "unclaimed") {
            return tally.unclaimed == a.at("equals").get<uint64_t>() ||
                   fail(std::to_string(tally.unclaimed));
        }
        if (kind == "ballots_stored") {
            uint64_t got = session.ballot_box().ballots().size();
            return got == a.at("equals").get<uint64_t>() || fail(std::to_string(got));
        }
        if (kind == "replaced_count") {
            uint64_t got = replaced_count();
            return got == a.at("equals").get<uint64_t>() || fail(std::to_string(got));
        }
        if (kind == "status") {
            std::string got = actors::to_string(session.status());
            return got == a.at("equals").get<std::string>() || fail(got);
        }
        if (kind == "oracle") {
            std::string got = oracle ? actors::to_string(oracle->status) : "not-run";
            return got == a.at("equals").get<std::string>() || fail(got);
        }
        if (kind == "leaked_reconstruction") {
            if (!leaked_reconstruction) {
                fail("not-run");
                return false;
            }
            return *leaked_reconstruction == a.at("equals").get<bool>() ||
                   fail(*leaked_reconstruction ? "true" : "false");
        }
        if (kind == "forge_all_rejected") {
            return forge_all_rejected() == a.at("equals").get<bool>() ||
                   fail(forge_all_rejected() ? "true" : "false");
        }
        if (kind == "vote_expectations") {
            for (const auto& [receipt, reason] : expectations) {
                const auto* r = session.ledger().receipt(receipt);
                std::string got = !r ? "unresolved" : (r->ok ? "OK" : r->revert_reason);
                if (got != reason) {
                    failure = "vote_expectations: expected " + reason + ", got " + got;
                    return false;
                }
            }
            return true;
        }
        failure = "unknown check kind: " + kind;
        return false;
    }
};

} // namespace

ScenarioResult run_script(const nlohmann::json& script) {
    ScenarioResult result;
    result.name = script.value("name", "unnamed");
    Runner runner(script);
    for (const auto& action : script.at("actions")) runner.apply(action);

    nlohmann::json assertions = nlohmann::json::array();
    result.passed = true;
    if (script.contains("assertions")) {
        for (const auto& a : script.at("assertions")) {
            std::string failure;
            bool ok = runner.check(a, failure);
            assertions.push_back(nlohmann::json{{"assertion", a}, {"passed", ok}});
            if (!ok) {
                result.passed = false;
                result.failures.push_back(failure);
            }
        }
    }

    nlohmann::json observations{{"status", actors::to_string(runner.session.status())},
                                {"ballots_stored",
                                 runner.session.ballot_box().ballots().size()},
                                {"chain_height", runner.session.ledger().height()}};
    if (runner.tally_ran) observations["tally"] = runner.tally.to_json();
    if (runner.oracle) observations["oracle"] = actors::to_string(runner.oracle->status);
    if (runner.leaked_reconstruction) {
        observations["leaked_reconstruction"] = *runner.leaked_reconstruction;
    }
    if (runner.forged) {
        observations["forged"] = runner.forged;
        observations["forge_ms"] = runner.forge_ms;
        observations["forge_verify_ms"] = runner.forge_verify_ms;
    }
    result.report = nlohmann::json{{"name", result.name},
                                   {"passed", result.passed},
                                   {"assertions", assertions},
                                   {"observations", observations}};
    return result;
}

ScenarioResult run_script_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("scenario: cannot open " + path);
    nlohmann::json script = nlohmann::json::parse(in);
    return run_script(script);
}

} // namespace ringvote::scenario
