// ringvote — key tooling, session lifecycle, scenario runner, and metrics
// reports over the in-process voting ledger.
//
// Exit codes: 0 success, 2 validation error, 3 protocol failure (revert,
// invalid signature, failed scenario), 4 integrity violation.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ringvote/actors.hpp"
#include "ringvote/errors.hpp"
#include "ringvote/metrics.hpp"
#include "ringvote/scenario.hpp"

using namespace ringvote;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kProtocol = 3;
constexpr int kIntegrity = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

// Holds file-loaded curves alive for the process lifetime.
std::vector<std::shared_ptr<const Curve>> g_loaded_curves;

const Curve& resolve_curve(const std::string& name, const std::string& params_file) {
    if (!params_file.empty()) {
        g_loaded_curves.push_back(Curve::load_file(params_file));
        return *g_loaded_curves.back();
    }
    if (!name.empty()) return Curve::builtin(name);
    if (const char* env = std::getenv("RINGVOTE_CURVE_PARAMS"); env && *env) {
        g_loaded_curves.push_back(Curve::load_file(env));
        return *g_loaded_curves.back();
    }
    return Curve::builtin("secp256k1");
}

struct RingFile {
    const Curve* curve;
    lsag::Ring ring;
};

RingFile load_ring(const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(read_file(path));
    const Curve& curve = resolve_curve(j.value("curve", ""), j.value("params_file", ""));
    lsag::Ring ring(curve);
    for (const auto& k : j.at("keys")) {
        ring.append(curve.deserialize_point(from_hex(k.get<std::string>())));
    }
    return RingFile{&curve, std::move(ring)};
}

Bytes read_hex_file_or_inline(const std::string& value) {
    // values starting with '@' are file paths containing hex text
    if (!value.empty() && value[0] == '@') {
        std::string raw = read_file(value.substr(1));
        while (!raw.empty() && (raw.back() == '\n' || raw.back() == '\r')) raw.pop_back();
        return from_hex(raw);
    }
    return from_hex(value);
}

std::unique_ptr<RandomSource> make_rng(bool seeded, uint64_t seed) {
    if (seeded) return std::make_unique<DeterministicRng>(seed);
    return std::make_unique<SystemRng>();
}

void emit(bool json, const nlohmann::json& obj, const std::string& human) {
    if (json) {
        std::cout << obj.dump(2) << "\n";
    } else {
        std::cout << human;
        if (!human.empty() && human.back() != '\n') std::cout << "\n";
    }
}

// ---------------------------------------------------------------------------

int cmd_keygen(const std::string& curve_name, const std::string& params_file, bool seeded,
               uint64_t seed, bool json) {
    const Curve& curve = resolve_curve(curve_name, params_file);
    auto rng = make_rng(seeded, seed);
    auto kp = lsag::keygen(curve, *rng);
    std::string sk = to_hex(curve.serialize_scalar(kp.sk));
    std::string pk = to_hex(curve.serialize_point(kp.pk));
    emit(json, {{"curve", curve.name()}, {"sk", sk}, {"pk", pk}},
         "curve: " + curve.name() + "\nsk: " + sk + "\npk: " + pk);
    return kOk;
}

int cmd_ring_sign(const std::string& ring_path, const std::string& sk_arg,
                  const std::string& msg_path, int signer, bool seeded, uint64_t seed,
                  const std::string& out, bool json) {
    RingFile rf = load_ring(ring_path);
    const Curve& curve = *rf.curve;
    Scalar sk = curve.deserialize_scalar(read_hex_file_or_inline(sk_arg));
    std::string msg = read_file(msg_path);

    size_t index;
    if (signer >= 0) {
        index = size_t(signer);
    } else {
        Point pk = curve.mul_generator(sk);
        bool found = false;
        for (size_t i = 0; i < rf.ring.size(); i++) {
            if (rf.ring.key(i) == pk) {
                index = i;
                found = true;
                break;
            }
        }
        if (!found) throw ValidationError("secret key does not match any ring member");
    }

    auto rng = make_rng(seeded, seed);
    auto sig = lsag::sign(rf.ring, index, sk, to_bytes(msg), *rng);
    std::string hex = to_hex(lsag::serialize(curve, sig));
    if (!out.empty()) write_file(out, hex + "\n");
    emit(json,
         {{"signature", hex}, {"tag", to_hex(curve.serialize_point(sig.tag))}, {"ring", ring_path}},
         out.empty() ? hex : "signature written to " + out);
    return kOk;
}

int cmd_ring_verify(const std::string& ring_path, const std::string& msg_path,
                    const std::string& sig_arg, bool json) {
    RingFile rf = load_ring(ring_path);
    std::string msg = read_file(msg_path);
    lsag::Signature sig = lsag::deserialize(*rf.curve, read_hex_file_or_inline(sig_arg));
    auto status = lsag::verify_detailed(rf.ring, to_bytes(msg), sig);
    bool valid = status == lsag::VerifyStatus::kOk;
    emit(json, {{"valid", valid}, {"status", lsag::to_string(status)}},
         std::string(valid ? "valid" : "invalid") + " (" + lsag::to_string(status) + ")");
    return valid ? kOk : kProtocol;
}

int cmd_ring_link(const std::string& curve_name, const std::string& params_file,
                  const std::string& sig1, const std::string& sig2, bool json) {
    const Curve& curve = resolve_curve(curve_name, params_file);
    auto a = lsag::deserialize(curve, read_hex_file_or_inline(sig1));
    auto b = lsag::deserialize(curve, read_hex_file_or_inline(sig2));
    bool linked = lsag::link(curve, a, b);
    emit(json, {{"linked", linked}}, linked ? "linked (same signer)" : "not linked");
    return kOk;
}

int cmd_session_init(const std::string& out, const std::string& mode) {
    actors::SessionConfig config;
    config.curve_name = "secp256k1";
    if (mode == "vote_claim") config.mode = contracts::ConfMode::kVoteClaim;
    std::string text = config.to_json().dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        write_file(out, text);
        std::cout << "config template written to " << out << "\n";
    }
    return kOk;
}

std::vector<uint32_t> parse_choices(const std::string& csv, size_t voters, size_t choice_count,
                                    RandomSource& rng) {
    std::vector<uint32_t> out;
    if (csv.empty()) {
        for (size_t i = 0; i < voters; i++) out.push_back(uint32_t(rng.below(choice_count)));
        return out;
    }
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(uint32_t(std::stoul(item)));
    if (out.size() != voters) throw ValidationError("--choices must list one choice per voter");
    return out;
}

int cmd_session_run(const std::string& config_path, uint64_t voters, const std::string& roster,
                    const std::string& choices_csv, const std::string& out_chain,
                    const std::string& out_transcript, const std::string& out_state, bool json) {
    auto config = actors::SessionConfig::from_json(nlohmann::json::parse(read_file(config_path)));
    actors::Session session(config);

    if (!roster.empty()) {
        std::istringstream in(read_file(roster));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::string email = line.substr(0, line.find(','));
            auto& v = session.add_voter(email);
            if (auto comma = line.find(','); comma != std::string::npos) {
                v.id_data.token = line.substr(comma + 1);
            }
        }
    } else {
        for (uint64_t i = 0; i < voters; i++) {
            session.add_voter("voter" + std::to_string(i) + "@example.org");
        }
    }

    DeterministicRng choice_rng(config.seed ^ 0xc401ce5ull);
    auto choices =
        parse_choices(choices_csv, session.voters().size(), config.choices.size(), choice_rng);
    auto tally = session.run_full(choices);

    if (!out_chain.empty()) write_file(out_chain, session.ledger().export_chain());
    if (!out_transcript.empty()) write_file(out_transcript, session.transcript());
    if (!out_state.empty()) write_file(out_state, session.ledger().state_snapshot().dump(2) + "\n");

    auto measured = metrics::measure_session(session.ledger(), session.io());
    nlohmann::json report{{"status", actors::to_string(session.status())},
                          {"tally", tally.to_json()},
                          {"measurement", measured.to_json()},
                          {"chain_height", session.ledger().height()}};
    emit(json, report,
         "status: " + std::string(actors::to_string(session.status())) + "\ntally: " +
             tally.to_json().dump() + "\nheight: " + std::to_string(session.ledger().height()));
    return session.status() == actors::SessionStatus::kDone ? kOk : kProtocol;
}

int cmd_session_tally(const std::string& chain_path, bool json) {
    auto report = actors::tally_oracle(read_file(chain_path));
    nlohmann::json j{{"status", actors::to_string(report.status)},
                     {"computed", report.computed.to_json()},
                     {"legitimacy_ok", report.legitimacy_ok},
                     {"tag_uniqueness_ok", report.tag_uniqueness_ok}};
    if (report.posted) j["posted"] = report.posted->to_json();
    if (!report.detail.empty()) j["detail"] = report.detail;
    emit(json, j,
         "oracle: " + std::string(actors::to_string(report.status)) + "\nrecount: " +
             report.computed.to_json().dump());
    switch (report.status) {
        case actors::OracleReport::Status::kMatch: return kOk;
        case actors::OracleReport::Status::kMismatch: return kIntegrity;
        default: return kProtocol;
    }
}

int cmd_session_audit(const std::string& chain_path, uint64_t from, uint64_t to, bool json) {
    auto ledger = ledger::Ledger::replay(read_file(chain_path), contracts::session_deploy_hook());
    auto entries = ledger->audit(from, to);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json args = nlohmann::json::array();
        for (const auto& a : e.tx.args) args.push_back(to_hex(a));
        out.push_back(nlohmann::json{{"height", e.height},
                                     {"index", e.index},
                                     {"sender", to_hex(e.tx.sender)},
                                     {"target", e.tx.target},
                                     {"method", e.tx.method},
                                     {"args", args},
                                     {"ok", e.receipt.ok},
                                     {"revert", e.receipt.revert_reason},
                                     {"note", e.receipt.note}});
    }
    if (json) {
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& e : out) {
            std::cout << e.at("height").get<uint64_t>() << ":" << e.at("index").get<uint64_t>()
                      << " " << e.at("target").get<std::string>() << "."
                      << e.at("method").get<std::string>() << " "
                      << (e.at("ok").get<bool>()
                              ? "ok"
                              : "revert:" + e.at("revert").get<std::string>());
            std::string note = e.at("note").get<std::string>();
            if (!note.empty()) std::cout << " (" << note << ")";
            std::cout << "\n";
        }
    }
    return kOk;
}

int cmd_metrics_storage(uint64_t n, const std::string& format) {
    auto r = metrics::storage_report(n);
    if (format == "json") {
        std::cout << metrics::storage_report_json(r).dump(2) << "\n";
    } else {
        std::cout << metrics::storage_table({r});
    }
    return kOk;
}

int cmd_metrics_phases(uint64_t m, uint64_t k_i, uint64_t n_e, uint64_t k_e,
                       const std::string& mode, const std::string& format) {
    auto rows = metrics::phase_costs(m, k_i, n_e, k_e,
                                     mode == "vote_claim" ? contracts::ConfMode::kVoteClaim
                                                          : contracts::ConfMode::kThreshold);
    if (format == "json") {
        std::cout << metrics::phase_costs_json(rows).dump(2) << "\n";
    } else {
        std::cout << metrics::phase_table(rows);
    }
    return kOk;
}

int cmd_scenario_run(const std::string& path, bool json) {
    auto result = scenario::run_script_file(path);
    if (json) {
        std::cout << result.report.dump(2) << "\n";
    } else {
        std::cout << "scenario " << result.name << ": " << (result.passed ? "PASS" : "FAIL")
                  << "\n";
        for (const auto& f : result.failures) std::cout << "  " << f << "\n";
        const auto& obs = result.report.at("observations");
        std::cout << "  observations: " << obs.dump() << "\n";
    }
    return result.passed ? kOk : kProtocol;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linkable-ring-signature voting kit"};
    app.require_subcommand(1);
    app.fallthrough(); // allow global flags after subcommand names
    bool json = false;
    app.add_flag("--json", json, "machine-readable JSON on stdout");

    std::string curve_name, params_file;
    uint64_t seed = 0;

    // keygen
    auto* keygen = app.add_subcommand("keygen", "generate a signing key pair");
    keygen->add_option("--curve", curve_name, "built-in curve name");
    keygen->add_option("--params", params_file, "curve parameter JSON file");
    auto* kg_seed = keygen->add_option("--seed", seed, "deterministic randomness seed");

    // ring
    auto* ring = app.add_subcommand("ring", "ring signature operations");
    ring->require_subcommand(1);
    std::string ring_path, sk_arg, msg_path, sig_arg, sig2_arg, out_path;
    int signer = -1;

    auto* sign = ring->add_subcommand("sign", "produce a linkable ring signature");
    sign->add_option("--ring", ring_path, "ring JSON file")->required();
    sign->add_option("--sk", sk_arg, "secret key hex (or @file)")->required();
    sign->add_option("--msg", msg_path, "message file")->required();
    sign->add_option("--signer", signer, "0-based ring index (default: derived from key)");
    auto* sign_seed = sign->add_option("--seed", seed, "deterministic randomness seed");
    sign->add_option("--out", out_path, "write the signature hex to a file");

    auto* verify = ring->add_subcommand("verify", "verify a ring signature");
    verify->add_option("--ring", ring_path, "ring JSON file")->required();
    verify->add_option("--msg", msg_path, "message file")->required();
    verify->add_option("--sig", sig_arg, "signature hex (or @file)")->required();

    auto* link = ring->add_subcommand("link", "check whether two signatures share a signer");
    link->add_option("--curve", curve_name, "built-in curve name");
    link->add_option("--params", params_file, "curve parameter JSON file");
    link->add_option("--sig1", sig_arg, "first signature hex (or @file)")->required();
    link->add_option("--sig2", sig2_arg, "second signature hex (or @file)")->required();

    // session
    auto* session = app.add_subcommand("session", "voting session lifecycle");
    session->require_subcommand(1);
    std::string config_path, chain_path, roster, choices_csv, transcript_path, state_path, mode =
                                                                                               "threshold";
    uint64_t voters = 0, from = 0, to = UINT64_MAX;

    auto* init = session->add_subcommand("init", "write a session config template");
    init->add_option("--out", out_path, "output path (default stdout)");
    init->add_option("--mode", mode, "threshold | vote_claim");

    auto* run = session->add_subcommand("run", "run a full voting session");
    run->add_option("--config", config_path, "session config JSON")->required();
    run->add_option("--voters", voters, "number of generated voters");
    run->add_option("--roster", roster, "voter roster CSV (email[,token])");
    run->add_option("--choices", choices_csv, "comma-separated choice per voter");
    run->add_option("--out-chain", chain_path, "write the chain export (JSON lines)");
    run->add_option("--out-transcript", transcript_path, "write the phase transcript");
    run->add_option("--out-state", state_path, "write the final state snapshot");

    auto* tally = session->add_subcommand("tally", "independent recount from a chain export");
    tally->add_option("--chain", chain_path, "chain export file")->required();

    auto* audit = session->add_subcommand("audit", "decode the transaction log");
    audit->add_option("--chain", chain_path, "chain export file")->required();
    audit->add_option("--from", from, "first height");
    audit->add_option("--to", to, "last height");

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "storage and scalability reports");
    metrics_cmd->require_subcommand(1);
    uint64_t n = 0, m = 0, k_i = 1, n_e = 1, k_e = 1;
    std::string format = "table";

    auto* storage = metrics_cmd->add_subcommand("storage", "signature storage sizes");
    storage->add_option("--n", n, "ring size")->required();
    storage->add_option("--format", format, "json | table");

    auto* phases = metrics_cmd->add_subcommand("phases", "per-phase ledger costs");
    phases->add_option("--m", m, "number of voters")->required();
    phases->add_option("--k-i", k_i, "identity endorsements per voter");
    phases->add_option("--n-e", n_e, "confidentiality managers");
    phases->add_option("--k-e", k_e, "shares needed for reconstruction");
    phases->add_option("--mode", mode, "threshold | vote_claim");
    phases->add_option("--format", format, "json | table");

    // scenario
    auto* scen = app.add_subcommand("scenario", "scripted adversarial runs");
    scen->require_subcommand(1);
    std::string scenario_path;
    auto* scen_run = scen->add_subcommand("run", "execute a scenario script");
    scen_run->add_option("file", scenario_path, "scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*keygen) return cmd_keygen(curve_name, params_file, !kg_seed->empty(), seed, json);
        if (*sign) {
            return cmd_ring_sign(ring_path, sk_arg, msg_path, signer, !sign_seed->empty(), seed,
                                 out_path, json);
        }
        if (*verify) return cmd_ring_verify(ring_path, msg_path, sig_arg, json);
        if (*link) return cmd_ring_link(curve_name, params_file, sig_arg, sig2_arg, json);
        if (*init) return cmd_session_init(out_path, mode);
        if (*run) {
            return cmd_session_run(config_path, voters, roster, choices_csv, chain_path,
                                   transcript_path, state_path, json);
        }
        if (*tally) return cmd_session_tally(chain_path, json);
        if (*audit) return cmd_session_audit(chain_path, from, to, json);
        if (*storage) return cmd_metrics_storage(n, format);
        if (*phases) return cmd_metrics_phases(m, k_i, n_e, k_e, mode, format);
        if (*scen_run) return cmd_scenario_run(scenario_path, json);
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return kIntegrity;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kProtocol;
    }
    return kValidation;
}
