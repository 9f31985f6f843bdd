#include "ringvote/contracts.hpp"

#include <algorithm>

#include "ringvote/errors.hpp"

namespace ringvote::contracts {

using ledger::ExecutionContext;
using ledger::Revert;

const char* to_string(ConfMode m) {
    return m == ConfMode::kThreshold ? "threshold" : "vote_claim";
}
const char* to_string(EventMode m) {
    return m == EventMode::kHeight ? "height" : "organizer";
}
const char* to_string(ConfManager::Status s) {
    switch (s) {
        case ConfManager::Status::kInit: return "init";
        case ConfManager::Status::kKeyPublished: return "key_published";
        case ConfManager::Status::kReconstructed: return "reconstructed";
        case ConfManager::Status::kCorruptShares: return "corrupt_shares";
    }
    return "unknown";
}

void SessionParams::validate() const {
    if (!(open_height < close_height && close_height < tally_close_height)) {
        throw ValidationError("session: need open < close < tally_close heights");
    }
    if (choices.empty()) throw ValidationError("session: no choices configured");
    if (identity_managers.empty()) throw ValidationError("session: no identity managers");
    if (k_i < 1 || k_i > n_i()) throw ValidationError("session: K_i out of range");
    if (mode == ConfMode::kThreshold) {
        if (conf_managers.empty()) throw ValidationError("session: no confidentiality managers");
        if (k_e < 1 || k_e > n_e()) throw ValidationError("session: K_e out of range");
        if (n_e() > 12) throw ValidationError("session: N_e capped at 12");
    }
    Curve::builtin(curve_name); // throws for unknown names
}

nlohmann::json SessionParams::to_json() const {
    auto accounts = [](const std::vector<ledger::AccountId>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& id : v) a.push_back(to_hex(id));
        return a;
    };
    return nlohmann::json{{"curve", curve_name},
                          {"open_height", open_height},
                          {"close_height", close_height},
                          {"tally_close_height", tally_close_height},
                          {"mode", to_string(mode)},
                          {"event_mode", to_string(event_mode)},
                          {"overwrite", overwrite},
                          {"k_i", k_i},
                          {"k_e", k_e},
                          {"choices", choices},
                          {"organizer", to_hex(organizer)},
                          {"identity_managers", accounts(identity_managers)},
                          {"conf_managers", accounts(conf_managers)}};
}

static ledger::AccountId account_from_hex(const std::string& hex) {
    Bytes b = from_hex(hex);
    if (b.size() != 32) throw ValidationError("account id must be 32 bytes");
    ledger::AccountId id;
    std::copy(b.begin(), b.end(), id.begin());
    return id;
}

SessionParams SessionParams::from_json(const nlohmann::json& j) {
    SessionParams p;
    p.curve_name = j.value("curve", "secp256k1");
    p.open_height = j.at("open_height").get<uint64_t>();
    p.close_height = j.at("close_height").get<uint64_t>();
    p.tally_close_height = j.at("tally_close_height").get<uint64_t>();
    std::string mode = j.value("mode", "threshold");
    if (mode == "threshold") {
        p.mode = ConfMode::kThreshold;
    } else if (mode == "vote_claim") {
        p.mode = ConfMode::kVoteClaim;
    } else {
        throw ValidationError("session: unknown mode " + mode);
    }
    std::string ev = j.value("event_mode", "height");
    if (ev == "height") {
        p.event_mode = EventMode::kHeight;
    } else if (ev == "organizer") {
        p.event_mode = EventMode::kOrganizer;
    } else {
        throw ValidationError("session: unknown event mode " + ev);
    }
    p.overwrite = j.value("overwrite", false);
    p.k_i = j.at("k_i").get<uint32_t>();
    p.k_e = j.value("k_e", 1u);
    p.choices = j.at("choices").get<std::vector<std::string>>();
    p.organizer = account_from_hex(j.at("organizer").get<std::string>());
    for (const auto& m : j.at("identity_managers")) {
        p.identity_managers.push_back(account_from_hex(m.get<std::string>()));
    }
    if (j.contains("conf_managers")) {
        for (const auto& m : j.at("conf_managers")) {
            p.conf_managers.push_back(account_from_hex(m.get<std::string>()));
        }
    }
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------
// IdStorage
// ---------------------------------------------------------------------------

IdStorage::IdStorage(const Curve& curve, SessionParams params)
    : Contract(kName), curve_(curve), params_(std::move(params)) {}

void IdStorage::execute(ExecutionContext& ctx, const std::string& method,
                        const std::vector<Bytes>& args) {
    if (method == methods::kSignUp) {
        signup(ctx, args);
        return;
    }
    throw Revert("UNKNOWN_METHOD");
}

void IdStorage::signup(ExecutionContext& ctx, const std::vector<Bytes>& args) {
    bool authorized = std::find(params_.identity_managers.begin(),
                                params_.identity_managers.end(),
                                ctx.sender) != params_.identity_managers.end();
    if (!authorized) throw Revert("UNAUTHORIZED_MANAGER");

    auto* bb = ctx.registry.find_as<BallotBox>(BallotBox::kName);
    if (!bb || !bb->registration_open()) throw Revert("REGISTRATION_CLOSED");

    if (args.size() != 2) throw Revert("BAD_ARGS");
    Point pk = curve_.deserialize_point(args[0]); // throws -> BAD_ARGS
    if (pk.infinity) throw Revert("BAD_ARGS");
    const Bytes& pk_bytes = args[0];
    const Bytes& label = args[1];
    if (label.size() != kDigestSize) throw Revert("BAD_ARGS");

    if (committed_pks_.count(pk_bytes)) throw Revert("DUPLICATE_PK");
    if (committed_labels_.count(label)) throw Revert("DUPLICATE_LABEL");

    auto [it, fresh] = pending_.try_emplace(pk_bytes, Pending{label, {}});
    if (!fresh && it->second.label != label) throw Revert("LABEL_MISMATCH");
    if (!it->second.endorsers.insert(ctx.sender).second) throw Revert("DUPLICATE_ENDORSEMENT");

    if (it->second.endorsers.size() >= params_.k_i) {
        // committed: append entry, advance the cumulative ring digest
        entries_.push_back(Entry{pk_bytes, label});
        committed_pks_.insert(pk_bytes);
        committed_labels_.insert(label);
        if (entries_.size() == 1) {
            digest_ = curve_.hash_scalar(pk_bytes);
        } else {
            Bytes in = curve_.serialize_scalar(digest_);
            append(in, pk_bytes);
            digest_ = curve_.hash_scalar(in);
        }
        pending_.erase(it);
        ctx.receipt.note = "committed";
    } else {
        ctx.receipt.note = "pending " + std::to_string(it->second.endorsers.size()) + "/" +
                           std::to_string(params_.k_i);
    }
}

Scalar IdStorage::ring_digest() const {
    if (entries_.empty()) throw ValidationError("idstorage: no committed entries");
    return digest_;
}

std::vector<Point> IdStorage::ring_points() const {
    std::vector<Point> out;
    out.reserve(entries_.size());
    for (const Entry& e : entries_) out.push_back(curve_.deserialize_point(e.pk));
    return out;
}

Bytes IdStorage::state_bytes() const {
    std::vector<Bytes> fields;
    for (const Entry& e : entries_) {
        fields.push_back(e.pk);
        fields.push_back(e.label);
    }
    // pending endorsements are part of the deterministic state
    for (const auto& [pk, pending] : pending_) {
        fields.push_back(pk);
        fields.push_back(pending.label);
        for (const auto& account : pending.endorsers) {
            fields.emplace_back(account.begin(), account.end());
        }
    }
    Bytes marker;
    append_be32(marker, uint32_t(entries_.size()));
    fields.push_back(marker);
    return encode_fields(fields);
}

nlohmann::json IdStorage::state_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const Entry& e : entries_) {
        entries.push_back({{"pk", to_hex(e.pk)}, {"label", to_hex(e.label)}});
    }
    nlohmann::json pending = nlohmann::json::array();
    for (const auto& [pk, p] : pending_) {
        pending.push_back(
            {{"pk", to_hex(pk)}, {"label", to_hex(p.label)}, {"endorsements", p.endorsers.size()}});
    }
    nlohmann::json j{{"entries", entries}, {"pending", pending}, {"k_i", params_.k_i}};
    if (!entries_.empty()) j["ring_digest"] = to_hex(curve_.serialize_scalar(digest_));
    return j;
}

// ---------------------------------------------------------------------------
// BallotBox
// ---------------------------------------------------------------------------

BallotBox::BallotBox(const Curve& curve, SessionParams params)
    : Contract(kName), curve_(curve), params_(std::move(params)) {}

void BallotBox::on_height(uint64_t height, ledger::ContractRegistry& registry) {
    if (params_.event_mode != EventMode::kHeight) return;
    if (height == params_.open_height && !opened_) do_open(registry);
    if (height == params_.close_height && opened_ && !closed_) do_close();
}

void BallotBox::do_open(ledger::ContractRegistry& registry) {
    auto* ids = registry.find_as<IdStorage>(IdStorage::kName);
    if (ids && ids->committed_count() > 0) {
        ring_ = ids->ring_points();
        ring_digest_ = ids->ring_digest();
    }
    opened_ = true;
    ring_obj_.reset();
    precomp_.reset();
}

void BallotBox::do_close() {
    closed_ = true;
}

bool BallotBox::in_redeem_window(uint64_t height) const {
    return closed_ && height < params_.tally_close_height;
}

Scalar BallotBox::frozen_ring_digest() const {
    if (!opened_ || ring_.empty()) throw ValidationError("ballotbox: ring not frozen");
    return ring_digest_;
}

std::optional<nlohmann::json> BallotBox::result() const {
    if (!result_json_) return std::nullopt;
    return nlohmann::json::parse(*result_json_);
}

const lsag::Ring& BallotBox::ring_object() const {
    if (!ring_obj_) {
        ring_obj_ = std::make_unique<lsag::Ring>(curve_, ring_);
        // tables pay off for big rings; below the threshold the plain path wins
        if (ring_.size() >= 32) precomp_ = std::make_unique<lsag::RingPrecomp>(*ring_obj_);
    }
    return *ring_obj_;
}

void BallotBox::execute(ExecutionContext& ctx, const std::string& method,
                        const std::vector<Bytes>& args) {
    if (method == methods::kVote) {
        vote(ctx, args);
    } else if (method == methods::kVoteBatch) {
        vote_batch(ctx, args);
    } else if (method == methods::kSetResult) {
        set_result(ctx, args);
    } else if (method == methods::kRedeem) {
        redeem(ctx, args);
    } else if (method == methods::kOpen || method == methods::kClose) {
        if (params_.event_mode != EventMode::kOrganizer) throw Revert("BAD_EVENT_MODE");
        if (ctx.sender != params_.organizer) throw Revert("UNAUTHORIZED");
        if (method == methods::kOpen) {
            if (opened_) throw Revert("ALREADY_OPEN");
            do_open(ctx.registry);
        } else {
            if (!opened_ || closed_) throw Revert("ALREADY_CLOSED");
            do_close();
        }
    } else {
        throw Revert("UNKNOWN_METHOD");
    }
}

// Returns "accepted" or "replaced"; throws Revert on rejection.
std::string BallotBox::vote_one(const Bytes& sig_bytes, const Bytes& ballot_bytes) {
    if (!active()) throw Revert("VOTE_CLOSED");

    lsag::Signature sig;
    try {
        sig = lsag::deserialize(curve_, sig_bytes);
    } catch (const ValidationError&) {
        throw Revert("BAD_SIGNATURE", "malformed");
    }

    // ballot bytes must use the session's configured encoding
    if (params_.mode == ConfMode::kThreshold) {
        try {
            conf::deserialize_ciphertext(curve_, ballot_bytes);
        } catch (const ValidationError&) {
            throw Revert("BAD_BALLOT");
        }
    } else if (ballot_bytes.size() != kDigestSize) {
        throw Revert("BAD_BALLOT");
    }

    Bytes tag = curve_.serialize_point(sig.tag);
    auto existing = tag_to_ballot_.find(tag);
    if (existing != tag_to_ballot_.end() && !params_.overwrite) {
        throw Revert("DOUBLE_VOTE");
    }

    if (ring_.empty()) throw Revert("BAD_SIGNATURE", "empty ring");
    auto status = lsag::verify_detailed(ring_object(), ballot_bytes, sig, precomp_.get());
    if (status != lsag::VerifyStatus::kOk) {
        throw Revert("BAD_SIGNATURE", lsag::to_string(status));
    }

    if (existing != tag_to_ballot_.end()) {
        BallotRecord& r = ballots_[existing->second];
        r.ballot = ballot_bytes;
        r.sig = sig_bytes;
        return "replaced";
    }
    ballots_.push_back(BallotRecord{ballot_bytes, sig_bytes, tag, false, {}, {}});
    tag_to_ballot_[tag] = ballots_.size() - 1;
    return "accepted";
}

void BallotBox::vote(ExecutionContext& ctx, const std::vector<Bytes>& args) {
    if (args.size() != 2) throw Revert("BAD_ARGS");
    ctx.receipt.note = vote_one(args[0], args[1]);
}

void BallotBox::vote_batch(ExecutionContext& ctx, const std::vector<Bytes>& args) {
    if (args.empty() || args.size() % 2 != 0) throw Revert("BAD_ARGS");
    // items are independent: a rejected ballot never blocks the rest
    nlohmann::json outcomes = nlohmann::json::array();
    for (size_t i = 0; i < args.size(); i += 2) {
        try {
            outcomes.push_back(vote_one(args[i], args[i + 1]));
        } catch (const Revert& r) {
            outcomes.push_back(std::string("revert:") + r.reason);
        }
    }
    ctx.receipt.note = outcomes.dump();
}

void BallotBox::set_result(ExecutionContext& ctx, const std::vector<Bytes>& args) {
    if (ctx.sender != params_.organizer) throw Revert("UNAUTHORIZED");
    if (!closed_) throw Revert("VOTE_NOT_CLOSED");
    if (params_.mode == ConfMode::kVoteClaim && ctx.height < params_.tally_close_height) {
        throw Revert("TALLY_NOT_CLOSED"); // redeem window must have ended
    }
    if (result_json_) throw Revert("RESULT_ALREADY_SET");
    if (args.size() != 1) throw Revert("BAD_ARGS");
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(ringvote::to_string(BytesView(args[0])));
    } catch (const nlohmann::json::exception&) {
        throw Revert("BAD_ARGS");
    }
    result_json_ = parsed.dump();
}

void BallotBox::redeem(ExecutionContext& ctx, const std::vector<Bytes>& args) {
    if (params_.mode != ConfMode::kVoteClaim) throw Revert("NOT_CLAIM_MODE");
    if (!in_redeem_window(ctx.height)) throw Revert("REDEEM_CLOSED");
    if (args.size() != 3) throw Revert("BAD_ARGS");
    const Bytes& plaintext = args[0];
    const Bytes& salt = args[1];
    if (salt.size() != conf::kSaltSize || args[2].size() != 4) throw Revert("BAD_ARGS");
    uint32_t index = read_be32(args[2], 0);
    if (index >= ballots_.size()) throw Revert("BAD_INDEX");

    BallotRecord& record = ballots_[index];
    if (record.redeemed) throw Revert("ALREADY_REDEEMED");
    conf::BallotCommitment commitment;
    std::copy(record.ballot.begin(), record.ballot.end(), commitment.digest.begin());
    if (!conf::check_claim(commitment, plaintext, salt)) throw Revert("BAD_CLAIM");

    record.redeemed = true;
    record.plaintext = plaintext;
    record.salt = salt;
}

Bytes BallotBox::state_bytes() const {
    std::vector<Bytes> fields;
    Bytes flags{uint8_t(opened_), uint8_t(closed_)};
    fields.push_back(flags);
    if (!ring_.empty()) {
        fields.push_back(curve_.serialize_scalar(ring_digest_));
        Bytes ring_blob;
        for (const Point& p : ring_) append(ring_blob, curve_.serialize_point(p));
        fields.push_back(ring_blob);
    }
    for (const BallotRecord& b : ballots_) {
        std::vector<Bytes> rec{b.ballot, b.sig, b.tag, Bytes{uint8_t(b.redeemed)}, b.plaintext,
                               b.salt};
        fields.push_back(encode_fields(rec));
    }
    fields.push_back(result_json_ ? to_bytes(*result_json_) : Bytes{});
    Bytes counts;
    append_be32(counts, uint32_t(ring_.size()));
    append_be32(counts, uint32_t(ballots_.size()));
    append_be32(counts, uint32_t(result_json_ ? 1 : 0));
    fields.push_back(counts);
    return encode_fields(fields);
}

nlohmann::json BallotBox::state_json() const {
    nlohmann::json ballots = nlohmann::json::array();
    for (const BallotRecord& b : ballots_) {
        nlohmann::json jb{{"ballot", to_hex(b.ballot)},
                          {"sig", to_hex(b.sig)},
                          {"tag", to_hex(b.tag)}};
        if (params_.mode == ConfMode::kVoteClaim) {
            jb["redeemed"] = b.redeemed;
            if (b.redeemed) jb["plaintext"] = to_hex(b.plaintext);
        }
        ballots.push_back(std::move(jb));
    }
    nlohmann::json j{{"choices", params_.choices},
                     {"active", active()},
                     {"opened", opened_},
                     {"closed", closed_},
                     {"mode", to_string(params_.mode)},
                     {"overwrite", params_.overwrite},
                     {"ballots", ballots},
                     {"tags", tag_to_ballot_.size()}};
    if (!ring_.empty()) {
        j["ring_digest"] = to_hex(curve_.serialize_scalar(ring_digest_));
        j["ring_size"] = ring_.size();
    }
    if (result_json_) j["result"] = nlohmann::json::parse(*result_json_);
    return j;
}

// ---------------------------------------------------------------------------
// ConfManager
// ---------------------------------------------------------------------------

ConfManager::ConfManager(const Curve& curve, SessionParams params)
    : Contract(kName), curve_(curve), params_(std::move(params)) {}

uint32_t ConfManager::manager_index(const ledger::AccountId& sender) const {
    for (size_t i = 0; i < params_.conf_managers.size(); i++) {
        if (params_.conf_managers[i] == sender) return uint32_t(i + 1);
    }
    return 0;
}

const BallotBox& ConfManager::ballot_box(ledger::ContractRegistry& registry) const {
    auto* bb = registry.find_as<BallotBox>(BallotBox::kName);
    if (!bb) throw Revert("MISSING_BALLOT_BOX");
    return *bb;
}

void ConfManager::execute(ExecutionContext& ctx, const std::string& method,
                          const std::vector<Bytes>& args) {
    if (method == methods::kCommitShare) {
        commit_share(ctx, args);
    } else if (method == methods::kPublishKey) {
        publish_key(ctx, args);
    } else if (method == methods::kRevealShare) {
        reveal_share(ctx, args);
    } else {
        throw Revert("UNKNOWN_METHOD");
    }
}

void ConfManager::commit_share(ExecutionContext& ctx, const std::vector<Bytes>& args) {
    if (args.size() != 2 || args[0].size() != 4 || args[1].size() != kDigestSize) {
        throw Revert("BAD_ARGS");
    }
    uint32_t index = read_be32(args[0], 0);
    if (index == 0 || manager_index(ctx.sender) != index) throw Revert("UNAUTHORIZED_MANAGER");
    if (ballot_box(ctx.registry).opened()) throw Revert("AFTER_OPEN");
    if (commitments_.count(index)) throw Revert("DUPLICATE_INDEX");
    Digest d;
    std::copy(args[1].begin(), args[1].end(), d.begin());
    commitments_[index] = d;
}

void ConfManager::publish_key(ExecutionContext& ctx, const std::vector<Bytes>& args) {
    if (args.size() != 1) throw Revert("BAD_ARGS");
    uint32_t index = manager_index(ctx.sender);
    if (index == 0) throw Revert("UNAUTHORIZED_MANAGER");
    if (ballot_box(ctx.registry).opened()) throw Revert("AFTER_OPEN");
    Point ek;
    try {
        ek = curve_.deserialize_point(args[0]);
    } catch (const ValidationError&) {
        throw Revert("BAD_ARGS");
    }
    if (ek.infinity) throw Revert("BAD_ARGS");
    if (!published_.insert(index).second) throw Revert("DUPLICATE_PUBLISH");
    if (!ek_) {
        ek_ = ek;
        status_ = Status::kKeyPublished;
    } else if (!(*ek_ == ek)) {
        published_.erase(index);
        throw Revert("KEY_MISMATCH");
    }
}

void ConfManager::reveal_share(ExecutionContext& ctx, const std::vector<Bytes>& args) {
    if (args.size() != 2 || args[0].size() != 4) throw Revert("BAD_ARGS");
    uint32_t index = read_be32(args[0], 0);
    if (index == 0 || manager_index(ctx.sender) != index) throw Revert("UNAUTHORIZED_MANAGER");
    if (!ballot_box(ctx.registry).closed()) throw Revert("EARLY_DISCLOSURE");
    if (reveals_.count(index)) throw Revert("DUPLICATE_INDEX");
    Scalar value;
    try {
        value = curve_.deserialize_scalar(args[1]);
    } catch (const ValidationError&) {
        throw Revert("BAD_ARGS");
    }
    reveals_[index] = value;
    if (!dk_) try_reconstruct();
}

void ConfManager::try_reconstruct() {
    // Interpolation consistency is only checkable here: accept the first K_e
    // subset whose reconstruction matches ek, otherwise flag the state.
    if (!ek_ || reveals_.size() < params_.k_e) return;
    std::vector<conf::SecretShare> all;
    all.reserve(reveals_.size());
    for (const auto& [idx, value] : reveals_) all.push_back({idx, value});

    uint32_t k = params_.k_e;
    std::vector<uint32_t> pick(k);
    // iterate K-subsets in lexicographic order (N_e is capped small)
    std::function<bool(uint32_t, uint32_t)> search = [&](uint32_t start, uint32_t depth) {
        if (depth == k) {
            std::vector<conf::SecretShare> subset;
            for (uint32_t i = 0; i < k; i++) subset.push_back(all[pick[i]]);
            Scalar candidate = conf::reconstruct_key(curve_, subset, k);
            if (curve_.mul_generator(candidate) == *ek_) {
                dk_ = candidate;
                status_ = Status::kReconstructed;
                return true;
            }
            return false;
        }
        for (uint32_t i = start; i + (k - depth) <= all.size(); i++) {
            pick[depth] = i;
            if (search(i + 1, depth + 1)) return true;
        }
        return false;
    };
    if (!search(0, 0)) status_ = Status::kCorruptShares;
}

std::optional<Point> ConfManager::encryption_key() const {
    return ek_;
}
std::optional<Scalar> ConfManager::decryption_key() const {
    return dk_;
}

Bytes ConfManager::state_bytes() const {
    std::vector<Bytes> fields;
    fields.push_back(Bytes{uint8_t(status_)});
    fields.push_back(ek_ ? curve_.serialize_point(*ek_) : Bytes{});
    fields.push_back(dk_ ? curve_.serialize_scalar(*dk_) : Bytes{});
    for (const auto& [idx, digest] : commitments_) {
        Bytes b;
        append_be32(b, idx);
        append(b, BytesView(digest.data(), digest.size()));
        fields.push_back(b);
    }
    for (uint32_t idx : published_) {
        Bytes b;
        append_be32(b, idx);
        fields.push_back(b);
    }
    for (const auto& [idx, value] : reveals_) {
        Bytes b;
        append_be32(b, idx);
        append(b, curve_.serialize_scalar(value));
        fields.push_back(b);
    }
    Bytes counts;
    append_be32(counts, uint32_t(commitments_.size()));
    append_be32(counts, uint32_t(published_.size()));
    append_be32(counts, uint32_t(reveals_.size()));
    fields.push_back(counts);
    return encode_fields(fields);
}

nlohmann::json ConfManager::state_json() const {
    nlohmann::json reveals = nlohmann::json::array();
    for (const auto& [idx, value] : reveals_) {
        reveals.push_back({{"index", idx}, {"value", to_hex(curve_.serialize_scalar(value))}});
    }
    nlohmann::json j{{"status", to_string(status_)},
                     {"k_e", params_.k_e},
                     {"n_e", params_.n_e()},
                     {"committed_shares", commitments_.size()},
                     {"published", published_.size()},
                     {"reveals", reveals}};
    if (ek_) j["ek"] = to_hex(curve_.serialize_point(*ek_));
    if (dk_) j["dk"] = to_hex(curve_.serialize_scalar(*dk_));
    return j;
}

// ---------------------------------------------------------------------------
// Deployment
// ---------------------------------------------------------------------------

ledger::DeployHook session_deploy_hook() {
    return [](ledger::ContractRegistry& registry, const ledger::Transaction& tx,
              ExecutionContext& ctx) {
        if (tx.method != methods::kDeploy) throw Revert("UNKNOWN_METHOD");
        if (!registry.empty()) throw Revert("ALREADY_DEPLOYED");
        if (tx.args.size() != 1) throw Revert("BAD_ARGS");
        SessionParams params;
        try {
            params = SessionParams::from_json(
                nlohmann::json::parse(ringvote::to_string(tx.args[0])));
        } catch (const nlohmann::json::exception& e) {
            throw Revert("BAD_ARGS", e.what());
        }
        if (ctx.sender != params.organizer) throw Revert("UNAUTHORIZED");
        const Curve& curve = Curve::builtin(params.curve_name);
        registry.add(std::make_unique<IdStorage>(curve, params));
        registry.add(std::make_unique<BallotBox>(curve, params));
        registry.add(std::make_unique<ConfManager>(curve, params));
    };
}

} // namespace ringvote::contracts
