#include "ringvote/actors.hpp"

#include <algorithm>

#include "ringvote/errors.hpp"

namespace ringvote::actors {

using contracts::BallotBox;
using contracts::ConfManager;
using contracts::ConfMode;
using contracts::EventMode;
using contracts::IdStorage;
using ledger::AccountId;
using ledger::Transaction;

const char* to_string(SessionStatus s) {
    switch (s) {
        case SessionStatus::kSetup: return "setup";
        case SessionStatus::kRegistration: return "registration";
        case SessionStatus::kVoting: return "voting";
        case SessionStatus::kTally: return "tally";
        case SessionStatus::kDone: return "done";
        case SessionStatus::kUndecryptable: return "undecryptable";
    }
    return "unknown";
}

const char* to_string(OracleReport::Status s) {
    switch (s) {
        case OracleReport::Status::kMatch: return "match";
        case OracleReport::Status::kMismatch: return "mismatch";
        case OracleReport::Status::kNoResultPosted: return "no-result-posted";
        case OracleReport::Status::kUndecryptable: return "undecryptable";
    }
    return "unknown";
}

void SessionConfig::validate() const {
    contracts::SessionParams probe;
    probe.curve_name = curve_name;
    probe.open_height = open_height;
    probe.close_height = close_height;
    probe.tally_close_height = tally_close_height;
    probe.mode = mode;
    probe.event_mode = event_mode;
    probe.k_i = k_i;
    probe.k_e = k_e;
    probe.choices = choices;
    probe.identity_managers.resize(n_i);
    probe.conf_managers.resize(n_e);
    probe.validate();
    if (proxy_batch < 1) throw ValidationError("session: proxy_batch must be >= 1");
}

nlohmann::json SessionConfig::to_json() const {
    return nlohmann::json{{"curve", curve_name},
                          {"open_height", open_height},
                          {"close_height", close_height},
                          {"tally_close_height", tally_close_height},
                          {"mode", contracts::to_string(mode)},
                          {"event_mode", contracts::to_string(event_mode)},
                          {"overwrite", overwrite},
                          {"k_i", k_i},
                          {"n_i", n_i},
                          {"k_e", k_e},
                          {"n_e", n_e},
                          {"choices", choices},
                          {"seed", seed},
                          {"proxy_batch", proxy_batch}};
}

SessionConfig SessionConfig::from_json(const nlohmann::json& j) {
    SessionConfig c;
    c.curve_name = j.value("curve", c.curve_name);
    c.open_height = j.value("open_height", c.open_height);
    c.close_height = j.value("close_height", c.close_height);
    c.tally_close_height = j.value("tally_close_height", c.tally_close_height);
    if (j.contains("mode")) {
        std::string m = j.at("mode").get<std::string>();
        if (m == "threshold") {
            c.mode = ConfMode::kThreshold;
        } else if (m == "vote_claim") {
            c.mode = ConfMode::kVoteClaim;
        } else {
            throw ValidationError("config: unknown mode " + m);
        }
    }
    if (j.contains("event_mode")) {
        std::string m = j.at("event_mode").get<std::string>();
        if (m == "height") {
            c.event_mode = EventMode::kHeight;
        } else if (m == "organizer") {
            c.event_mode = EventMode::kOrganizer;
        } else {
            throw ValidationError("config: unknown event mode " + m);
        }
    }
    c.overwrite = j.value("overwrite", false);
    c.k_i = j.value("k_i", c.k_i);
    c.n_i = j.value("n_i", c.n_i);
    c.k_e = j.value("k_e", c.k_e);
    c.n_e = j.value("n_e", c.n_e);
    if (j.contains("choices")) c.choices = j.at("choices").get<std::vector<std::string>>();
    c.seed = j.value("seed", c.seed);
    c.proxy_batch = j.value("proxy_batch", c.proxy_batch);
    c.validate();
    return c;
}

std::string canonical_email(std::string_view raw) {
    size_t b = raw.find_first_not_of(" \t\r\n");
    size_t e = raw.find_last_not_of(" \t\r\n");
    if (b == std::string_view::npos) return "";
    std::string out(raw.substr(b, e - b + 1));
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return out;
}

Digest label_from_email(std::string_view email) {
    return sha256(to_bytes(canonical_email(email)));
}

IdentityManager::IdentityManager(std::string name, Predicate predicate)
    : name_(std::move(name)), account_(ledger::account_from_name(name_)), predicate_(predicate) {}

void IdentityManager::allow(std::string_view email) {
    allow_list_.insert(canonical_email(email));
}

void IdentityManager::set_token_secret(Bytes secret) {
    token_secret_ = std::move(secret);
}

std::string IdentityManager::issue_token(std::string_view email) const {
    Digest tag = hmac_sha256(token_secret_, to_bytes(canonical_email(email)));
    return to_hex(tag);
}

bool IdentityManager::verify_identity(const IdData& id) const {
    switch (predicate_) {
        case Predicate::kAllowList:
            return allow_list_.count(canonical_email(id.email)) > 0;
        case Predicate::kHmacToken: {
            if (!id.token) return false;
            return *id.token == issue_token(id.email);
        }
    }
    return false;
}

uint64_t TallyResult::total() const {
    uint64_t t = invalid + unclaimed;
    for (const auto& [_, n] : counts) t += n;
    return t;
}

nlohmann::json TallyResult::to_json() const {
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [choice, n] : counts) c[std::to_string(choice)] = n;
    return nlohmann::json{{"counts", c}, {"invalid", invalid}, {"unclaimed", unclaimed}};
}

TallyResult TallyResult::from_json(const nlohmann::json& j) {
    TallyResult r;
    for (const auto& [key, value] : j.at("counts").items()) {
        r.counts[uint32_t(std::stoul(key))] = value.get<uint64_t>();
    }
    r.invalid = j.value("invalid", 0ull);
    r.unclaimed = j.value("unclaimed", 0ull);
    return r;
}

Proxy::Proxy(ledger::Ledger& ledger, uint32_t batch_size)
    : ledger_(ledger), batch_size_(batch_size) {}

void Proxy::enqueue(Bytes sig, Bytes ballot) {
    pending_.emplace_back(std::move(sig), std::move(ballot));
}

std::vector<Digest> Proxy::flush() {
    std::vector<Digest> receipts;
    while (!pending_.empty()) {
        size_t take = std::min<size_t>(batch_size_, pending_.size());
        Transaction tx;
        tx.sender = ledger::kAnonymous; // the proxy strips voter identity
        tx.target = BallotBox::kName;
        tx.nonce = nonce_++;
        if (take == 1) {
            tx.method = contracts::methods::kVote;
            tx.args = {pending_[0].first, pending_[0].second};
        } else {
            tx.method = contracts::methods::kVoteBatch;
            for (size_t i = 0; i < take; i++) {
                tx.args.push_back(pending_[i].first);
                tx.args.push_back(pending_[i].second);
            }
        }
        Digest d = ledger_.submit(tx);
        for (size_t i = 0; i < take; i++) receipts.push_back(d);
        pending_.erase(pending_.begin(), pending_.begin() + take);
    }
    return receipts;
}

// ---------------------------------------------------------------------------
// Session
// ---------------------------------------------------------------------------

Session::Session(SessionConfig config)
    : config_(std::move(config)), ledger_(contracts::session_deploy_hook()),
      rng_(config_.seed), proxy_(ledger_, config_.proxy_batch) {
    config_.validate();
    organizer_account_ = ledger::account_from_name("organizer");
    params_.curve_name = config_.curve_name;
    params_.open_height = config_.open_height;
    params_.close_height = config_.close_height;
    params_.tally_close_height = config_.tally_close_height;
    params_.mode = config_.mode;
    params_.event_mode = config_.event_mode;
    params_.overwrite = config_.overwrite;
    params_.k_i = config_.k_i;
    params_.k_e = config_.k_e;
    params_.choices = config_.choices;
    params_.organizer = organizer_account_;
    for (uint32_t i = 1; i <= config_.n_i; i++) {
        id_managers_.emplace_back("id-manager-" + std::to_string(i),
                                  IdentityManager::Predicate::kAllowList);
        params_.identity_managers.push_back(id_managers_.back().account());
    }
    for (uint32_t i = 1; i <= config_.n_e; i++) {
        conf_manager_accounts_.push_back(
            ledger::account_from_name("conf-manager-" + std::to_string(i)));
    }
    params_.conf_managers = conf_manager_accounts_;
}

BallotBox& Session::ballot_box() {
    auto* bb = ledger_.contract<BallotBox>(BallotBox::kName);
    if (!bb) throw ValidationError("session: not deployed");
    return *bb;
}

const BallotBox& Session::ballot_box() const {
    auto* bb = ledger_.contract<BallotBox>(BallotBox::kName);
    if (!bb) throw ValidationError("session: not deployed");
    return *bb;
}

ConfManager& Session::conf_manager() {
    auto* cm = ledger_.contract<ConfManager>(ConfManager::kName);
    if (!cm) throw ValidationError("session: not deployed");
    return *cm;
}

IdStorage& Session::id_storage() {
    auto* ids = ledger_.contract<IdStorage>(IdStorage::kName);
    if (!ids) throw ValidationError("session: not deployed");
    return *ids;
}

Digest Session::send(const AccountId& sender, const std::string& target,
                     const std::string& method, std::vector<Bytes> args) {
    Transaction tx;
    tx.sender = sender;
    tx.target = target;
    tx.method = method;
    tx.args = std::move(args);
    tx.nonce = nonce_++;
    return ledger_.submit(tx);
}

void Session::note(const std::string& event, nlohmann::json detail) {
    nlohmann::json j{{"event", event}, {"height", ledger_.height()}};
    if (!detail.is_null()) j["detail"] = std::move(detail);
    transcript_ += j.dump();
    transcript_ += '\n';
}

void Session::require_status(SessionStatus expected, const char* op) const {
    if (status_ != expected) {
        throw ValidationError(std::string(op) + ": session is in phase " +
                              std::string(to_string(status_)));
    }
}

void Session::setup() {
    require_status(SessionStatus::kSetup, "setup");
    Digest d = send(organizer_account_, "session", contracts::methods::kDeploy,
                    {to_bytes(params_.to_json().dump())});
    ledger_.produce_block();
    const auto* r = ledger_.receipt(d);
    if (!r || !r->ok) throw ValidationError("setup: deploy failed");
    io_["Setup"].rounds = 1;
    status_ = SessionStatus::kRegistration;
    note("setup", {{"receipt", to_hex(d)}});
}

VoterContext& Session::add_voter(const std::string& email) {
    VoterContext v;
    v.index = voters_.size();
    v.email = canonical_email(email);
    v.id_data.email = v.email;
    v.keypair = lsag::keygen(Curve::builtin(config_.curve_name), rng_);
    for (auto& m : id_managers_) m.allow(v.email);
    voters_.push_back(std::move(v));
    return voters_.back();
}

bool Session::register_voter(VoterContext& voter, bool seal) {
    Digest label = label_from_email(voter.email);
    const Curve& curve = Curve::builtin(config_.curve_name);
    uint32_t endorsements = 0;
    for (auto& manager : id_managers_) {
        if (endorsements == config_.k_i) break;
        if (!manager.verify_identity(voter.id_data)) continue;
        Digest receipt = send(manager.account(), IdStorage::kName, contracts::methods::kSignUp,
                              {curve.serialize_point(voter.keypair.pk), digest_bytes(label)});
        voter.receipts.push_back(receipt);
        endorsements++;
    }
    if (endorsements < config_.k_i) {
        // every manager rejected the identity evidence
        note("registration_failed", {{"voter", voter.email}});
        return false;
    }
    io_["Registration"].rounds = config_.k_i;
    if (!seal) return true;
    ledger_.produce_block();
    update_registration(voter);
    if (!voter.registered) note("registration_reverted", {{"voter", voter.email}});
    return voter.registered;
}

void Session::update_registration(VoterContext& voter) {
    const Curve& curve = Curve::builtin(config_.curve_name);
    const auto& entries = id_storage().entries();
    Bytes pk = curve.serialize_point(voter.keypair.pk);
    for (size_t i = 0; i < entries.size(); i++) {
        if (entries[i].pk == pk) {
            voter.registered = true;
            voter.ring_index = i;
            return;
        }
    }
}

void Session::register_all() {
    for (auto& v : voters_) register_voter(v, /*seal=*/false);
    ledger_.produce_block();
    // committed order defines the ring order
    for (auto& v : voters_) update_registration(v);
    note("registration", {{"committed", id_storage().committed_count()}});
}

void Session::run_encryption() {
    require_status(SessionStatus::kRegistration, "encryption");
    if (config_.mode != ConfMode::kThreshold) return;
    const Curve& curve = Curve::builtin(config_.curve_name);

    // trusted dealer: generate the pair, split, hand shares to managers
    dealer_keys_ = conf::generate_keypair(curve, rng_);
    dealer_shares_ = conf::share_key(curve, dealer_keys_->dk, config_.k_e, config_.n_e, rng_);

    // round 1: every manager binds itself to its share
    for (uint32_t i = 1; i <= config_.n_e; i++) {
        Bytes idx;
        append_be32(idx, i);
        Bytes commitment =
            digest_bytes(sha256(curve.serialize_scalar(dealer_shares_[i - 1].value)));
        send(conf_manager_accounts_[i - 1], ConfManager::kName, contracts::methods::kCommitShare,
             {idx, commitment});
    }
    ledger_.produce_block();
    // each manager reads the round-1 state before confirming
    io_["Encryption"].reads += config_.n_e;

    // round 2: every manager confirms the same master key
    for (uint32_t i = 1; i <= config_.n_e; i++) {
        send(conf_manager_accounts_[i - 1], ConfManager::kName, contracts::methods::kPublishKey,
             {curve.serialize_point(dealer_keys_->ek)});
    }
    ledger_.produce_block();
    io_["Encryption"].rounds = 2;
    note("encryption", {{"ek", to_hex(curve.serialize_point(dealer_keys_->ek))}});
}

void Session::advance_to(uint64_t height) {
    while (ledger_.height() < height) ledger_.produce_block();
}

void Session::open_vote() {
    require_status(SessionStatus::kRegistration, "open_vote");
    if (ledger_.height() >= config_.open_height) {
        throw ValidationError("open_vote: schedule too tight, already past open height");
    }
    advance_to(config_.open_height);
    if (config_.event_mode == EventMode::kOrganizer) {
        send(organizer_account_, BallotBox::kName, contracts::methods::kOpen, {});
        ledger_.produce_block();
    }
    if (!ballot_box().opened()) throw ValidationError("open_vote: box did not open");

    const Curve& curve = Curve::builtin(config_.curve_name);
    const auto& frozen = ballot_box().frozen_ring();
    if (!frozen.empty()) {
        signer_ring_ = std::make_shared<lsag::Ring>(curve, frozen);
        if (frozen.size() >= 32) {
            signer_precomp_ = std::make_shared<lsag::RingPrecomp>(*signer_ring_);
        }
    }
    status_ = SessionStatus::kVoting;
    note("vote_open", {{"ring_size", frozen.size()}});
}

Bytes Session::encode_plaintext(uint32_t choice, BytesView salt) {
    Bytes pt;
    append_be32(pt, choice);
    append(pt, salt);
    return pt;
}

std::optional<uint32_t> Session::decode_choice(BytesView plaintext, size_t choice_count) {
    if (plaintext.size() != 4 + 32) return std::nullopt;
    uint32_t choice = read_be32(plaintext, 0);
    if (choice >= choice_count) return std::nullopt;
    return choice;
}

Digest Session::vote(VoterContext& voter, uint32_t choice) {
    require_status(SessionStatus::kVoting, "vote");
    if (choice >= config_.choices.size()) {
        throw ValidationError("vote: choice index out of range"); // client-side check
    }
    const Curve& curve = Curve::builtin(config_.curve_name);

    // fetch the ring and the encryption key from the chain (one read)
    io_["Voting"].reads += 1;
    io_["Voting"].rounds = 1;

    Bytes plaintext = encode_plaintext(choice, rng_.bytes(32));
    Bytes ballot;
    if (config_.mode == ConfMode::kThreshold) {
        auto ek = conf_manager().encryption_key();
        if (!ek) throw ValidationError("vote: no encryption key on chain");
        ballot = conf::serialize_ciphertext(curve,
                                            conf::encrypt_ballot(curve, *ek, plaintext, rng_));
    } else {
        Bytes salt = rng_.bytes(conf::kSaltSize);
        auto commitment = conf::commit_ballot(plaintext, salt);
        ballot = digest_bytes(commitment.digest);
        voter.claim_plaintext = plaintext;
        voter.claim_salt = salt;
    }

    lsag::Signature sig;
    if (voter.registered && signer_ring_) {
        sig = lsag::sign(*signer_ring_, voter.ring_index, voter.keypair.sk, ballot, rng_,
                         signer_precomp_.get());
    } else {
        // unregistered key: sign over a self-extended ring; the box will
        // reject it because the ring digest cannot match the frozen one
        std::vector<Point> keys = ballot_box().frozen_ring();
        keys.push_back(voter.keypair.pk);
        lsag::Ring adhoc(curve, keys);
        sig = lsag::sign(adhoc, keys.size() - 1, voter.keypair.sk, ballot, rng_);
    }

    voter.submitted_ballot = ballot;
    inflight_.push_back(voter.index);
    proxy_.enqueue(lsag::serialize(curve, sig), ballot);

    Digest receipt{};
    if (inflight_.size() - flushed_count_ >= proxy_.batch_size()) {
        flush_pending_receipts();
        receipt = voter.receipts.back();
    }
    return receipt;
}

std::vector<Digest> Session::flush_pending_receipts() {
    auto receipts = proxy_.flush();
    // receipts arrive in enqueue order for the flushed ballots
    size_t base = flushed_count_;
    for (size_t i = 0; i < receipts.size(); i++) {
        voters_[inflight_[base + i]].receipts.push_back(receipts[i]);
    }
    flushed_count_ += receipts.size();
    return receipts;
}

void Session::flush_votes() {
    require_status(SessionStatus::kVoting, "flush_votes");
    flush_pending_receipts();
    ledger_.produce_block();
    if (ledger_.height() >= config_.close_height) {
        throw ValidationError("flush_votes: schedule too tight, vote block is past close");
    }
    note("votes_flushed", {{"stored", ballot_box().ballots().size()}});
}

void Session::close_vote() {
    require_status(SessionStatus::kVoting, "close_vote");
    advance_to(config_.close_height);
    if (config_.event_mode == EventMode::kOrganizer) {
        send(organizer_account_, BallotBox::kName, contracts::methods::kClose, {});
        ledger_.produce_block();
    }
    if (ballot_box().active()) throw ValidationError("close_vote: box still active");
    status_ = SessionStatus::kTally;
    note("vote_close", {{"ballots", ballot_box().ballots().size()}});
}

void Session::withhold_shares(const std::set<uint32_t>& manager_indices) {
    withholding_ = manager_indices;
}

bool Session::leak_shares(uint32_t count) const {
    if (config_.mode != ConfMode::kThreshold || !dealer_keys_) return false;
    if (count > dealer_shares_.size()) count = uint32_t(dealer_shares_.size());
    if (count < config_.k_e) return false;
    std::vector<conf::SecretShare> leaked(dealer_shares_.begin(),
                                          dealer_shares_.begin() + count);
    const Curve& curve = Curve::builtin(config_.curve_name);
    Scalar candidate = conf::reconstruct_key(curve, leaked, config_.k_e);
    return curve.mul_generator(candidate) == dealer_keys_->ek;
}

void Session::reveal_shares() {
    require_status(SessionStatus::kTally, "reveal_shares");
    if (config_.mode != ConfMode::kThreshold) return;
    const Curve& curve = Curve::builtin(config_.curve_name);
    // K_e disclosures suffice to reconstruct; further managers stay quiet
    uint32_t revealed = 0;
    for (uint32_t i = 1; i <= config_.n_e && revealed < config_.k_e; i++) {
        if (withholding_.count(i)) continue;
        Bytes idx;
        append_be32(idx, i);
        send(conf_manager_accounts_[i - 1], ConfManager::kName, contracts::methods::kRevealShare,
             {idx, curve.serialize_scalar(dealer_shares_[i - 1].value)});
        revealed++;
    }
    ledger_.produce_block();
    io_["Tally"].rounds = 1;
    note("shares_revealed", {{"revealed", revealed}, {"withheld", withholding_.size()}});
}

TallyResult Session::count_ballots(const Scalar& dk) const {
    const Curve& curve = Curve::builtin(config_.curve_name);
    auto* bb = ledger_.contract<BallotBox>(BallotBox::kName);
    TallyResult result;
    for (const auto& record : bb->ballots()) {
        auto ct = conf::deserialize_ciphertext(curve, record.ballot);
        Bytes plaintext = conf::decrypt_ballot(curve, dk, ct);
        auto choice = decode_choice(plaintext, config_.choices.size());
        if (choice) {
            result.counts[*choice]++;
        } else {
            result.invalid++;
        }
    }
    return result;
}

TallyResult Session::count_claims() const {
    auto* bb = ledger_.contract<BallotBox>(BallotBox::kName);
    TallyResult result;
    for (const auto& record : bb->ballots()) {
        if (!record.redeemed) {
            result.unclaimed++;
            continue;
        }
        auto choice = decode_choice(record.plaintext, config_.choices.size());
        if (choice) {
            result.counts[*choice]++;
        } else {
            result.invalid++;
        }
    }
    return result;
}

void Session::redeem(VoterContext& voter) {
    require_status(SessionStatus::kTally, "redeem");
    if (config_.mode != ConfMode::kVoteClaim) throw ValidationError("redeem: not claim mode");
    if (voter.claim_plaintext.empty()) throw ValidationError("redeem: voter has no claim");
    const auto& ballots = ballot_box().ballots();
    std::optional<uint32_t> index;
    for (uint32_t i = 0; i < ballots.size(); i++) {
        if (ballots[i].ballot == voter.submitted_ballot) {
            index = i;
            break;
        }
    }
    if (!index) throw ValidationError("redeem: ballot not found on chain");
    Bytes idx;
    append_be32(idx, *index);
    Digest d = send(ledger::kAnonymous, BallotBox::kName, contracts::methods::kRedeem,
                    {voter.claim_plaintext, voter.claim_salt, idx});
    voter.receipts.push_back(d);
    voter.ballot_index = *index;
}

void Session::redeem_all() {
    for (auto& v : voters_) {
        if (!v.claim_plaintext.empty()) redeem(v);
    }
    ledger_.produce_block();
    io_["Tally"].rounds = 1;
    note("redeems", {{"redeemed", ballot_box().ballots().size()}});
}

std::optional<TallyResult> Session::posted_result() {
    auto r = ballot_box().result();
    if (!r) return std::nullopt;
    return TallyResult::from_json(*r);
}

TallyResult Session::tally() {
    require_status(SessionStatus::kTally, "tally");
    TallyResult result;
    if (config_.mode == ConfMode::kThreshold) {
        // triggered on block production: the key materializes once enough
        // managers revealed
        auto dk = conf_manager().decryption_key();
        if (!dk) {
            status_ = SessionStatus::kUndecryptable;
            note("tally_undecryptable",
                 {{"reveals", conf_manager().reveal_count()},
                  {"status", contracts::to_string(conf_manager().status())}});
            return result;
        }
        result = count_ballots(*dk);
    } else {
        advance_to(config_.tally_close_height); // redeem window must end first
        result = count_claims();
    }

    TallyResult to_post = result;
    if (doctor_result_) {
        to_post.counts[0] += 1; // tampered tally for the verifiability harness
    }
    send(organizer_account_, BallotBox::kName, contracts::methods::kSetResult,
         {to_bytes(to_post.to_json().dump())});
    ledger_.produce_block();
    status_ = SessionStatus::kDone;
    note("tally", to_post.to_json());
    return result;
}

TallyResult Session::run_full(const std::vector<uint32_t>& choices) {
    if (choices.size() != voters_.size()) {
        throw ValidationError("run_full: one choice per voter required");
    }
    setup();
    register_all();
    run_encryption();
    open_vote();
    for (size_t i = 0; i < voters_.size(); i++) vote(voters_[i], choices[i]);
    flush_votes();
    close_vote();
    if (config_.mode == ConfMode::kThreshold) {
        reveal_shares();
    } else {
        redeem_all();
    }
    return tally();
}

// ---------------------------------------------------------------------------
// Universal-verifiability oracle
// ---------------------------------------------------------------------------

OracleReport tally_oracle(const std::string& chain_jsonl) {
    auto ledger = ledger::Ledger::replay(chain_jsonl, contracts::session_deploy_hook());
    auto* bb = ledger->contract<BallotBox>(BallotBox::kName);
    if (!bb) throw ValidationError("oracle: chain contains no session");
    const contracts::SessionParams& params = bb->params();
    const Curve& curve = Curve::builtin(params.curve_name);

    OracleReport report;

    // legitimacy: every stored ballot must carry a signature that verifies
    // against the frozen registration ring
    report.legitimacy_ok = true;
    std::set<Bytes> tags;
    if (!bb->ballots().empty()) {
        lsag::Ring ring(curve, bb->frozen_ring());
        for (const auto& record : bb->ballots()) {
            lsag::Signature sig;
            try {
                sig = lsag::deserialize(curve, record.sig);
            } catch (const ValidationError&) {
                report.legitimacy_ok = false;
                continue;
            }
            if (!lsag::verify(ring, record.ballot, sig)) report.legitimacy_ok = false;
            tags.insert(record.tag);
        }
    }
    report.tag_uniqueness_ok = tags.size() == bb->ballots().size();

    // recount strictly from chain data
    if (params.mode == ConfMode::kThreshold) {
        // encryption key: first accepted publication
        std::optional<Point> ek;
        std::vector<conf::SecretShare> reveals;
        for (const auto& entry : ledger->audit()) {
            if (!entry.receipt.ok || entry.tx.target != ConfManager::kName) continue;
            if (!ek && entry.tx.method == contracts::methods::kPublishKey) {
                ek = curve.deserialize_point(entry.tx.args[0]);
            }
            if (entry.tx.method == contracts::methods::kRevealShare) {
                reveals.push_back(conf::SecretShare{
                    read_be32(entry.tx.args[0], 0),
                    curve.deserialize_scalar(entry.tx.args[1])});
            }
        }
        std::optional<Scalar> dk;
        if (ek && reveals.size() >= params.k_e) {
            // first K_e-subset consistent with the published key
            std::vector<uint32_t> pick(params.k_e);
            std::function<bool(uint32_t, uint32_t)> search = [&](uint32_t start, uint32_t depth) {
                if (depth == params.k_e) {
                    std::vector<conf::SecretShare> subset;
                    for (uint32_t i = 0; i < params.k_e; i++) subset.push_back(reveals[pick[i]]);
                    Scalar candidate = conf::reconstruct_key(curve, subset, params.k_e);
                    if (curve.mul_generator(candidate) == *ek) {
                        dk = candidate;
                        return true;
                    }
                    return false;
                }
                for (uint32_t i = start; i + (params.k_e - depth) <= reveals.size(); i++) {
                    pick[depth] = i;
                    if (search(i + 1, depth + 1)) return true;
                }
                return false;
            };
            search(0, 0);
        }
        if (!dk) {
            report.status = OracleReport::Status::kUndecryptable;
            report.detail = "no consistent share quorum on chain";
            return report;
        }
        for (const auto& record : bb->ballots()) {
            auto ct = conf::deserialize_ciphertext(curve, record.ballot);
            Bytes plaintext = conf::decrypt_ballot(curve, *dk, ct);
            auto choice = Session::decode_choice(plaintext, params.choices.size());
            if (choice) {
                report.computed.counts[*choice]++;
            } else {
                report.computed.invalid++;
            }
        }
    } else {
        // vote claim: count plaintexts whose on-chain redeem matched the digest
        for (const auto& record : bb->ballots()) {
            if (!record.redeemed) {
                report.computed.unclaimed++;
                continue;
            }
            conf::BallotCommitment commitment;
            std::copy(record.ballot.begin(), record.ballot.end(), commitment.digest.begin());
            if (!conf::check_claim(commitment, record.plaintext, record.salt)) {
                report.computed.invalid++;
                continue;
            }
            auto choice = Session::decode_choice(record.plaintext, params.choices.size());
            if (choice) {
                report.computed.counts[*choice]++;
            } else {
                report.computed.invalid++;
            }
        }
    }

    auto posted = bb->result();
    if (!posted) {
        report.status = OracleReport::Status::kNoResultPosted;
        return report;
    }
    report.posted = TallyResult::from_json(*posted);
    report.status = (*report.posted == report.computed) ? OracleReport::Status::kMatch
                                                        : OracleReport::Status::kMismatch;
    if (report.status == OracleReport::Status::kMismatch) {
        report.detail = "posted result differs from independent recount";
    }
    return report;
}

} // namespace ringvote::actors
