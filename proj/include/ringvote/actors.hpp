#pragma once

#include <deque>
#include <optional>
#include <set>

#include "ringvote/contracts.hpp"

namespace ringvote::actors {

// Voting-session parameters as supplied by the operator. Accounts are derived
// from stable actor names at session start; `seed` drives every random draw,
// so one config value reproduces the chain byte for byte.
struct SessionConfig {
    std::string curve_name = "toy64007";
    uint64_t open_height = 6;
    uint64_t close_height = 12;
    uint64_t tally_close_height = 18;
    contracts::ConfMode mode = contracts::ConfMode::kThreshold;
    contracts::EventMode event_mode = contracts::EventMode::kHeight;
    bool overwrite = false;
    uint32_t k_i = 1;
    uint32_t n_i = 3;
    uint32_t k_e = 2;
    uint32_t n_e = 3;
    std::vector<std::string> choices = {"yes", "no"};
    uint64_t seed = 1;
    uint32_t proxy_batch = 1; // ballots per proxy transaction

    void validate() const;
    nlohmann::json to_json() const;
    static SessionConfig from_json(const nlohmann::json& j);
};

// Opaque identity evidence a voter presents to identity managers.
struct IdData {
    std::string email;
    std::optional<std::string> token; // hex HMAC tag, for token-checking managers
};

std::string canonical_email(std::string_view raw); // trimmed, lowercased
Digest label_from_email(std::string_view email);   // H(canonical email)

// One identity manager with a pluggable verification predicate.
class IdentityManager {
public:
    enum class Predicate { kAllowList, kHmacToken };

    IdentityManager(std::string name, Predicate predicate);

    const ledger::AccountId& account() const { return account_; }
    const std::string& name() const { return name_; }
    Predicate predicate() const { return predicate_; }

    void allow(std::string_view email);
    void set_token_secret(Bytes secret);
    std::string issue_token(std::string_view email) const; // hex HMAC over the email

    bool verify_identity(const IdData& id) const;

private:
    std::string name_;
    ledger::AccountId account_;
    Predicate predicate_;
    std::set<std::string> allow_list_;
    Bytes token_secret_;
};

struct VoterContext {
    size_t index = 0; // position in the session's voter list
    std::string email;
    IdData id_data;
    lsag::KeyPair keypair;
    bool registered = false;
    size_t ring_index = 0; // position in the frozen ring once registered
    std::vector<Digest> receipts;
    // vote-claim retention: needed again at redeem time
    Bytes claim_plaintext;
    Bytes claim_salt;
    std::optional<uint32_t> ballot_index;
    Bytes submitted_ballot; // exact bytes handed to the proxy
};

struct TallyResult {
    std::map<uint32_t, uint64_t> counts; // choice index -> votes
    uint64_t invalid = 0;
    uint64_t unclaimed = 0;

    uint64_t total() const;
    nlohmann::json to_json() const;
    static TallyResult from_json(const nlohmann::json& j);
    friend bool operator==(const TallyResult&, const TallyResult&) = default;
};

enum class SessionStatus { kSetup, kRegistration, kVoting, kTally, kDone, kUndecryptable };
const char* to_string(SessionStatus s);

// Per-phase instrumentation: writes come from the chain, reads and rounds
// from the actors (they are off-chain observations).
struct PhaseIo {
    uint64_t reads = 0;
    uint64_t rounds = 0;
};

// Batching submitter that strips sender identity from ballot transactions.
class Proxy {
public:
    Proxy(ledger::Ledger& ledger, uint32_t batch_size);

    // returns the receipt for every enqueued ballot once its batch flushes
    void enqueue(Bytes sig, Bytes ballot);
    std::vector<Digest> flush(); // receipts in enqueue order of the flushed batch
    bool idle() const { return pending_.empty(); }
    size_t batch_size() const { return batch_size_; }

private:
    ledger::Ledger& ledger_;
    uint32_t batch_size_;
    uint64_t nonce_ = 0;
    std::vector<std::pair<Bytes, Bytes>> pending_;
};

// Drives the full six-phase workflow (setup, registration, vote open, voting,
// vote close, tally) over an in-process ledger, with fault-injection hooks for
// the adversarial harnesses.
class Session {
public:
    explicit Session(SessionConfig config);

    // --- phase drivers -----------------------------------------------------
    void setup();                                   // deploy + configure
    VoterContext& add_voter(const std::string& email);
    // Submits K_i endorsements; with seal, also produces the block and
    // reports whether the entry committed (reverts surface via receipts).
    bool register_voter(VoterContext& voter, bool seal = true);
    void register_all();
    void run_encryption();                          // threshold mode: 2 rounds
    void advance_to(uint64_t height);
    void open_vote();                               // pads blocks / fires event
    Digest vote(VoterContext& voter, uint32_t choice);
    void flush_votes();                             // drain the proxy, seal a block
    void close_vote();
    void reveal_shares();                           // honest managers reveal
    TallyResult tally();                            // decrypt/collect + SetResult
    void redeem(VoterContext& voter);               // vote-claim second round
    void redeem_all();

    // convenience: the whole honest workflow; choices[i] is voter i's vote
    TallyResult run_full(const std::vector<uint32_t>& choices);

    // --- fault injection ---------------------------------------------------
    void withhold_shares(const std::set<uint32_t>& manager_indices);
    // leak e shares to the adversary before close; returns true when the
    // adversary can already reconstruct the decryption key
    bool leak_shares(uint32_t count) const;
    void doctor_result(bool enable) { doctor_result_ = enable; }

    // --- accessors ----------------------------------------------------------
    SessionStatus status() const { return status_; }
    const SessionConfig& config() const { return config_; }
    const contracts::SessionParams& params() const { return params_; }
    ledger::Ledger& ledger() { return ledger_; }
    const ledger::Ledger& ledger() const { return ledger_; }
    std::deque<VoterContext>& voters() { return voters_; }
    std::vector<IdentityManager>& identity_managers() { return id_managers_; }
    contracts::BallotBox& ballot_box();
    const contracts::BallotBox& ballot_box() const;
    contracts::ConfManager& conf_manager();
    contracts::IdStorage& id_storage();
    const std::map<std::string, PhaseIo>& io() const { return io_; }
    const std::string& transcript() const { return transcript_; }
    std::optional<TallyResult> posted_result();
    const std::optional<conf::EncryptionKeyPair>& dealer_keys() const { return dealer_keys_; }

    static Bytes encode_plaintext(uint32_t choice, BytesView salt);
    static std::optional<uint32_t> decode_choice(BytesView plaintext, size_t choice_count);

private:
    Digest send(const ledger::AccountId& sender, const std::string& target,
                const std::string& method, std::vector<Bytes> args);
    std::vector<Digest> flush_pending_receipts();
    void update_registration(VoterContext& voter);
    void note(const std::string& event, nlohmann::json detail = {});
    void require_status(SessionStatus expected, const char* op) const;
    TallyResult count_ballots(const Scalar& dk) const;
    TallyResult count_claims() const;

    SessionConfig config_;
    contracts::SessionParams params_;
    ledger::Ledger ledger_;
    DeterministicRng rng_;
    ledger::AccountId organizer_account_;
    std::vector<IdentityManager> id_managers_;
    std::vector<ledger::AccountId> conf_manager_accounts_;
    std::vector<conf::SecretShare> dealer_shares_; // distributed off-chain
    std::optional<conf::EncryptionKeyPair> dealer_keys_;
    std::set<uint32_t> withholding_;
    bool doctor_result_ = false;
    std::deque<VoterContext> voters_;
    Proxy proxy_;
    std::vector<size_t> inflight_; // voter index per enqueued ballot
    size_t flushed_count_ = 0;
    uint64_t nonce_ = 0;
    SessionStatus status_ = SessionStatus::kSetup;
    std::map<std::string, PhaseIo> io_;
    std::string transcript_;
    std::shared_ptr<lsag::Ring> signer_ring_;
    std::shared_ptr<lsag::RingPrecomp> signer_precomp_;
};

// Universal-verifiability check: recount the session from the exported chain
// alone and compare with the posted result.
struct OracleReport {
    enum class Status { kMatch, kMismatch, kNoResultPosted, kUndecryptable };
    Status status = Status::kUndecryptable;
    TallyResult computed;
    std::optional<TallyResult> posted;
    bool legitimacy_ok = false;     // every stored ballot verifies against the ring
    bool tag_uniqueness_ok = false; // distinct tags == stored ballots
    std::string detail;

    bool match() const { return status == Status::kMatch; }
};

OracleReport tally_oracle(const std::string& chain_jsonl);

const char* to_string(OracleReport::Status s);

} // namespace ringvote::actors
