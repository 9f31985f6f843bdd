#pragma once

#include <optional>
#include <set>

#include "ringvote/confidentiality.hpp"
#include "ringvote/ledger.hpp"
#include "ringvote/lsag.hpp"

namespace ringvote::contracts {

enum class ConfMode { kThreshold, kVoteClaim };
enum class EventMode { kHeight, kOrganizer };

const char* to_string(ConfMode m);
const char* to_string(EventMode m);

// On-chain session configuration, carried verbatim by the deploy transaction
// so that replay reconstructs the contracts from raw chain data.
struct SessionParams {
    std::string curve_name = "secp256k1";
    uint64_t open_height = 0;
    uint64_t close_height = 0;
    uint64_t tally_close_height = 0;
    ConfMode mode = ConfMode::kThreshold;
    EventMode event_mode = EventMode::kHeight;
    bool overwrite = false;
    uint32_t k_i = 1; // identity-manager endorsements per entry
    uint32_t k_e = 1; // shares needed to reconstruct the decryption key
    std::vector<std::string> choices;
    ledger::AccountId organizer{};
    std::vector<ledger::AccountId> identity_managers; // N_i
    std::vector<ledger::AccountId> conf_managers;     // N_e, share index i at [i-1]

    uint32_t n_i() const { return uint32_t(identity_managers.size()); }
    uint32_t n_e() const { return uint32_t(conf_managers.size()); }

    void validate() const; // throws ValidationError
    nlohmann::json to_json() const;
    static SessionParams from_json(const nlohmann::json& j);
};

namespace methods {
inline constexpr const char* kDeploy = "Deploy";
inline constexpr const char* kSignUp = "SignUp";
inline constexpr const char* kVote = "Vote";
inline constexpr const char* kVoteBatch = "VoteBatch";
inline constexpr const char* kSetResult = "SetResult";
inline constexpr const char* kPublishKey = "PublishKey";
inline constexpr const char* kCommitShare = "CommitShare";
inline constexpr const char* kRevealShare = "RevealShare";
inline constexpr const char* kRedeem = "Redeem";
inline constexpr const char* kOpen = "Open";
inline constexpr const char* kClose = "Close";
} // namespace methods

class BallotBox;

// Bulletin board of eligible voters: append-only (pk, label) entries, each
// committed once K_i distinct authorized managers endorse it.
class IdStorage final : public ledger::Contract {
public:
    static constexpr const char* kName = "idstorage";

    struct Entry {
        Bytes pk;    // uncompressed point
        Bytes label; // 32-byte public roster identifier
    };

    IdStorage(const Curve& curve, SessionParams params);

    void execute(ledger::ExecutionContext& ctx, const std::string& method,
                 const std::vector<Bytes>& args) override;
    Bytes state_bytes() const override;
    nlohmann::json state_json() const override;

    const std::vector<Entry>& entries() const { return entries_; }
    size_t committed_count() const { return entries_.size(); }
    Scalar ring_digest() const; // cumulative HPK over committed entries
    std::vector<Point> ring_points() const;

private:
    void signup(ledger::ExecutionContext& ctx, const std::vector<Bytes>& args);

    const Curve& curve_;
    SessionParams params_;
    std::vector<Entry> entries_;
    std::set<Bytes> committed_pks_;
    std::set<Bytes> committed_labels_;
    struct Pending {
        Bytes label;
        std::set<ledger::AccountId> endorsers;
    };
    std::map<Bytes, Pending> pending_;
    Scalar digest_{};
};

// Ballot storage: freezes the registration ring at vote open, accepts ballots
// carrying valid ring signatures with fresh tags, and exposes the posted
// result after tally.
class BallotBox final : public ledger::Contract {
public:
    static constexpr const char* kName = "ballotbox";

    struct BallotRecord {
        Bytes ballot; // ciphertext wire (threshold) or 32-byte digest (vote claim)
        Bytes sig;    // serialized ring signature
        Bytes tag;    // serialized linkability tag
        bool redeemed = false;
        Bytes plaintext; // vote-claim: filled by Redeem
        Bytes salt;
    };

    BallotBox(const Curve& curve, SessionParams params);

    void execute(ledger::ExecutionContext& ctx, const std::string& method,
                 const std::vector<Bytes>& args) override;
    void on_height(uint64_t height, ledger::ContractRegistry& registry) override;
    Bytes state_bytes() const override;
    nlohmann::json state_json() const override;

    const SessionParams& params() const { return params_; }
    bool opened() const { return opened_; }
    bool closed() const { return closed_; }
    bool active() const { return opened_ && !closed_; }
    bool registration_open() const { return !opened_; }
    bool in_redeem_window(uint64_t height) const;

    const std::vector<BallotRecord>& ballots() const { return ballots_; }
    size_t tag_count() const { return tag_to_ballot_.size(); }
    bool has_tag(const Bytes& tag) const { return tag_to_ballot_.count(tag) > 0; }
    const std::vector<Point>& frozen_ring() const { return ring_; }
    Scalar frozen_ring_digest() const;
    std::optional<nlohmann::json> result() const;

private:
    friend class ConfManager;
    void do_open(ledger::ContractRegistry& registry);
    void do_close();
    std::string vote_one(const Bytes& sig_bytes, const Bytes& ballot_bytes); // outcome or throws
    void vote(ledger::ExecutionContext& ctx, const std::vector<Bytes>& args);
    void vote_batch(ledger::ExecutionContext& ctx, const std::vector<Bytes>& args);
    void set_result(ledger::ExecutionContext& ctx, const std::vector<Bytes>& args);
    void redeem(ledger::ExecutionContext& ctx, const std::vector<Bytes>& args);
    const lsag::Ring& ring_object() const;

    const Curve& curve_;
    SessionParams params_;
    bool opened_ = false;
    bool closed_ = false;
    std::vector<Point> ring_; // frozen at open
    Scalar ring_digest_{};
    std::vector<BallotRecord> ballots_;
    std::map<Bytes, size_t> tag_to_ballot_;
    std::optional<std::string> result_json_; // canonical dump

    // derived caches, rebuilt lazily after replay; not part of the state
    mutable std::unique_ptr<lsag::Ring> ring_obj_;
    mutable std::unique_ptr<lsag::RingPrecomp> precomp_;
};

// Encryption-key lifecycle: the key is published before vote open; shares are
// revealed only after close, and the decryption key materializes once any K_e
// consistent shares are on chain.
class ConfManager final : public ledger::Contract {
public:
    static constexpr const char* kName = "confmanager";

    enum class Status { kInit, kKeyPublished, kReconstructed, kCorruptShares };

    ConfManager(const Curve& curve, SessionParams params);

    void execute(ledger::ExecutionContext& ctx, const std::string& method,
                 const std::vector<Bytes>& args) override;
    Bytes state_bytes() const override;
    nlohmann::json state_json() const override;

    Status status() const { return status_; }
    std::optional<Point> encryption_key() const;
    std::optional<Scalar> decryption_key() const;
    const std::map<uint32_t, Scalar>& revealed_shares() const { return reveals_; }
    size_t reveal_count() const { return reveals_.size(); }

private:
    void commit_share(ledger::ExecutionContext& ctx, const std::vector<Bytes>& args);
    void publish_key(ledger::ExecutionContext& ctx, const std::vector<Bytes>& args);
    void reveal_share(ledger::ExecutionContext& ctx, const std::vector<Bytes>& args);
    void try_reconstruct();
    uint32_t manager_index(const ledger::AccountId& sender) const; // 1-based, 0 if unknown
    const BallotBox& ballot_box(ledger::ContractRegistry& registry) const;

    const Curve& curve_;
    SessionParams params_;
    Status status_ = Status::kInit;
    std::optional<Point> ek_;
    std::optional<Scalar> dk_;
    std::map<uint32_t, Digest> commitments_; // round-1 share digests (forensic)
    std::set<uint32_t> published_;           // managers that confirmed the key
    std::map<uint32_t, Scalar> reveals_;
};

// Deploy hook for the ledger: target "session", method "Deploy",
// args[0] = SessionParams JSON. Only the configured organizer may deploy.
ledger::DeployHook session_deploy_hook();

const char* to_string(ConfManager::Status s);

} // namespace ringvote::contracts
