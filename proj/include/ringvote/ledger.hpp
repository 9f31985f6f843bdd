#pragma once

#include <array>
#include <functional>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ringvote/bytes.hpp"
#include "ringvote/hash.hpp"

namespace ringvote::ledger {

// 32-byte account identifier; the all-zero value is the ANONYMOUS sentinel
// used by the anonymization proxy.
using AccountId = std::array<uint8_t, 32>;

inline constexpr AccountId kAnonymous{};

AccountId account_from_name(std::string_view name);
inline bool is_anonymous(const AccountId& a) { return a == kAnonymous; }

struct Transaction {
    AccountId sender = kAnonymous;
    std::string target; // contract name
    std::string method;
    std::vector<Bytes> args; // canonical length-prefixed encoding
    uint64_t nonce = 0;

    Bytes canonical() const; // injective; decode(canonical()) == *this
    Digest digest() const;
    static Transaction decode(BytesView bytes);

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct Block {
    uint64_t height = 0;
    Digest parent{}; // all-zero for genesis
    std::vector<Transaction> txs;
    Digest state_digest{};

    Digest digest() const;
};

// Execution outcome of one transaction; the ledger's audit log row.
struct TxReceipt {
    Digest tx_digest{};
    uint64_t height = 0;
    uint32_t index = 0; // position within the block
    bool ok = false;
    std::string revert_reason; // empty when ok
    std::string note;          // contract-attached detail (e.g. ballot replacement)
};

// Contract revert: aborts the transaction, never the block.
struct Revert : std::runtime_error {
    explicit Revert(std::string reason_, std::string note_ = "")
        : std::runtime_error(reason_), reason(std::move(reason_)), note(std::move(note_)) {}
    std::string reason;
    std::string note;
};

class Contract;

// Registry view handed to executing contracts for cross-contract reads.
class ContractRegistry {
public:
    Contract* find(const std::string& name) const;
    template <typename T>
    T* find_as(const std::string& name) const {
        return dynamic_cast<T*>(find(name));
    }
    void add(std::unique_ptr<Contract> contract); // throws on duplicate name
    bool empty() const { return contracts_.empty(); }

private:
    friend class Ledger;
    std::map<std::string, std::unique_ptr<Contract>> contracts_;
};

struct ExecutionContext {
    uint64_t height;
    const AccountId& sender;
    ContractRegistry& registry;
    TxReceipt& receipt;
};

// Deterministic on-ledger state machine. Mutated only by the single-threaded
// executor; state_bytes() must be a canonical function of the semantic state.
class Contract {
public:
    explicit Contract(std::string name) : name_(std::move(name)) {}
    virtual ~Contract() = default;

    const std::string& name() const { return name_; }

    virtual void execute(ExecutionContext& ctx, const std::string& method,
                         const std::vector<Bytes>& args) = 0;
    // Height-triggered events, fired once per height before the block's
    // transactions execute.
    virtual void on_height(uint64_t /*height*/, ContractRegistry& /*registry*/) {}

    virtual Bytes state_bytes() const = 0;
    virtual nlohmann::json state_json() const = 0;

private:
    std::string name_;
};

// Interprets deployment transactions (target "session") so that replay can
// reconstruct contracts from raw chain data alone.
using DeployHook =
    std::function<void(ContractRegistry&, const Transaction&, ExecutionContext&)>;

struct AuditEntry {
    uint64_t height = 0;
    uint32_t index = 0;
    Transaction tx;
    TxReceipt receipt;
};

// Append-only single-sequencer ledger. Submissions may come from any thread;
// block production and execution are single-threaded. Replaying the exported
// chain reproduces the identical state digest sequence.
class Ledger {
public:
    explicit Ledger(DeployHook deploy_hook = nullptr);

    // Queues a transaction; receipt identifier = digest(tx). Duplicate digests
    // are accepted idempotently and queued once per ledger lifetime.
    Digest submit(const Transaction& tx);

    // Drains the pool in submission order, fires height events, executes,
    // appends. Empty blocks are fine. Returns the new block.
    const Block& produce_block();

    uint64_t height() const; // height of the latest block
    size_t block_count() const;
    const Block& block(uint64_t height) const;
    const std::deque<Block>& blocks() const { return blocks_; }

    const TxReceipt* receipt(const Digest& tx_digest) const;
    std::vector<AuditEntry> audit(uint64_t from_height, uint64_t to_height) const;
    std::vector<AuditEntry> audit() const;

    ContractRegistry& registry() { return registry_; }
    const ContractRegistry& registry() const { return registry_; }
    template <typename T>
    T* contract(const std::string& name) const {
        return registry_.find_as<T>(name);
    }

    nlohmann::json state_snapshot() const;

    // Chain export: JSON-lines, one block per line.
    std::string export_chain() const;

    // Rebuilds a ledger by re-executing an exported chain; verifies parent
    // linkage and state digests. Throws IntegrityError on any mismatch.
    static std::unique_ptr<Ledger> replay(const std::string& chain_jsonl, DeployHook hook);

    static nlohmann::json block_to_json(const Block& b);
    static Block block_from_json(const nlohmann::json& j);

private:
    Digest compute_state_digest() const;
    void execute_tx(const Transaction& tx, uint64_t height, uint32_t index);

    DeployHook deploy_hook_;
    ContractRegistry registry_;
    std::deque<Block> blocks_;
    std::vector<Transaction> pool_;
    std::map<Digest, TxReceipt> receipts_;
    std::map<Digest, bool> seen_;
    mutable std::mutex mu_;
};

} // namespace ringvote::ledger
