#include "ringvote/ledger.hpp"

#include <sstream>

#include "ringvote/errors.hpp"

namespace ringvote::ledger {

AccountId account_from_name(std::string_view name) {
    Digest d = sha256(to_bytes(name));
    AccountId id;
    std::copy(d.begin(), d.end(), id.begin());
    return id;
}

Bytes Transaction::canonical() const {
    std::vector<Bytes> fields;
    fields.reserve(4 + args.size());
    fields.emplace_back(sender.begin(), sender.end());
    fields.push_back(to_bytes(target));
    fields.push_back(to_bytes(method));
    Bytes nonce_be;
    append_be64(nonce_be, nonce);
    fields.push_back(std::move(nonce_be));
    for (const Bytes& a : args) fields.push_back(a);
    return encode_fields(fields);
}

Digest Transaction::digest() const {
    return sha256(canonical());
}

Transaction Transaction::decode(BytesView bytes) {
    std::vector<Bytes> fields = decode_fields(bytes);
    if (fields.size() < 4 || fields[0].size() != 32 || fields[3].size() != 8) {
        throw ValidationError("transaction: malformed canonical encoding");
    }
    Transaction tx;
    std::copy(fields[0].begin(), fields[0].end(), tx.sender.begin());
    tx.target = to_string(fields[1]);
    tx.method = to_string(fields[2]);
    tx.nonce = read_be64(fields[3], 0);
    tx.args.assign(fields.begin() + 4, fields.end());
    return tx;
}

Digest Block::digest() const {
    Bytes buf;
    append_be64(buf, height);
    append(buf, BytesView(parent.data(), parent.size()));
    append_be32(buf, uint32_t(txs.size()));
    for (const Transaction& tx : txs) {
        Bytes c = tx.canonical();
        append_be32(buf, uint32_t(c.size()));
        append(buf, c);
    }
    append(buf, BytesView(state_digest.data(), state_digest.size()));
    return sha256(buf);
}

Contract* ContractRegistry::find(const std::string& name) const {
    auto it = contracts_.find(name);
    return it == contracts_.end() ? nullptr : it->second.get();
}

void ContractRegistry::add(std::unique_ptr<Contract> contract) {
    std::string name = contract->name();
    if (!contracts_.emplace(name, std::move(contract)).second) {
        throw ValidationError("registry: contract already exists: " + name);
    }
}

Ledger::Ledger(DeployHook deploy_hook) : deploy_hook_(std::move(deploy_hook)) {
    Block genesis;
    genesis.height = 0;
    genesis.state_digest = compute_state_digest();
    blocks_.push_back(std::move(genesis));
}

Digest Ledger::submit(const Transaction& tx) {
    if (tx.target.empty() || tx.method.empty()) {
        throw ValidationError("submit: transaction needs target and method");
    }
    Bytes canonical = tx.canonical();
    if (!(Transaction::decode(canonical) == tx)) {
        throw ValidationError("submit: encoding not canonical");
    }
    Digest d = sha256(canonical);
    std::lock_guard lock(mu_);
    if (seen_.emplace(d, true).second) pool_.push_back(tx);
    return d;
}

void Ledger::execute_tx(const Transaction& tx, uint64_t height, uint32_t index) {
    TxReceipt receipt;
    receipt.tx_digest = tx.digest();
    receipt.height = height;
    receipt.index = index;

    ExecutionContext ctx{height, tx.sender, registry_, receipt};
    try {
        if (tx.target == "session") {
            if (!deploy_hook_) throw Revert("NO_DEPLOY_HOOK");
            deploy_hook_(registry_, tx, ctx);
        } else {
            Contract* c = registry_.find(tx.target);
            if (!c) throw Revert("UNKNOWN_CONTRACT");
            c->execute(ctx, tx.method, tx.args);
        }
        receipt.ok = true;
    } catch (const Revert& r) {
        receipt.ok = false;
        receipt.revert_reason = r.reason;
        if (!r.note.empty()) receipt.note = r.note;
    } catch (const ValidationError& e) {
        receipt.ok = false;
        receipt.revert_reason = std::string("BAD_ARGS: ") + e.what();
    }
    receipts_[receipt.tx_digest] = receipt;
}

const Block& Ledger::produce_block() {
    std::lock_guard lock(mu_);
    Block block;
    block.height = blocks_.size();
    block.parent = blocks_.back().digest();
    block.txs = std::move(pool_);
    pool_.clear();

    // height events fire before any transaction in the block executes
    for (auto& [name, contract] : registry_.contracts_) {
        contract->on_height(block.height, registry_);
    }
    for (uint32_t i = 0; i < block.txs.size(); i++) {
        execute_tx(block.txs[i], block.height, i);
    }
    block.state_digest = compute_state_digest();
    blocks_.push_back(std::move(block));
    return blocks_.back();
}

uint64_t Ledger::height() const {
    std::lock_guard lock(mu_);
    return blocks_.back().height;
}

size_t Ledger::block_count() const {
    std::lock_guard lock(mu_);
    return blocks_.size();
}

const Block& Ledger::block(uint64_t height) const {
    std::lock_guard lock(mu_);
    if (height >= blocks_.size()) throw ValidationError("block: height out of range");
    return blocks_[height];
}

const TxReceipt* Ledger::receipt(const Digest& tx_digest) const {
    std::lock_guard lock(mu_);
    auto it = receipts_.find(tx_digest);
    return it == receipts_.end() ? nullptr : &it->second;
}

std::vector<AuditEntry> Ledger::audit(uint64_t from_height, uint64_t to_height) const {
    std::lock_guard lock(mu_);
    std::vector<AuditEntry> out;
    for (const Block& b : blocks_) {
        if (b.height < from_height || b.height > to_height) continue;
        for (uint32_t i = 0; i < b.txs.size(); i++) {
            AuditEntry e;
            e.height = b.height;
            e.index = i;
            e.tx = b.txs[i];
            auto it = receipts_.find(b.txs[i].digest());
            if (it != receipts_.end()) e.receipt = it->second;
            out.push_back(std::move(e));
        }
    }
    return out;
}

std::vector<AuditEntry> Ledger::audit() const {
    return audit(0, blocks_.empty() ? 0 : blocks_.back().height);
}

Digest Ledger::compute_state_digest() const {
    std::vector<Bytes> fields;
    for (const auto& [name, contract] : registry_.contracts_) {
        fields.push_back(to_bytes(name));
        fields.push_back(contract->state_bytes());
    }
    return sha256(encode_fields(fields));
}

nlohmann::json Ledger::state_snapshot() const {
    std::lock_guard lock(mu_);
    nlohmann::json contracts = nlohmann::json::object();
    for (const auto& [name, contract] : registry_.contracts_) {
        contracts[name] = contract->state_json();
    }
    return nlohmann::json{{"height", blocks_.back().height},
                          {"state_digest", to_hex(blocks_.back().state_digest)},
                          {"contracts", contracts}};
}

nlohmann::json Ledger::block_to_json(const Block& b) {
    nlohmann::json txs = nlohmann::json::array();
    for (const Transaction& tx : b.txs) {
        nlohmann::json args = nlohmann::json::array();
        for (const Bytes& a : tx.args) args.push_back(to_hex(a));
        txs.push_back(nlohmann::json{{"sender", to_hex(tx.sender)},
                                     {"target", tx.target},
                                     {"method", tx.method},
                                     {"args", args},
                                     {"nonce", tx.nonce}});
    }
    return nlohmann::json{{"height", b.height},
                          {"parent", to_hex(b.parent)},
                          {"state", to_hex(b.state_digest)},
                          {"txs", txs}};
}

Block Ledger::block_from_json(const nlohmann::json& j) {
    Block b;
    b.height = j.at("height").get<uint64_t>();
    Bytes parent = from_hex(j.at("parent").get<std::string>());
    Bytes state = from_hex(j.at("state").get<std::string>());
    if (parent.size() != kDigestSize || state.size() != kDigestSize) {
        throw ValidationError("block: bad digest width");
    }
    std::copy(parent.begin(), parent.end(), b.parent.begin());
    std::copy(state.begin(), state.end(), b.state_digest.begin());
    for (const auto& jt : j.at("txs")) {
        Transaction tx;
        Bytes sender = from_hex(jt.at("sender").get<std::string>());
        if (sender.size() != 32) throw ValidationError("tx: bad sender width");
        std::copy(sender.begin(), sender.end(), tx.sender.begin());
        tx.target = jt.at("target").get<std::string>();
        tx.method = jt.at("method").get<std::string>();
        tx.nonce = jt.at("nonce").get<uint64_t>();
        for (const auto& ja : jt.at("args")) tx.args.push_back(from_hex(ja.get<std::string>()));
        b.txs.push_back(std::move(tx));
    }
    return b;
}

std::string Ledger::export_chain() const {
    std::lock_guard lock(mu_);
    std::string out;
    for (const Block& b : blocks_) {
        out += block_to_json(b).dump();
        out += '\n';
    }
    return out;
}

std::unique_ptr<Ledger> Ledger::replay(const std::string& chain_jsonl, DeployHook hook) {
    std::vector<Block> chain;
    std::istringstream in(chain_jsonl);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        chain.push_back(block_from_json(nlohmann::json::parse(line)));
    }
    if (chain.empty()) throw IntegrityError("replay: empty chain");
    if (chain[0].height != 0 || chain[0].parent != Digest{}) {
        throw IntegrityError("replay: genesis malformed");
    }

    auto ledger = std::make_unique<Ledger>(std::move(hook));
    if (!chain[0].txs.empty()) throw IntegrityError("replay: genesis must be empty");
    if (chain[0].state_digest != ledger->blocks_[0].state_digest) {
        throw IntegrityError("replay: genesis state digest mismatch");
    }

    for (size_t h = 1; h < chain.size(); h++) {
        const Block& recorded = chain[h];
        if (recorded.height != h) throw IntegrityError("replay: non-monotonic heights");
        if (recorded.parent != ledger->blocks_.back().digest()) {
            throw IntegrityError("replay: parent linkage violation at height " +
                                 std::to_string(h));
        }
        {
            std::lock_guard lock(ledger->mu_);
            ledger->pool_ = recorded.txs;
            for (const Transaction& tx : recorded.txs) ledger->seen_[tx.digest()] = true;
        }
        const Block& replayed = ledger->produce_block();
        if (replayed.state_digest != recorded.state_digest) {
            throw IntegrityError("replay: state digest mismatch at height " + std::to_string(h));
        }
    }
    return ledger;
}

} // namespace ringvote::ledger
