#include <doctest.h>

#include "ringvote/contracts.hpp"
#include "ringvote/errors.hpp"

using namespace ringvote;
using namespace ringvote::contracts;
using ledger::AccountId;
using ledger::Ledger;
using ledger::Transaction;
using ledger::account_from_name;

namespace {

struct Fixture {
    const Curve& curve = Curve::builtin("toy64007");
    DeterministicRng rng{777};
    AccountId organizer = account_from_name("organizer");
    std::vector<AccountId> id_managers{account_from_name("im-1"), account_from_name("im-2"),
                                       account_from_name("im-3")};
    std::vector<AccountId> conf_managers{account_from_name("cm-1"), account_from_name("cm-2"),
                                         account_from_name("cm-3")};
    SessionParams params;
    Ledger ledger{session_deploy_hook()};
    uint64_t nonce = 0;

    explicit Fixture(ConfMode mode = ConfMode::kThreshold, bool overwrite = false,
                     uint32_t k_i = 1, EventMode ev = EventMode::kHeight) {
        params.curve_name = "toy64007";
        params.open_height = 6;
        params.close_height = 12;
        params.tally_close_height = 18;
        params.mode = mode;
        params.event_mode = ev;
        params.overwrite = overwrite;
        params.k_i = k_i;
        params.k_e = 2;
        params.choices = {"alpha", "beta", "gamma"};
        params.organizer = organizer;
        params.identity_managers = id_managers;
        params.conf_managers = conf_managers;
    }

    Digest send(const AccountId& sender, const std::string& target, const std::string& method,
                std::vector<Bytes> args) {
        Transaction tx;
        tx.sender = sender;
        tx.target = target;
        tx.method = method;
        tx.args = std::move(args);
        tx.nonce = nonce++;
        return ledger.submit(tx);
    }

    Digest deploy() {
        return send(organizer, "session", methods::kDeploy,
                    {to_bytes(params.to_json().dump())});
    }

    void advance_to(uint64_t height) {
        while (ledger.height() < height) ledger.produce_block();
    }

    IdStorage& ids() { return *ledger.contract<IdStorage>(IdStorage::kName); }
    BallotBox& box() { return *ledger.contract<BallotBox>(BallotBox::kName); }
    ConfManager& cm() { return *ledger.contract<ConfManager>(ConfManager::kName); }

    Digest signup(const AccountId& manager, const lsag::KeyPair& kp, const std::string& email) {
        Digest label = sha256(to_bytes(email));
        return send(manager, IdStorage::kName, methods::kSignUp,
                    {curve.serialize_point(kp.pk), digest_bytes(label)});
    }

    // register n voters (single endorsement each), returns their key pairs
    std::vector<lsag::KeyPair> register_voters(size_t n) {
        std::vector<lsag::KeyPair> keys;
        for (size_t i = 0; i < n; i++) {
            keys.push_back(lsag::keygen(curve, rng));
            signup(id_managers[0], keys.back(), "voter" + std::to_string(i) + "@example.org");
        }
        ledger.produce_block();
        return keys;
    }

    Bytes make_ballot(const Point& ek, uint32_t choice) {
        Bytes pt;
        append_be32(pt, choice);
        append(pt, rng.bytes(32));
        return conf::serialize_ciphertext(curve, conf::encrypt_ballot(curve, ek, pt, rng));
    }

    Digest cast(const std::vector<lsag::KeyPair>& keys, size_t voter, const Bytes& ballot) {
        lsag::Ring ring(curve, box().frozen_ring());
        auto sig = lsag::sign(ring, voter, keys[voter].sk, ballot, rng);
        return send(ledger::kAnonymous, BallotBox::kName, methods::kVote,
                    {lsag::serialize(curve, sig), ballot});
    }

    conf::EncryptionKeyPair setup_encryption() {
        auto kp = conf::generate_keypair(curve, rng);
        auto shares = conf::share_key(curve, kp.dk, params.k_e, params.n_e(), rng);
        for (uint32_t i = 0; i < params.n_e(); i++) {
            Bytes idx;
            append_be32(idx, i + 1);
            Bytes commit = digest_bytes(sha256(curve.serialize_scalar(shares[i].value)));
            send(conf_managers[i], ConfManager::kName, methods::kCommitShare, {idx, commit});
        }
        ledger.produce_block();
        for (uint32_t i = 0; i < params.n_e(); i++) {
            send(conf_managers[i], ConfManager::kName, methods::kPublishKey,
                 {curve.serialize_point(kp.ek)});
        }
        ledger.produce_block();
        shares_cache = shares;
        return kp;
    }

    Digest reveal(uint32_t index) {
        Bytes idx;
        append_be32(idx, index);
        return send(conf_managers[index - 1], ConfManager::kName, methods::kRevealShare,
                    {idx, curve.serialize_scalar(shares_cache[index - 1].value)});
    }

    std::vector<conf::SecretShare> shares_cache;
};

std::string reason(const Ledger& l, const Digest& d) {
    const auto* r = l.receipt(d);
    REQUIRE(r);
    return r->ok ? "" : r->revert_reason;
}

} // namespace

TEST_CASE("deploy creates the three contracts; only organizer may deploy") {
    Fixture f;
    Digest wrong = f.send(f.id_managers[0], "session", methods::kDeploy,
                          {to_bytes(f.params.to_json().dump())});
    f.deploy();
    f.ledger.produce_block();
    CHECK(reason(f.ledger, wrong) == "UNAUTHORIZED");
    CHECK(f.ledger.contract<IdStorage>(IdStorage::kName));
    CHECK(f.ledger.contract<BallotBox>(BallotBox::kName));
    CHECK(f.ledger.contract<ConfManager>(ConfManager::kName));
}

TEST_CASE("signup with K_i=1 commits immediately and updates the ring digest") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    auto kp = lsag::keygen(f.curve, f.rng);
    Digest d = f.signup(f.id_managers[0], kp, "alice@example.org");
    f.ledger.produce_block();
    CHECK(reason(f.ledger, d).empty());
    CHECK(f.ids().committed_count() == 1);
    lsag::Ring expect(f.curve, {kp.pk});
    CHECK(f.ids().ring_digest() == expect.digest());
}

TEST_CASE("K_i=2 of 3: first endorsement pending, second commits") {
    Fixture f(ConfMode::kThreshold, false, /*k_i=*/2);
    f.deploy();
    f.ledger.produce_block();
    auto kp = lsag::keygen(f.curve, f.rng);
    Digest e1 = f.signup(f.id_managers[0], kp, "bob@example.org");
    f.ledger.produce_block();
    CHECK(f.ids().committed_count() == 0);
    CHECK(f.ledger.receipt(e1)->note.substr(0, 7) == "pending");

    // same manager endorsing twice is rejected
    Digest dup = f.signup(f.id_managers[0], kp, "bob@example.org");
    // different label for the same key is rejected
    Digest mismatch = f.signup(f.id_managers[1], kp, "eve@example.org");
    Digest e2 = f.signup(f.id_managers[1], kp, "bob@example.org");
    f.ledger.produce_block();
    CHECK(reason(f.ledger, dup) == "DUPLICATE_ENDORSEMENT");
    CHECK(reason(f.ledger, mismatch) == "LABEL_MISMATCH");
    CHECK(reason(f.ledger, e2).empty());
    CHECK(f.ledger.receipt(e2)->note == "committed");
    CHECK(f.ids().committed_count() == 1);
}

TEST_CASE("signup guards: unauthorized, duplicates, and the open-height cutoff") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    auto kp = lsag::keygen(f.curve, f.rng);
    auto kp2 = lsag::keygen(f.curve, f.rng);

    Digest unauthorized = f.send(f.organizer, IdStorage::kName, methods::kSignUp,
                                 {f.curve.serialize_point(kp.pk), Bytes(32, 1)});
    Digest ok = f.signup(f.id_managers[0], kp, "carol@example.org");
    f.ledger.produce_block();
    CHECK(reason(f.ledger, unauthorized) == "UNAUTHORIZED_MANAGER");
    CHECK(reason(f.ledger, ok).empty());

    Digest dup_pk = f.signup(f.id_managers[1], kp, "other@example.org");
    Digest dup_label = f.signup(f.id_managers[1], kp2, "carol@example.org");
    f.ledger.produce_block();
    CHECK(reason(f.ledger, dup_pk) == "DUPLICATE_PK");
    CHECK(reason(f.ledger, dup_label) == "DUPLICATE_LABEL");

    // a signup inside the block at open height executes after the open event
    f.advance_to(f.params.open_height - 1);
    auto kp3 = lsag::keygen(f.curve, f.rng);
    Digest late = f.signup(f.id_managers[0], kp3, "late@example.org");
    f.ledger.produce_block(); // this is the open-height block
    CHECK(f.ledger.height() == f.params.open_height);
    CHECK(reason(f.ledger, late) == "REGISTRATION_CLOSED");
    CHECK(f.box().opened());
}

TEST_CASE("vote lifecycle: accept, double-vote revert, close") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    auto keys = f.register_voters(3);
    auto ek = f.setup_encryption();
    f.advance_to(f.params.open_height);
    REQUIRE(f.box().active());

    // ring froze with the registration set
    CHECK(f.box().frozen_ring().size() == 3);
    CHECK(f.box().frozen_ring_digest() == f.ids().ring_digest());

    Bytes ballot = f.make_ballot(ek.ek, 1);
    Digest v1 = f.cast(keys, 0, ballot);
    f.ledger.produce_block();
    CHECK(reason(f.ledger, v1).empty());
    CHECK(f.box().ballots().size() == 1);
    CHECK(f.box().tag_count() == 1);

    // same voter again: linkability tag repeats, vote reverts
    Bytes ballot2 = f.make_ballot(ek.ek, 2);
    Digest v2 = f.cast(keys, 0, ballot2);
    f.ledger.produce_block();
    CHECK(reason(f.ledger, v2) == "DOUBLE_VOTE");
    CHECK(f.box().ballots().size() == 1);

    // votes at or after the close-height block revert
    f.advance_to(f.params.close_height - 1);
    Digest v3 = f.cast(keys, 1, f.make_ballot(ek.ek, 0));
    f.ledger.produce_block();
    CHECK(f.ledger.height() == f.params.close_height);
    CHECK(reason(f.ledger, v3) == "VOTE_CLOSED");
    CHECK(!f.box().active());
}

TEST_CASE("overwrite mode replaces the prior ballot for a repeated tag") {
    Fixture f(ConfMode::kThreshold, /*overwrite=*/true);
    f.deploy();
    f.ledger.produce_block();
    auto keys = f.register_voters(2);
    auto ek = f.setup_encryption();
    f.advance_to(f.params.open_height);

    Bytes first = f.make_ballot(ek.ek, 0);
    Bytes second = f.make_ballot(ek.ek, 2);
    Digest v1 = f.cast(keys, 0, first);
    f.ledger.produce_block();
    Digest v2 = f.cast(keys, 0, second);
    f.ledger.produce_block();

    CHECK(reason(f.ledger, v1).empty());
    CHECK(reason(f.ledger, v2).empty());
    CHECK(f.ledger.receipt(v2)->note == "replaced"); // audit-visible only
    REQUIRE(f.box().ballots().size() == 1);          // |ballots| == |tags|
    CHECK(f.box().ballots()[0].ballot == second);    // the later ballot wins
    CHECK(f.box().tag_count() == 1);
}

TEST_CASE("bad signatures revert") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    auto keys = f.register_voters(2);
    auto ek = f.setup_encryption();
    f.advance_to(f.params.open_height);

    // unregistered signer: ring of the signature will not match the frozen ring
    auto outsider = lsag::keygen(f.curve, f.rng);
    lsag::Ring wrong_ring(f.curve, {outsider.pk, keys[0].pk});
    Bytes ballot = f.make_ballot(ek.ek, 1);
    auto sig = lsag::sign(wrong_ring, 0, outsider.sk, ballot, f.rng);
    Digest v = f.send(ledger::kAnonymous, BallotBox::kName, methods::kVote,
                      {lsag::serialize(f.curve, sig), ballot});

    // garbage signature bytes
    Digest g = f.send(ledger::kAnonymous, BallotBox::kName, methods::kVote,
                      {f.rng.bytes(40), ballot});

    // tampered ballot under a valid signature
    lsag::Ring ring(f.curve, f.box().frozen_ring());
    auto sig_ok = lsag::sign(ring, 0, keys[0].sk, ballot, f.rng);
    Bytes tampered = ballot;
    tampered.back() ^= 1;
    Digest t = f.send(ledger::kAnonymous, BallotBox::kName, methods::kVote,
                      {lsag::serialize(f.curve, sig_ok), tampered});
    f.ledger.produce_block();

    CHECK(reason(f.ledger, v) == "BAD_SIGNATURE");
    CHECK(reason(f.ledger, g) == "BAD_SIGNATURE");
    CHECK(reason(f.ledger, t) == "BAD_SIGNATURE");
    CHECK(f.box().ballots().empty());
}

TEST_CASE("set_result guards and immutability") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    auto keys = f.register_voters(1);
    auto ek = f.setup_encryption();
    f.advance_to(f.params.open_height);
    f.cast(keys, 0, f.make_ballot(ek.ek, 1));
    f.ledger.produce_block();

    Bytes result = to_bytes(R"({"counts":{"1":1},"invalid":0,"unclaimed":0})");
    Digest early = f.send(f.organizer, BallotBox::kName, methods::kSetResult, {result});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, early) == "VOTE_NOT_CLOSED");

    f.advance_to(f.params.close_height);
    Digest byVoter = f.send(f.id_managers[0], BallotBox::kName, methods::kSetResult, {result});
    Digest ok = f.send(f.organizer, BallotBox::kName, methods::kSetResult, {result});
    Digest twice = f.send(f.organizer, BallotBox::kName, methods::kSetResult, {result});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, byVoter) == "UNAUTHORIZED");
    CHECK(reason(f.ledger, ok).empty());
    CHECK(reason(f.ledger, twice) == "RESULT_ALREADY_SET");
    REQUIRE(f.box().result());
    CHECK(f.box().result()->at("counts").at("1") == 1);
}

TEST_CASE("share lifecycle: early disclosure, reconstruction, dk matches ek") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    f.register_voters(1);
    auto kp = f.setup_encryption();
    REQUIRE(f.cm().encryption_key());
    CHECK(*f.cm().encryption_key() == kp.ek);
    CHECK(f.cm().status() == ConfManager::Status::kKeyPublished);

    // reveal before close reverts
    f.advance_to(f.params.open_height);
    Digest early = f.reveal(1);
    f.ledger.produce_block();
    CHECK(reason(f.ledger, early) == "EARLY_DISCLOSURE");

    f.advance_to(f.params.close_height);
    Digest r2 = f.reveal(2);
    f.ledger.produce_block();
    CHECK(reason(f.ledger, r2).empty());
    CHECK(!f.cm().decryption_key()); // below threshold: dk stays absent

    Digest r2dup = f.reveal(2);
    f.ledger.produce_block();
    CHECK(reason(f.ledger, r2dup) == "DUPLICATE_INDEX");

    Digest r3 = f.reveal(3);
    f.ledger.produce_block();
    CHECK(reason(f.ledger, r3).empty());
    REQUIRE(f.cm().decryption_key());
    CHECK(*f.cm().decryption_key() == kp.dk);
    CHECK(f.curve.mul_generator(*f.cm().decryption_key()) == kp.ek);
    CHECK(f.cm().status() == ConfManager::Status::kReconstructed);
}

TEST_CASE("insufficient reveals leave the session undecryptable") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    f.register_voters(1);
    f.setup_encryption();
    f.advance_to(f.params.close_height);
    f.reveal(1); // K_e = 2, only one reveal ever arrives
    f.ledger.produce_block();
    CHECK(!f.cm().decryption_key());
    CHECK(f.cm().status() == ConfManager::Status::kKeyPublished);
}

TEST_CASE("corrupt reveals are flagged, honest quorum still recovers") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    f.register_voters(1);
    auto kp = f.setup_encryption();
    f.advance_to(f.params.close_height);

    // manager 1 reveals garbage
    Bytes idx;
    append_be32(idx, 1);
    f.send(f.conf_managers[0], ConfManager::kName, methods::kRevealShare,
           {idx, f.curve.serialize_scalar(f.curve.random_scalar(f.rng))});
    f.reveal(2);
    f.ledger.produce_block();
    // one bad + one good among K_e=2: no consistent subset yet
    CHECK(f.cm().status() == ConfManager::Status::kCorruptShares);
    CHECK(!f.cm().decryption_key());

    f.reveal(3);
    f.ledger.produce_block();
    // shares 2 and 3 form an honest quorum
    CHECK(f.cm().status() == ConfManager::Status::kReconstructed);
    REQUIRE(f.cm().decryption_key());
    CHECK(*f.cm().decryption_key() == kp.dk);
}

TEST_CASE("key publication stops at vote open and must be consistent") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    auto kp = conf::generate_keypair(f.curve, f.rng);
    auto other = conf::generate_keypair(f.curve, f.rng);

    Digest p1 = f.send(f.conf_managers[0], ConfManager::kName, methods::kPublishKey,
                       {f.curve.serialize_point(kp.ek)});
    Digest p2 = f.send(f.conf_managers[1], ConfManager::kName, methods::kPublishKey,
                       {f.curve.serialize_point(other.ek)});
    Digest p3 = f.send(f.conf_managers[0], ConfManager::kName, methods::kPublishKey,
                       {f.curve.serialize_point(kp.ek)});
    Digest p4 = f.send(f.organizer, ConfManager::kName, methods::kPublishKey,
                       {f.curve.serialize_point(kp.ek)});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, p1).empty());
    CHECK(reason(f.ledger, p2) == "KEY_MISMATCH");
    CHECK(reason(f.ledger, p3) == "DUPLICATE_PUBLISH");
    CHECK(reason(f.ledger, p4) == "UNAUTHORIZED_MANAGER");

    f.advance_to(f.params.open_height);
    Digest late = f.send(f.conf_managers[2], ConfManager::kName, methods::kPublishKey,
                         {f.curve.serialize_point(kp.ek)});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, late) == "AFTER_OPEN");
}

TEST_CASE("vote-claim: commitments stored, redeem window enforced") {
    Fixture f(ConfMode::kVoteClaim);
    f.deploy();
    f.ledger.produce_block();
    auto keys = f.register_voters(2);
    f.advance_to(f.params.open_height);

    // plaintext = choice || salt; commitment = H(plaintext || commit-salt)
    Bytes pt;
    append_be32(pt, 2);
    append(pt, f.rng.bytes(32));
    Bytes salt = f.rng.bytes(conf::kSaltSize);
    auto commitment = conf::commit_ballot(pt, salt);
    Bytes ballot = digest_bytes(commitment.digest);

    lsag::Ring ring(f.curve, f.box().frozen_ring());
    auto sig = lsag::sign(ring, 0, keys[0].sk, ballot, f.rng);
    Digest v = f.send(ledger::kAnonymous, BallotBox::kName, methods::kVote,
                      {lsag::serialize(f.curve, sig), ballot});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, v).empty());

    Bytes idx0;
    append_be32(idx0, 0);

    // redeem before close is out of window
    Digest early = f.send(ledger::kAnonymous, BallotBox::kName, methods::kRedeem,
                          {pt, salt, idx0});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, early) == "REDEEM_CLOSED");

    f.advance_to(f.params.close_height);
    Digest badpt = f.send(ledger::kAnonymous, BallotBox::kName, methods::kRedeem,
                          {to_bytes("wrong"), salt, idx0});
    Digest ok = f.send(ledger::kAnonymous, BallotBox::kName, methods::kRedeem, {pt, salt, idx0});
    Digest twice = f.send(ledger::kAnonymous, BallotBox::kName, methods::kRedeem,
                          {pt, salt, idx0});
    Bytes idx9;
    append_be32(idx9, 9);
    Digest oob = f.send(ledger::kAnonymous, BallotBox::kName, methods::kRedeem, {pt, salt, idx9});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, badpt) == "BAD_CLAIM");
    CHECK(reason(f.ledger, ok).empty());
    CHECK(reason(f.ledger, twice) == "ALREADY_REDEEMED");
    CHECK(reason(f.ledger, oob) == "BAD_INDEX");
    CHECK(f.box().ballots()[0].redeemed);
    CHECK(f.box().ballots()[0].plaintext == pt);

    // after tally close the window shuts
    f.advance_to(f.params.tally_close_height);
    Digest late = f.send(ledger::kAnonymous, BallotBox::kName, methods::kRedeem, {pt, salt, idx0});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, late) == "REDEEM_CLOSED");
}

TEST_CASE("organizer-fired events replace height triggers") {
    Fixture f(ConfMode::kThreshold, false, 1, EventMode::kOrganizer);
    f.deploy();
    f.ledger.produce_block();
    auto keys = f.register_voters(1);
    auto ek = f.setup_encryption();

    f.advance_to(f.params.open_height + 1);
    CHECK(!f.box().opened()); // height passed, nothing fired

    Digest byOther = f.send(f.id_managers[0], BallotBox::kName, methods::kOpen, {});
    Digest open = f.send(f.organizer, BallotBox::kName, methods::kOpen, {});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, byOther) == "UNAUTHORIZED");
    CHECK(reason(f.ledger, open).empty());
    CHECK(f.box().active());

    Digest v = f.cast(keys, 0, f.make_ballot(ek.ek, 0));
    f.ledger.produce_block();
    CHECK(reason(f.ledger, v).empty());

    Digest close = f.send(f.organizer, BallotBox::kName, methods::kClose, {});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, close).empty());
    CHECK(f.box().closed());

    Digest reopen = f.send(f.organizer, BallotBox::kName, methods::kOpen, {});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, reopen) == "ALREADY_OPEN");
}

TEST_CASE("height events are ignored in organizer mode and vice versa") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    Digest open = f.send(f.organizer, BallotBox::kName, methods::kOpen, {});
    f.ledger.produce_block();
    CHECK(reason(f.ledger, open) == "BAD_EVENT_MODE");
}

TEST_CASE("ring freeze: registration after open never mutates the frozen ring") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    f.register_voters(3);
    f.setup_encryption();
    f.advance_to(f.params.open_height);
    Scalar at_open = f.box().frozen_ring_digest();

    auto kp = lsag::keygen(f.curve, f.rng);
    f.signup(f.id_managers[0], kp, "toolate@example.org");
    f.advance_to(f.params.close_height + 1);
    CHECK(f.box().frozen_ring_digest() == at_open);
    CHECK(f.ids().committed_count() == 3);
}

TEST_CASE("full-chain replay reproduces contract state (consistency)") {
    Fixture f;
    f.deploy();
    f.ledger.produce_block();
    auto keys = f.register_voters(2);
    auto ek = f.setup_encryption();
    f.advance_to(f.params.open_height);
    f.cast(keys, 0, f.make_ballot(ek.ek, 1));
    f.cast(keys, 1, f.make_ballot(ek.ek, 2));
    f.ledger.produce_block();
    f.advance_to(f.params.close_height);
    f.reveal(1);
    f.reveal(3);
    f.ledger.produce_block();

    std::string chain = f.ledger.export_chain();
    auto replayed = Ledger::replay(chain, session_deploy_hook());
    CHECK(replayed->state_snapshot() == f.ledger.state_snapshot());
    auto* box = replayed->contract<BallotBox>(BallotBox::kName);
    REQUIRE(box->result() == f.box().result());
    CHECK(box->ballots().size() == 2);
    auto* cm = replayed->contract<ConfManager>(ConfManager::kName);
    REQUIRE(cm->decryption_key());
    CHECK(*cm->decryption_key() == *f.cm().decryption_key());
}
