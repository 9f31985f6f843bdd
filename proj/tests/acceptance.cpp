// Acceptance suite: one pass/fail line per criterion, exact tolerances pinned
// in code. Exit code 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "oracle_ec.hpp"
#include "ringvote/actors.hpp"
#include "ringvote/metrics.hpp"
#include "ringvote/scenario.hpp"

using namespace ringvote;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void info(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

actors::SessionConfig toy_config(uint64_t seed) {
    actors::SessionConfig c;
    c.curve_name = "toy64007";
    c.seed = seed;
    c.choices = {"alpha", "beta", "gamma"};
    c.open_height = 6;
    c.close_height = 12;
    c.tally_close_height = 18;
    return c;
}

std::unique_ptr<actors::Session> session_with_voters(const actors::SessionConfig& c, size_t m) {
    auto s = std::make_unique<actors::Session>(c);
    for (size_t i = 0; i < m; i++) s->add_voter("voter" + std::to_string(i) + "@example.org");
    return s;
}

// --------------------------------------------------------------------------
// 1. storage size table, exact integers
// --------------------------------------------------------------------------
void criterion_storage_table(Check& c) {
    struct Row {
        uint64_t n, ecc_pk, ecc_sig, nonecc_pk, nonecc_sig;
    };
    const Row expected[] = {{10, 640, 416, 3840, 4608},
                            {100, 6400, 3296, 38400, 39168},
                            {1000, 64000, 32096, 384000, 384768}};
    for (const Row& row : expected) {
        auto r = metrics::storage_report(row.n);
        c.expect(r.ecc_pk_bytes == row.ecc_pk && r.ecc_sig_bytes == row.ecc_sig &&
                     r.nonecc_pk_bytes == row.nonecc_pk && r.nonecc_sig_bytes == row.nonecc_sig,
                 "storage row n=" + std::to_string(row.n));
    }
}

// --------------------------------------------------------------------------
// 2. per-phase cost formulas and a measured session, exact
// --------------------------------------------------------------------------
void criterion_phase_costs(Check& c) {
    auto rows = metrics::phase_costs(100, 2, 5, 3);
    auto expect_row = [&](size_t i, const char* phase, std::optional<uint64_t> w,
                          std::optional<uint64_t> r, std::optional<uint64_t> rounds) {
        c.expect(rows.at(i) == metrics::PhaseCost{phase, w, r, rounds},
                 std::string("formula row ") + phase);
    };
    expect_row(0, "Setup", 1, std::nullopt, 1);
    expect_row(1, "Registration", 200, std::nullopt, 2);
    expect_row(2, "Encryption", 10, 5, 2);
    expect_row(3, "Voting", 100, 100, 1);
    expect_row(4, "Tally", 3, std::nullopt, 1);

    // measured session with the same parameters, proxy batching disabled
    actors::SessionConfig config = toy_config(2024);
    config.k_i = 2;
    config.n_i = 3;
    config.k_e = 3;
    config.n_e = 5;
    config.proxy_batch = 1;
    auto s = session_with_voters(config, 100);
    std::vector<uint32_t> choices(100);
    for (size_t i = 0; i < 100; i++) choices[i] = uint32_t(i % 3);
    s->run_full(choices);
    auto measured = metrics::measure_session(s->ledger(), s->io());
    c.expect(measured.complete, "session completed");
    for (const auto& row : rows) {
        auto it = measured.phases.find(row.phase);
        if (it == measured.phases.end()) {
            c.expect(false, "missing measured phase " + row.phase);
            continue;
        }
        c.expect(it->second.writes == *row.writes,
                 "measured writes " + row.phase + " = " + std::to_string(it->second.writes));
        if (row.reads) c.expect(it->second.reads == *row.reads, "measured reads " + row.phase);
        if (row.rounds) {
            c.expect(it->second.rounds == *row.rounds, "measured rounds " + row.phase);
        }
    }
}

// --------------------------------------------------------------------------
// 3. exhaustive signature correctness with an independent chain oracle
// --------------------------------------------------------------------------
void criterion_signature_correctness(Check& c) {
    const Curve& curve = Curve::builtin("toy64007");
    oracle::Curve oc(curve.params());
    DeterministicRng rng(30003);
    uint64_t verified = 0;

    for (size_t n = 1; n <= 8; n++) {
        lsag::Ring ring(curve);
        std::vector<lsag::KeyPair> keys;
        for (size_t i = 0; i < n; i++) {
            keys.push_back(lsag::keygen(curve, rng));
            ring.append(keys.back().pk);
        }
        for (size_t pi = 0; pi < n; pi++) {
            for (int trial = 0; trial < 50; trial++) {
                Bytes m = rng.bytes(20);
                auto sig = lsag::sign(ring, pi, keys[pi].sk, m, rng);
                std::vector<Scalar> chain;
                auto status = lsag::verify_detailed(ring, m, sig, nullptr, &chain);
                if (status != lsag::VerifyStatus::kOk) {
                    c.expect(false, "verify failed at n=" + std::to_string(n));
                    return;
                }

                // independent affine-arithmetic replay of the whole chain
                mpz_class g = oc.g;
                size_t fe = curve.fe_width();
                auto ser_pt = [&](const oracle::Pt& p) {
                    if (!p) return Bytes(2 * fe, 0);
                    Bytes out = oracle::from_mpz(p->first).to_bytes_be(fe);
                    append(out, oracle::from_mpz(p->second).to_bytes_be(fe));
                    return out;
                };
                oracle::Pt l_pt = oracle::from_point(
                    curve.hash_to_point(curve.serialize_scalar(ring.digest())));
                oracle::Pt t_pt = oracle::from_point(sig.tag);
                oracle::Pt gen = std::make_pair(oc.gx, oc.gy);
                Bytes prefix = m;
                append(prefix, curve.serialize_point(sig.tag));
                mpz_class c_prev = oracle::to_mpz(sig.c.v);
                bool chain_agrees = true;
                for (size_t i = 0; i < n; i++) {
                    mpz_class s_i = oracle::to_mpz(sig.s[i].v);
                    oracle::Pt a =
                        oracle::add(oc, oracle::mul(oc, s_i, gen),
                                    oracle::mul(oc, c_prev, oracle::from_point(ring.key(i))));
                    oracle::Pt b = oracle::add(oc, oracle::mul(oc, s_i, l_pt),
                                               oracle::mul(oc, c_prev, t_pt));
                    Bytes in = prefix;
                    append(in, ser_pt(a));
                    append(in, ser_pt(b));
                    Digest d = sha256(in);
                    mpz_class digest_int;
                    mpz_import(digest_int.get_mpz_t(), d.size(), 1, 1, 1, 0, d.data());
                    c_prev = digest_int % g;
                    if (c_prev != oracle::to_mpz(chain[i].v)) chain_agrees = false;
                }
                if (!chain_agrees || c_prev != oracle::to_mpz(sig.c.v)) {
                    c.expect(false, "oracle chain disagreement at n=" + std::to_string(n));
                    return;
                }
                verified++;
            }
        }
    }
    c.info(std::to_string(verified) + " signatures, oracle-checked");
}

// --------------------------------------------------------------------------
// 4. linkability: exactly one double-vote revert per seeded session
// --------------------------------------------------------------------------
void criterion_double_vote(Check& c) {
    for (uint64_t seed = 1; seed <= 100; seed++) {
        actors::SessionConfig config = toy_config(40000 + seed);
        auto s = session_with_voters(config, 4);
        size_t duplicate_voter = size_t(seed % 4);
        uint32_t first_choice = uint32_t(seed % 3);
        uint32_t second_choice = (first_choice + 1) % 3;

        s->setup();
        s->register_all();
        s->run_encryption();
        s->open_vote();
        for (size_t i = 0; i < 4; i++) {
            s->vote(s->voters()[i], i == duplicate_voter ? first_choice : 2);
        }
        s->vote(s->voters()[duplicate_voter], second_choice); // the double vote
        s->flush_votes();
        s->close_vote();
        s->reveal_shares();
        auto tally = s->tally();

        int double_votes = 0;
        for (const auto& e : s->ledger().audit()) {
            if (e.receipt.revert_reason == "DOUBLE_VOTE") double_votes++;
        }
        c.expect(double_votes == 1, "seed " + std::to_string(seed) + ": reverts");
        c.expect(tally.total() == 4, "seed " + std::to_string(seed) + ": total");
        uint64_t first_count =
            tally.counts.count(first_choice) ? tally.counts.at(first_choice) : 0;
        c.expect(first_count >= 1, "seed " + std::to_string(seed) + ": first ballot counted");
        if (!c.ok) return;
    }

    // overwrite mode: the later ballot wins
    for (uint64_t seed = 1; seed <= 100; seed++) {
        actors::SessionConfig config = toy_config(41000 + seed);
        config.overwrite = true;
        auto s = session_with_voters(config, 2);
        s->setup();
        s->register_all();
        s->run_encryption();
        s->open_vote();
        s->vote(s->voters()[0], 0);
        s->vote(s->voters()[1], 2);
        s->vote(s->voters()[0], 1); // replaces choice 0
        s->flush_votes();
        s->close_vote();
        s->reveal_shares();
        auto tally = s->tally();
        c.expect(tally.total() == 2 && tally.counts.count(1) == 1 && !tally.counts.count(0),
                 "overwrite seed " + std::to_string(seed));
        if (!c.ok) return;
    }
}

// --------------------------------------------------------------------------
// 5. forgery rejection: 10^4 random signatures against a 16-member ring
// --------------------------------------------------------------------------
void criterion_forgery_rejection(Check& c) {
    const Curve& curve = Curve::builtin("secp256k1");
    DeterministicRng key_rng(50005);
    lsag::Ring ring(curve);
    for (int i = 0; i < 16; i++) ring.append(lsag::keygen(curve, key_rng).pk);
    lsag::RingPrecomp pre(ring);
    Bytes message = to_bytes("forgery target");

    const int total = 10000;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<int> accepted(workers, 0);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; w++) {
        threads.emplace_back([&, w] {
            DeterministicRng rng(60000 + w);
            int count = total / workers + (w < total % workers ? 1 : 0);
            for (int t = 0; t < count; t++) {
                lsag::Signature forged;
                forged.ring_digest = ring.digest();
                forged.tag = curve.mul_generator(curve.random_scalar(rng));
                forged.s.resize(16);
                for (auto& s : forged.s) s = curve.random_scalar(rng, true);
                forged.c = curve.random_scalar(rng, true);
                if (lsag::verify(ring, message, forged, &pre)) accepted[w]++;
            }
        });
    }
    for (auto& t : threads) t.join();
    int total_accepted = 0;
    for (int a : accepted) total_accepted += a;
    c.expect(total_accepted == 0,
             std::to_string(total_accepted) + " forgeries verified (expected 0)");
    c.info("10000 forgeries rejected");
}

// --------------------------------------------------------------------------
// 6. threshold tolerance boundaries, exact
// --------------------------------------------------------------------------
void criterion_threshold_tolerance(Check& c) {
    const std::pair<uint32_t, uint32_t> setups[] = {{2, 3}, {3, 5}, {4, 7}};
    for (auto [k, n] : setups) {
        std::string tag = "K=" + std::to_string(k) + ",N=" + std::to_string(n);

        // early disclosure: an adversary holding e shares reconstructs iff e >= K
        actors::SessionConfig config = toy_config(60000 + k);
        config.k_e = k;
        config.n_e = n;
        auto s = session_with_voters(config, 2);
        s->setup();
        s->register_all();
        s->run_encryption();
        uint32_t first_leak_failure = 0;
        for (uint32_t e = 0; e <= n; e++) {
            bool reconstructed = s->leak_shares(e);
            c.expect(reconstructed == (e >= k),
                     tag + ": leak(" + std::to_string(e) + ")");
            if (reconstructed && first_leak_failure == 0) first_leak_failure = e;
        }

        // withholding: the key never materializes iff withholders >= N-K+1
        uint32_t first_withhold_failure = 0;
        for (uint32_t w = 0; w <= n; w++) {
            actors::SessionConfig wc = toy_config(61000 + 100 * k + w);
            wc.k_e = k;
            wc.n_e = n;
            auto ws = session_with_voters(wc, 2);
            ws->setup();
            ws->register_all();
            ws->run_encryption();
            ws->open_vote();
            ws->vote(ws->voters()[0], 0);
            ws->vote(ws->voters()[1], 1);
            ws->flush_votes();
            ws->close_vote();
            std::set<uint32_t> withheld;
            for (uint32_t i = 1; i <= w; i++) withheld.insert(i);
            ws->withhold_shares(withheld);
            ws->reveal_shares();
            ws->tally();
            bool undecryptable = ws->status() == actors::SessionStatus::kUndecryptable;
            c.expect(undecryptable == (w >= n - k + 1),
                     tag + ": withhold(" + std::to_string(w) + ")");
            if (undecryptable && first_withhold_failure == 0) first_withhold_failure = w;
        }

        // the failure boundaries realize tolerance = min(K-1, N-K)
        uint32_t tolerance = std::min(k - 1, n - k);
        c.expect(first_leak_failure == k, tag + ": leak boundary");
        c.expect(first_withhold_failure == n - k + 1, tag + ": withhold boundary");
        c.expect(tolerance == std::min(first_leak_failure, first_withhold_failure) - 1,
                 tag + ": tolerance formula");
    }
}

// --------------------------------------------------------------------------
// 7. universal verifiability across randomized sessions
// --------------------------------------------------------------------------
void criterion_universal_verifiability(Check& c) {
    for (uint64_t seed = 1; seed <= 100; seed++) {
        DeterministicRng plan(70000 + seed);
        actors::SessionConfig config = toy_config(70000 + seed);
        size_t m = 1 + size_t(plan.below(50));
        if (seed % 3 == 0) config.mode = contracts::ConfMode::kVoteClaim;
        if (seed % 7 == 0) config.proxy_batch = 3;
        auto s = session_with_voters(config, m);
        std::vector<uint32_t> choices(m);
        for (auto& ch : choices) ch = uint32_t(plan.below(3));
        auto local = s->run_full(choices);

        auto report = actors::tally_oracle(s->ledger().export_chain());
        c.expect(report.match(), "seed " + std::to_string(seed) + ": oracle mismatch");
        c.expect(report.legitimacy_ok && report.tag_uniqueness_ok,
                 "seed " + std::to_string(seed) + ": ballot checks");
        c.expect(report.computed == local, "seed " + std::to_string(seed) + ": recount");
        if (!c.ok) return;
    }

    // doctored results must all be flagged
    int flagged = 0;
    const int doctored_runs = 20;
    for (uint64_t seed = 1; seed <= doctored_runs; seed++) {
        actors::SessionConfig config = toy_config(71000 + seed);
        if (seed % 2 == 0) config.mode = contracts::ConfMode::kVoteClaim;
        auto s = session_with_voters(config, 5);
        s->doctor_result(true);
        s->run_full({0, 1, 2, 1, 0});
        auto report = actors::tally_oracle(s->ledger().export_chain());
        if (report.status == actors::OracleReport::Status::kMismatch) flagged++;
    }
    c.expect(flagged == doctored_runs, "doctored sessions flagged " + std::to_string(flagged) +
                                           "/" + std::to_string(doctored_runs));
}

// --------------------------------------------------------------------------
// 8. determinism: same seed, byte-identical chain export
// --------------------------------------------------------------------------
void criterion_determinism(Check& c) {
    auto run_once = [](actors::SessionConfig config, const std::vector<uint32_t>& choices) {
        auto s = session_with_voters(config, choices.size());
        s->run_full(choices);
        return s->ledger().export_chain();
    };

    actors::SessionConfig threshold = toy_config(80001);
    c.expect(run_once(threshold, {0, 1, 2, 1, 0}) == run_once(threshold, {0, 1, 2, 1, 0}),
             "threshold-mode export differs");

    actors::SessionConfig claim = toy_config(80002);
    claim.mode = contracts::ConfMode::kVoteClaim;
    claim.proxy_batch = 2;
    c.expect(run_once(claim, {2, 2, 0, 1}) == run_once(claim, {2, 2, 0, 1}),
             "claim-mode export differs");

    actors::SessionConfig other = toy_config(80003);
    c.expect(run_once(threshold, {0, 1, 2, 1, 0}) != run_once(other, {0, 1, 2, 1, 0}),
             "different seeds collide");
}

// --------------------------------------------------------------------------
// 9. scale: M=1000 session on the 256-bit curve; verify time linear in n
// --------------------------------------------------------------------------
void criterion_scale(Check& c) {
    actors::SessionConfig config;
    config.curve_name = "secp256k1";
    config.seed = 90009;
    config.choices = {"alpha", "beta", "gamma"};
    config.k_i = 1;
    config.n_i = 3;
    config.k_e = 3;
    config.n_e = 5;
    config.open_height = 6;
    config.close_height = 9;
    config.tally_close_height = 12;

    const size_t m = 1000;
    auto s = session_with_voters(config, m);
    std::vector<uint32_t> choices(m);
    for (size_t i = 0; i < m; i++) choices[i] = uint32_t(i % 3);

    auto t0 = Clock::now();
    auto tally = s->run_full(choices);
    auto t1 = Clock::now();
    double session_s = std::chrono::duration<double>(t1 - t0).count();

    c.expect(s->status() == actors::SessionStatus::kDone, "session completed");
    c.expect(s->ballot_box().ballots().size() == m, "all ballots stored");
    c.expect(tally.total() == m, "all ballots counted");
    c.info("session " + std::to_string(int(session_s)) + "s");

    // per-ballot verify time is linear in the ring size
    const Curve& curve = Curve::builtin("secp256k1");
    DeterministicRng rng(91000);
    std::vector<lsag::KeyPair> keys;
    lsag::Ring full_ring(curve);
    for (size_t i = 0; i < 1000; i++) {
        keys.push_back(lsag::keygen(curve, rng));
        full_ring.append(keys.back().pk);
    }
    std::vector<double> xs, ys;
    for (size_t n : {100, 250, 500, 1000}) {
        lsag::Ring ring(curve,
                        std::vector<Point>(full_ring.keys().begin(),
                                           full_ring.keys().begin() + ptrdiff_t(n)));
        lsag::RingPrecomp pre(ring);
        const int ballots = 5;
        std::vector<std::pair<Bytes, lsag::Signature>> sigs;
        for (int b = 0; b < ballots; b++) {
            Bytes msg = rng.bytes(64);
            size_t pi = size_t(rng.below(n));
            sigs.emplace_back(msg, lsag::sign(ring, pi, keys[pi].sk, msg, rng, &pre));
        }
        auto v0 = Clock::now();
        for (const auto& [msg, sig] : sigs) {
            if (!lsag::verify(ring, msg, sig, &pre)) c.expect(false, "scale verify failed");
        }
        auto v1 = Clock::now();
        double per_ballot_ms =
            std::chrono::duration<double, std::milli>(v1 - v0).count() / ballots;
        xs.push_back(double(n));
        ys.push_back(per_ballot_ms);
    }
    // least-squares fit and R^2
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t count = xs.size();
    for (size_t i = 0; i < count; i++) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    double intercept = (sy - slope * sx) / count;
    double ss_res = 0, ss_tot = 0, mean = sy / count;
    for (size_t i = 0; i < count; i++) {
        double fit = slope * xs[i] + intercept;
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - mean) * (ys[i] - mean);
    }
    double r2 = 1.0 - ss_res / ss_tot;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "verify ms per ballot: %.1f/%.1f/%.1f/%.1f, R2=%.4f", ys[0],
                  ys[1], ys[2], ys[3], r2);
    c.info(buf);
    c.expect(r2 > 0.99, "linear fit R2 too low");
}

// --------------------------------------------------------------------------
// 10. adversarial suites: linkability, non-frameability, anonymity smoke,
//     unforgeability with corruption
// --------------------------------------------------------------------------
void criterion_adversarial(Check& c) {
    const Curve& curve = Curve::builtin("toy64007");
    DeterministicRng rng(100001);

    // linkability: an adversary holding k keys cannot produce k+1 pairwise
    // unlinked valid signatures over the same ring
    {
        lsag::Ring ring(curve);
        std::vector<lsag::KeyPair> keys;
        for (int i = 0; i < 8; i++) {
            keys.push_back(lsag::keygen(curve, rng));
            ring.append(keys.back().pk);
        }
        const size_t corrupt = 4;
        std::vector<lsag::Signature> sigs;
        for (size_t i = 0; i < corrupt + 1; i++) {
            size_t key = i % corrupt; // 5 signatures from only 4 distinct keys
            sigs.push_back(lsag::sign(ring, key, keys[key].sk, rng.bytes(16), rng));
        }
        int linked_pairs = 0;
        for (size_t i = 0; i < sigs.size(); i++) {
            for (size_t j = i + 1; j < sigs.size(); j++) {
                if (lsag::link(curve, sigs[i], sigs[j])) linked_pairs++;
            }
        }
        c.expect(linked_pairs >= 1, "k+1 signatures from k keys must link somewhere");

        // distinct honest signers never link
        int false_links = 0;
        for (int trial = 0; trial < 100; trial++) {
            size_t a = size_t(rng.below(8)), b = (a + 1 + size_t(rng.below(7))) % 8;
            auto sa = lsag::sign(ring, a, keys[a].sk, rng.bytes(8), rng);
            auto sb = lsag::sign(ring, b, keys[b].sk, rng.bytes(8), rng);
            if (lsag::link(curve, sa, sb)) false_links++;
        }
        c.expect(false_links == 0, "distinct signers linked");
    }

    // non-frameability: corrupt members cannot produce a signature linking to
    // an honest user
    {
        lsag::Ring ring(curve);
        std::vector<lsag::KeyPair> keys;
        for (int i = 0; i < 6; i++) {
            keys.push_back(lsag::keygen(curve, rng));
            ring.append(keys.back().pk);
        }
        Bytes honest_msg = to_bytes("honest ballot");
        auto honest = lsag::sign(ring, 0, keys[0].sk, honest_msg, rng);
        for (size_t corrupt = 1; corrupt < 6; corrupt++) {
            for (int trial = 0; trial < 20; trial++) {
                Bytes msg = rng.bytes(12);
                auto attempt = lsag::sign(ring, corrupt, keys[corrupt].sk, msg, rng);
                c.expect(lsag::verify(ring, msg, attempt), "corrupt signature must verify");
                c.expect(!lsag::link(curve, attempt, honest),
                         "corrupt member framed the honest signer");
            }
        }
    }

    // anonymity smoke: the signature structure carries no signer-index marker
    {
        lsag::Ring ring(curve);
        std::vector<lsag::KeyPair> keys;
        for (int i = 0; i < 4; i++) {
            keys.push_back(lsag::keygen(curve, rng));
            ring.append(keys.back().pk);
        }
        Bytes msg = to_bytes("anonymity probe");
        double g = double(curve.params().order.low_u64());
        for (size_t pi = 0; pi < 4; pi++) {
            auto probe = lsag::sign(ring, pi, keys[pi].sk, msg, rng);
            c.expect(lsag::verify(ring, msg, probe), "probe verifies");
            double mean = 0;
            const int trials = 150;
            for (int t = 0; t < trials; t++) {
                auto sig = lsag::sign(ring, pi, keys[pi].sk, msg, rng);
                for (const auto& s : sig.s) mean += double(s.v.low_u64());
            }
            mean /= trials * 4;
            c.expect(mean > 0.35 * g && mean < 0.65 * g,
                     "coefficient distribution skewed for signer " + std::to_string(pi));
        }
    }

    // unforgeability with corruption: keys outside the ring plus a signing
    // oracle never yield a fresh verifying signature
    {
        lsag::Ring ring(curve);
        std::vector<lsag::KeyPair> honest;
        for (int i = 0; i < 8; i++) {
            honest.push_back(lsag::keygen(curve, rng));
            ring.append(honest.back().pk);
        }
        std::vector<lsag::KeyPair> corrupted;
        for (int i = 0; i < 5; i++) corrupted.push_back(lsag::keygen(curve, rng));

        Bytes target = to_bytes("forged statement");
        int accepted = 0;

        // (a) random tuples
        for (int t = 0; t < 2000; t++) {
            lsag::Signature forged;
            forged.ring_digest = ring.digest();
            forged.tag = curve.mul_generator(curve.random_scalar(rng));
            forged.s.resize(8);
            for (auto& s : forged.s) s = curve.random_scalar(rng, true);
            forged.c = curve.random_scalar(rng, true);
            if (lsag::verify(ring, target, forged)) accepted++;
        }

        // (b) corrupt keys run the signing equations over an impostor ring,
        // then present the signature against the honest ring
        for (const auto& kp : corrupted) {
            std::vector<Point> impostor_keys = ring.keys();
            impostor_keys[3] = kp.pk;
            lsag::Ring impostor(curve, impostor_keys);
            auto sig = lsag::sign(impostor, 3, kp.sk, target, rng);
            sig.ring_digest = ring.digest(); // lie about the ring
            if (lsag::verify(ring, target, sig)) accepted++;
        }

        // (c) honest signatures replayed on different messages
        for (int t = 0; t < 50; t++) {
            size_t pi = size_t(rng.below(8));
            auto sig = lsag::sign(ring, pi, honest[pi].sk, rng.bytes(24), rng);
            if (lsag::verify(ring, target, sig)) accepted++;
        }
        c.expect(accepted == 0, std::to_string(accepted) + " forgeries accepted");
    }
}

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<void(Check&)> run;
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {1, "storage size table (exact)", 1.0, criterion_storage_table},
        {2, "per-phase cost accounting, formula and measured (exact)", 30.0,
         criterion_phase_costs},
        {3, "signature correctness with independent chain oracle", 60.0,
         criterion_signature_correctness},
        {4, "double-vote detection across 100 seeded sessions (exact)", 60.0,
         criterion_double_vote},
        {5, "forgery rejection, 10^4 random signatures vs 16-ring", 30.0,
         criterion_forgery_rejection},
        {6, "threshold failure boundaries match min(K-1, N-K) (exact)", 30.0,
         criterion_threshold_tolerance},
        {7, "universal verifiability, 100 honest + 20 doctored sessions", 300.0,
         criterion_universal_verifiability},
        {8, "deterministic replay from seed (byte-identical)", 60.0, criterion_determinism},
        {9, "scale: 1000-voter session, linear verify cost", 600.0, criterion_scale},
        {10, "adversarial suites (link, frame, anonymity, forgery)", 300.0,
         criterion_adversarial},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check check;
        auto t0 = Clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
        if (elapsed > criterion.budget_s) {
            check.expect(false, "time budget exceeded (" + std::to_string(elapsed) + "s > " +
                                    std::to_string(criterion.budget_s) + "s)");
        }
        std::string detail = check.detail.str();
        std::printf("%s criterion %2d: %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL",
                    criterion.id, criterion.title, elapsed, detail.empty() ? "" : " — ",
                    detail.c_str());
        std::fflush(stdout);
        if (!check.ok) failures++;
    }
    if (failures) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
