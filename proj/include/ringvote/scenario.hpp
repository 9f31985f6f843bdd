#pragma once

#include "ringvote/actors.hpp"

namespace ringvote::scenario {

// Declarative session script: a config, an ordered action list, and expected
// outcome assertions, e.g.
//   {"name": "double-vote",
//    "config": {...}, "voters": 10,
//    "actions": [{"op": "run_registration"}, {"op": "open"},
//                {"op": "vote", "voter": 0, "choice": 1}, ...],
//    "assertions": [{"check": "revert_count", "reason": "DOUBLE_VOTE", "equals": 1}]}
//
// Actions: setup, register_all, register (voter, [email]), encryption, open,
// vote (voter, choice, [expect]), vote_all (choices | choice), flush, close,
// forge_flood (count), leak_shares (count), withhold (count | managers),
// reveal, redeem (voter), redeem_all ([except]), doctor_result, advance
// (blocks | to_height), tally, oracle.
//
// Assertions: revert_count (reason, equals), count (choice, equals),
// total/invalid/unclaimed/ballots_stored/replaced_count (equals),
// status (equals), oracle (equals), leaked_reconstruction (equals),
// forge_all_rejected (equals), vote_expectations (all recorded `expect`s).

struct ScenarioResult {
    std::string name;
    bool passed = false;
    std::vector<std::string> failures;
    nlohmann::json report; // observations + per-assertion outcomes
};

ScenarioResult run_script(const nlohmann::json& script);
ScenarioResult run_script_file(const std::string& path);

} // namespace ringvote::scenario
