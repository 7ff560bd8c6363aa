#!/usr/bin/env python3
"""Smoke tests for the python bindings."""

import os
import sys
import tempfile

import lpt


def check(name, condition):
    if not condition:
        raise AssertionError(name)
    print(f"ok   {name}")


# parsing and formatting
keys = lpt.parse("F keyA & F keyB")
check("parse/format round trip", lpt.parse(lpt.format_formula(keys)) == keys)
check("str(formula)", str(keys) == "F keyA & F keyB")
check("node count", keys.node_count == 5)
check("height", keys.height == 2)
check("arguments", [str(a) for a in lpt.arguments(keys)] == ["F keyA", "F keyB"])
check("atom names", lpt.atom_names(keys) == ["keyA", "keyB"])

try:
    lpt.parse("a &")
    raise AssertionError("expected a parse error")
except lpt.Error:
    check("parse error raises lpt.Error", True)

try:
    lpt.parse("zoo", vocabulary=["a"])
    raise AssertionError("expected unknown atom")
except lpt.Error:
    check("unknown atom raises lpt.Error", True)

# tracking the key walkthrough
engine = lpt.track(keys, [[], [], ["keyA"]])
check("walkthrough vectors", engine.vectors == [
    [-1, -1, -1], [1, 1, 1], [-1, -1, -1], [0, 0, 1], [0, 0, 0]])
check("walkthrough signature", engine.signature_text() == "[[-1],[1],[-1],[0,1],[0]]")
check("eval bound", engine.eval_count <= engine.eval_bound)
check("dump dict", lpt.dump(engine)["time"] == 2)

engine.finalize()
check("finalized root", engine.vectors[0] == [0, 0, 0])

# oracle
trace = lpt.Trace([[], [], ["keyA"]])
check("holds F keyA", lpt.holds(lpt.parse("F keyA"), trace, 0))
check("oracle vector", lpt.oracle_tracking_vector(lpt.parse("keyA"), trace) ==
      [False, False, True])
check("open verdict", lpt.status_under_continuations(
    lpt.parse("F keyB"), trace, 0, ["keyA", "keyB"], 2) == "open")

try:
    lpt.holds(lpt.parse("a"), trace, 99)
    raise AssertionError("expected IndexError")
except IndexError:
    check("range errors map to IndexError", True)

# signatures
check("merge runs", lpt.merge_runs([0, 0, 1, -1, -1]) == [0, 1, -1])
check("signature distance", lpt.signature_distance([[0, 1]], [[0]]) == 1)

# reward machine
state = lpt.RMState.init(keys)
seen = set()
replay_first = []
for labels in ([], [], ["keyA"], [], ["keyB"]):
    state = state.step(list(labels))
    replay_first.append(lpt.reward_novelty(state, seen))
    seen.add(state.digest())
check("fresh digests pay", sum(replay_first) > 0)

state = lpt.RMState.init(keys)
replay_total = 0.0
for labels in ([], [], ["keyA"], [], ["keyB"]):
    state = state.step(list(labels))
    replay_total += lpt.reward_novelty(state, seen)
check("replay earns zero", replay_total == 0.0)

a_first = lpt.RMState.init(keys).step([]).step(["keyA"])
b_first = lpt.RMState.init(keys).step([]).step(["keyB"])
check("behavioral digests differ", a_first.digest() != b_first.digest())
check("goal reward", lpt.reward_goal(b_first, b_first.digest()) == 1.0)
check("goal miss", lpt.reward_goal(a_first, b_first.digest()) == 0.0)

early = lpt.RMState.init(keys).step([]).step(["keyA"])
late = lpt.RMState.init(keys).step([]).step([]).step([]).step(["keyA"])
check("signature digest erases timing", early.digest() == late.digest())
check("state digest keeps timing", early.digest("state") != late.digest("state"))

terminal = early.finalize()
check("terminal flag", terminal.is_terminal)
try:
    terminal.step([])
    raise AssertionError("expected terminal error")
except lpt.Error:
    check("terminal states refuse steps", True)

# trace files
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "demo.trace")
    with open(path, "w") as handle:
        handle.write('{"vocabulary":["keyA","keyB"]}\n[]\n["keyA"]\n')
    loaded, vocabulary = lpt.load_trace_file(path)
    check("trace file steps", loaded.steps == [[], ["keyA"]])
    check("trace file vocabulary", vocabulary == ["keyA", "keyB"])

    spec_path = os.path.join(tmp, "demo.spec")
    with open(spec_path, "w") as handle:
        handle.write("# demo\nF keyA\n")
    check("formula file", str(lpt.load_formula_file(spec_path)) == "F keyA")

print()
print("python smoke: all checks passed")
sys.exit(0)
