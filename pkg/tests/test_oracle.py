"""The reference queue and differential runs, including fault injection."""

import pytest

from triheap.errors import ContractViolation, EmptyQueueError
from triheap.forest import FixPolicy
from triheap.oracle import OracleQueue, oracle_apply, run_differential
from triheap.workload import QueueRunner, WorkloadScript, generate_script


class TestOracleQueue:

    def test_insert_find(self):
        o = OracleQueue()
        o.insert(5)
        assert o.find_min() == 5

    def test_sorts(self):
        o = OracleQueue()
        for k in (3, 1, 2):
            o.insert(k)
        assert [o.delete_min() for _ in range(3)] == [1, 2, 3]

    def test_decrease_and_delete(self):
        o = OracleQueue()
        a = o.insert(10)
        b = o.insert(20)
        o.decrease_key(b, 5)
        assert o.find_min() == 5
        o.delete(b)
        assert o.find_min() == 10
        assert len(o) == 1
        o.delete(a)
        with pytest.raises(EmptyQueueError):
            o.find_min()

    def test_duplicate_keys(self):
        o = OracleQueue()
        for _ in range(3):
            o.insert(7)
        assert [o.delete_min() for _ in range(3)] == [7, 7, 7]

    def test_increase_rejected(self):
        o = OracleQueue()
        eid = o.insert(1)
        with pytest.raises(ContractViolation):
            o.decrease_key(eid, 2)

    def test_nondecreasing_drain(self):
        o = OracleQueue()
        for k in (9, 4, 6, 4, 1):
            o.insert(k)
        drained = [o.delete_min() for _ in range(5)]
        assert drained == sorted(drained)

    def test_oracle_apply_roster(self):
        o = OracleQueue()
        assert oracle_apply(o, ("i", 5)) is None
        assert oracle_apply(o, ("fm",)) == 5
        assert oracle_apply(o, ("dk", 0, 2)) is None
        assert oracle_apply(o, ("dm",)) == 2
        assert oracle_apply(o, ("meld-split", 0.5)) is None


class TestRunDifferential:

    def test_empty_script_passes(self):
        verdict = run_differential(WorkloadScript([]))
        assert verdict.passed
        assert verdict.ops_run == 0

    def test_planted_bug_reported_at_first_bad_op(self):
        script = WorkloadScript([("i", 5), ("i", 3), ("fm",), ("dm",),
                                 ("dm",)])

        class OffByOneRunner(QueueRunner):
            def apply(self, op):
                result = super().apply(op)
                if op[0] == "dm":
                    return result + 1
                return result

        verdict = run_differential(
            script, runner_factory=lambda policy: OffByOneRunner(policy=policy))
        assert not verdict.passed
        assert verdict.divergence.op_index == 3
        assert verdict.divergence.expected == ("ok", 3)
        assert verdict.divergence.got == ("ok", 4)

    def test_planted_invariant_break_reported(self):
        script = WorkloadScript([("i", 5), ("i", 6), ("i", 7), ("i", 8)])

        class PhiDriftRunner(QueueRunner):
            def apply(self, op):
                result = super().apply(op)
                if len(self.queue) == 3:
                    self.queue.ledger.phi += 1
                return result

        verdict = run_differential(
            script, runner_factory=lambda policy: PhiDriftRunner(policy=policy))
        assert not verdict.passed
        assert verdict.failures

    def test_matching_errors_agree(self):
        script = WorkloadScript([("i", 1), ("dm",), ("dm",), ("i", 2), ("fm",)])
        verdict = run_differential(script)
        assert verdict.passed

    def test_random_seeds_both_policies(self):
        for seed in range(5):
            script = generate_script(seed, 2000)
            for policy in (FixPolicy(), FixPolicy("relaxed")):
                verdict = run_differential(script, policy, audit="final")
                assert verdict.passed, f"seed {seed} {policy}: {verdict}"

    def test_audit_always_smoke(self):
        script = generate_script(2, 400)
        verdict = run_differential(script, FixPolicy(), audit="always")
        assert verdict.passed, str(verdict)

    def test_handles_agree_after_100k_ops(self):
        # The final handle-vs-oracle key cross-check runs inside
        # run_differential; a 100k-op script gives it a real population.
        verdict = run_differential(generate_script(17, 100_000),
                                   FixPolicy(), audit="final")
        assert verdict.passed, str(verdict)
