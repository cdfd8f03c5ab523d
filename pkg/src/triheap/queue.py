"""Public priority-queue operations over the perfect-tree forest.

The queue keeps a forest of perfect heap-ordered binary trees, fixes digit
overflows after every mutation, and accounts every potential change in its
ledger.  delete_min never needs a sift-down: detaching a root leaves two
trees that are already heap-ordered, which is the whole point of the
rearrangement-based design (and why no sift-down exists in this package).
"""

from __future__ import annotations

import operator

from .errors import ContractViolation, InvalidHandleError
from .forest import FixPolicy, Forest
from .ledger import PotentialLedger
from .tree import (CountingComparator, Handle, Node, detach_root,
                   sift_to_root, sift_up)


class Queue:
    """Min-priority queue with insert, find/delete-min, decrease-key, delete
    and meld, all addressed through stable element handles.

    A queue is single-owner: it may be handed between threads as a whole but
    must never be accessed concurrently.  Independent queues are fully
    isolated and safe to use from parallel threads.
    """

    __slots__ = ("policy", "comparator", "forest", "ledger", "fix_total",
                 "alive")

    def __init__(self, policy=None, less=operator.lt, keep_records=False,
                 comparator=None, ledger=None):
        self.policy = policy if policy is not None else FixPolicy()
        self.comparator = comparator or CountingComparator(less)
        self.forest = Forest(self.policy)
        self.ledger = ledger or PotentialLedger(keep_records=keep_records)
        self.fix_total = 0
        self.alive = True

    def __len__(self):
        return self.forest.size

    @property
    def size(self):
        return self.forest.size

    def _require_alive(self):
        if not self.alive:
            raise ContractViolation("queue was already consumed by meld")

    def _live_node(self, handle):
        node = handle.node
        if node is None:
            raise InvalidHandleError("handle's element was already removed")
        return node

    def _run_fix(self):
        fixes = self.forest.fix(self.comparator,
                                self.ledger.record_rearrangement)
        self.fix_total += fixes
        return fixes

    def insert(self, key, payload=None):
        """Add an element as a fresh height-0 tree; returns its handle.

        The singleton contributes nothing to phi; any carries it triggers are
        accounted separately by the fix machinery.
        """
        self._require_alive()
        c0 = self.comparator.count
        node = Node(key, payload)
        handle = Handle(node)
        self.forest.add_root(node, 0)
        self.ledger.record_structural("insert", 0)
        fixes = self._run_fix()
        self.ledger.finish_op(fixes, self.comparator.count - c0)
        return handle

    def find_min(self):
        """Return (key, payload) of a minimal element without mutating."""
        self._require_alive()
        c0 = self.comparator.count
        _, _, root = self.forest.scan_min(self.comparator)
        self.ledger.record_structural("find_min", 0)
        self.ledger.finish_op(0, self.comparator.count - c0)
        return root.key, root.payload

    def delete_min(self):
        """Remove and return (key, payload) of a minimal element.

        The minimal root (found by scanning all roots) is detached; its two
        subtrees rejoin the forest as they are and carries run per policy.
        Detaching a height-h tree and re-adding two height-(h-1) trees
        changes phi by h - 2 (by 0 for a singleton).
        """
        self._require_alive()
        c0 = self.comparator.count
        h, index, root = self.forest.scan_min(self.comparator)
        self.forest.remove_root(h, index)
        key = root.key
        payload = root.payload
        left, right = detach_root(root)
        if left is not None:
            self.forest.add_root(left, h - 1)
            self.forest.add_root(right, h - 1)
            delta = h - 2
        else:
            delta = 0
        self.ledger.record_structural("delete_min", delta)
        fixes = self._run_fix()
        self.ledger.finish_op(fixes, self.comparator.count - c0)
        return key, payload

    def decrease_key(self, handle, new_key):
        """Lower the keyed element to new_key and restore heap order upward.

        Content swaps only: tree shapes, forest digits and phi are untouched
        and the handle keeps tracking its element.
        """
        self._require_alive()
        node = self._live_node(handle)
        c0 = self.comparator.count
        if self.comparator(node.key, new_key):
            raise ContractViolation(
                f"decrease_key to {new_key!r} would raise {node.key!r}")
        node.key = new_key
        sift_up(node, self.comparator)
        self.ledger.record_structural("decrease_key", 0)
        self.ledger.finish_op(0, self.comparator.count - c0)

    def delete(self, handle):
        """Remove the element behind handle.

        Its content is hoisted to its tree's root without any comparison
        (treated as below every key), then the root is split off exactly as
        in delete_min.
        """
        self._require_alive()
        node = self._live_node(handle)
        c0 = self.comparator.count
        root = sift_to_root(node)
        h, index = self.forest.find_root(root)
        self.forest.remove_root(h, index)
        left, right = detach_root(root)
        if left is not None:
            self.forest.add_root(left, h - 1)
            self.forest.add_root(right, h - 1)
            delta = h - 2
        else:
            delta = 0
        self.ledger.record_structural("delete", delta)
        fixes = self._run_fix()
        self.ledger.finish_op(fixes, self.comparator.count - c0)

    def meld(self, other):
        """Absorb other into self; returns the melded queue (self).

        Both inputs are consumed: other is dead afterwards and self becomes
        the result.  Buckets concatenate height-wise with self's trees first,
        no tree changes height before fixing, and every handle from either
        input stays valid against the result.
        """
        self._require_alive()
        other._require_alive()
        if other is self:
            raise ContractViolation("cannot meld a queue with itself")
        if self.policy != other.policy:
            raise ContractViolation(
                f"meld across fix policies {self.policy} / {other.policy}")
        shared = other.comparator is self.comparator
        if not shared and other.comparator.raw_less is not self.comparator.raw_less:
            raise ContractViolation("meld across different comparators")
        c0 = self.comparator.count + (0 if shared else other.comparator.count)
        for h in sorted(other.forest.buckets):
            for root in other.forest.buckets[h]:
                self.forest.add_root(root, h)
        if not shared:
            self.comparator.count += other.comparator.count
        if other.ledger is not self.ledger:
            self.ledger.absorb(other.ledger)
        self.fix_total += other.fix_total
        other.forest = Forest(other.policy)
        other.alive = False
        self.ledger.record_structural("meld", 0)
        fixes = self._run_fix()
        self.ledger.finish_op(fixes, self.comparator.count - c0)
        return self

    def validate(self, full=True):
        """Diagnostics over forest structure and ledger agreement.

        full=True walks every tree (perfectness, heap order, handles);
        full=False checks only the cheap bucket/size/digit/ledger facts.
        """
        problems = self.forest.validate(self.comparator.raw_less, full=full)
        problems.extend(self.ledger.audit(self.forest))
        if self.fix_total != self.ledger.rearrangements:
            problems.append(
                f"fix() reported {self.fix_total} carries, ledger saw "
                f"{self.ledger.rearrangements}")
        return problems


def make_queue(policy=None, less=operator.lt, keep_records=False):
    """Fresh empty queue: size 0, phi 0, no trees at any height."""
    return Queue(policy=policy, less=less, keep_records=keep_records)


def meld(q1, q2):
    """Meld two queues, consuming both; returns the combined queue."""
    return q1.meld(q2)
