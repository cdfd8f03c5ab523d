"""Height-indexed buckets of perfect trees and the digit-bound fix procedures.

The forest is the queue's whole state: a map from height h to the list of
trees of that height.  Read the bucket sizes as digits of a positional number
system with place values 2**(h+1) - 1; fix() is then carry propagation, three
same-height trees being traded for one taller tree (and two shorter ones)
via the rearrangement step.

Internally a bucket holds bare root nodes; the height lives once in the
bucket key instead of once per tree, which keeps the carry path free of
wrapper churn.  PerfectTree views are materialized where callers want whole
trees (iteration, validation).
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

from .errors import ContractViolation, EmptyQueueError
from .tree import PerfectTree, rearrange_roots, validate_tree

EAGER = "eager"
RELAXED = "relaxed"


@dataclass(frozen=True)
class FixPolicy:
    """How aggressively fix() restores the per-height tree-count bound.

    eager repeats carries until no height holds three or more trees, keeping
    every digit <= 2.  relaxed spends at most relaxed_budget carries per call
    on digits >= 3, then force-fixes any digit that reached 5, keeping every
    digit <= 4 while doing near-constant work per call in the typical case.
    """

    mode: str = EAGER
    relaxed_budget: int = 1

    def __post_init__(self):
        if self.mode not in (EAGER, RELAXED):
            raise ContractViolation(f"unknown fix policy mode {self.mode!r}")
        if self.relaxed_budget < 1:
            raise ContractViolation("relaxed_budget must be >= 1")

    @property
    def digit_bound(self):
        return 2 if self.mode == EAGER else 4


class Forest:
    """Buckets of perfect trees keyed by height.

    Buckets are stored sparsely; an absent height is a zero digit.  Lists
    keep insertion order, and all scheduling below is deterministic, so
    identical operation sequences produce identical forests.
    """

    __slots__ = ("buckets", "size", "policy", "_overfull")

    def __init__(self, policy=None):
        self.buckets = {}
        self.size = 0
        self.policy = policy if policy is not None else FixPolicy()
        self._overfull = set()  # heights whose digit is >= 3, kept exact

    def add_root(self, root, height):
        """File a root node under its height.  Never triggers fixing."""
        bucket = self.buckets.get(height)
        if bucket is None:
            self.buckets[height] = [root]
        else:
            bucket.append(root)
            if len(bucket) == 3:
                self._overfull.add(height)
        self.size += (1 << (height + 1)) - 1

    def add_tree(self, tree):
        """Append a PerfectTree to its height bucket.  Never triggers fixing."""
        self.add_root(tree.root, tree.height)

    def remove_root(self, height, index):
        """Take the root at (height, bucket position) out of the forest."""
        bucket = self.buckets[height]
        root = bucket.pop(index)
        if not bucket:
            del self.buckets[height]
        if len(bucket) < 3:
            self._overfull.discard(height)
        self.size -= (1 << (height + 1)) - 1
        return root

    def find_root(self, root):
        """Locate the tree rooted at this node; returns (height, index)."""
        for h, bucket in self.buckets.items():
            for i, node in enumerate(bucket):
                if node is root:
                    return h, i
        raise ContractViolation("node does not root any tree of this forest")

    def digit(self, height):
        """Number of trees of the given height (0 when absent)."""
        bucket = self.buckets.get(height)
        return len(bucket) if bucket else 0

    def digits(self):
        """Dense digit vector from height 0 up to the tallest present tree."""
        if not self.buckets:
            return []
        top = max(self.buckets)
        return [self.digit(h) for h in range(top + 1)]

    def max_digit(self):
        if not self.buckets:
            return 0
        return max(len(b) for b in self.buckets.values())

    def tree_count(self):
        return sum(len(b) for b in self.buckets.values())

    def height_sum(self):
        """The potential: sum of heights over all trees in the forest."""
        return sum(h * len(b) for h, b in self.buckets.items())

    def trees(self):
        """All trees as PerfectTree views, height ascending, bucket order."""
        for h in sorted(self.buckets):
            for root in self.buckets[h]:
                yield PerfectTree(root, h)

    def scan_min(self, less):
        """Find a tree with minimal root key; returns (height, index, root).

        Ties go to the lower height, then the earlier bucket position.
        Exactly (number of trees - 1) comparisons, counted in bulk on the
        comparator.
        """
        if self.size == 0:
            raise EmptyQueueError("scan_min on an empty forest")
        raw = less.raw_less
        seen = 0
        best = None
        best_key = None
        for h in sorted(self.buckets):
            bucket = self.buckets[h]
            seen += len(bucket)
            i = 0
            for root in bucket:
                key = root.key
                if best is None or raw(key, best_key):
                    best = (h, i, root)
                    best_key = key
                i += 1
        less.count += seen - 1
        return best

    def _carry_at(self, h, less, on_rearrange):
        """One carry: rearrange the first three trees of bucket h (FIFO)."""
        bucket = self.buckets[h]
        r1 = bucket[0]
        r2 = bucket[1]
        r3 = bucket[2]
        del bucket[:3]
        if not bucket:
            del self.buckets[h]
        if len(bucket) < 3:
            self._overfull.discard(h)
        less.count += 2
        top, old_left, old_right = rearrange_roots(r1, r2, r3, less.raw_less)
        above = self.buckets.get(h + 1)
        if above is None:
            self.buckets[h + 1] = [top]
        else:
            above.append(top)
            if len(above) >= 3:
                self._overfull.add(h + 1)
        if old_left is not None:
            below = self.buckets.get(h - 1)
            if below is None:
                self.buckets[h - 1] = [old_left, old_right]
            else:
                below.append(old_left)
                below.append(old_right)
                if len(below) >= 3:
                    self._overfull.add(h - 1)
            if on_rearrange is not None:
                on_rearrange(h, 3 * h - 1)  # (h+1) + 2(h-1)
        elif on_rearrange is not None:
            on_rearrange(h, 1)  # three singletons became one height-1 tree

    def fix(self, less, on_rearrange=None):
        """Restore the policy's digit bound; returns carries performed.

        less must be a counting comparator (the carries charge their two
        comparisons in bulk).  Always fixes the lowest qualifying height
        first, mirroring carry propagation in a positional number system.
        on_rearrange, when given, is called after each carry with (input
        height, sum of the three output trees' heights) so callers can
        account potential changes from ground truth.
        """
        done = 0
        overfull = self._overfull
        if self.policy.mode == EAGER:
            while overfull:
                self._carry_at(min(overfull), less, on_rearrange)
                done += 1
            return done
        for _ in range(self.policy.relaxed_budget):
            if not overfull:
                return done
            self._carry_at(min(overfull), less, on_rearrange)
            done += 1
        while True:
            h5 = -1
            for h in overfull:
                if len(self.buckets[h]) >= 5 and (h5 < 0 or h < h5):
                    h5 = h
            if h5 < 0:
                return done
            self._carry_at(h5, less, on_rearrange)
            done += 1

    def validate(self, less=operator.lt, full=True):
        """Diagnostics for bucket bookkeeping and (optionally) every tree."""
        problems = []
        total = 0
        for h, bucket in self.buckets.items():
            if not bucket:
                problems.append(f"empty bucket kept at height {h}")
            if len(bucket) > self.policy.digit_bound:
                problems.append(
                    f"digit {len(bucket)} at height {h} exceeds bound "
                    f"{self.policy.digit_bound}")
            total += len(bucket) * ((1 << (h + 1)) - 1)
        if total != self.size:
            problems.append(f"size {self.size}, but trees hold {total} elements")
        actual_overfull = {h for h, b in self.buckets.items() if len(b) >= 3}
        if actual_overfull != self._overfull:
            problems.append(
                f"overfull cache {sorted(self._overfull)} != actual "
                f"{sorted(actual_overfull)}")
        if full:
            for tree in self.trees():
                problems.extend(validate_tree(tree, less))
        return problems
