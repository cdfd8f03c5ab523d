"""Shared test helpers: brute-force tree construction and key extraction.

build_perfect_heap wires nodes together by hand (min key at the root, the
rest split randomly between the two subtrees), so it is an independent way
to obtain valid perfect heaps without going through the operations under
test.
"""

import random

import pytest

from triheap.tree import Handle, Node, PerfectTree


def perfect_size(height):
    return (1 << (height + 1)) - 1


def build_perfect_heap(keys, rng=None):
    """Brute-force a random-shaped perfect heap holding exactly these keys."""
    rng = rng or random.Random(0)
    n = len(keys)
    assert n >= 1 and (n + 1) & n == 0, f"{n} is not 2**k - 1"

    def build(pool):
        pool = sorted(pool)
        node = Node(pool[0])
        Handle(node)
        rest = pool[1:]
        if rest:
            rng.shuffle(rest)
            half = len(rest) // 2
            node.left = build(rest[:half])
            node.right = build(rest[half:])
            node.left.parent = node
            node.right.parent = node
        return node

    root = build(list(keys))
    return PerfectTree(root, (n + 1).bit_length() - 2)


def tree_keys(tree):
    """Multiset of keys in a tree, sorted."""
    return sorted(node.key for node in tree.nodes())


def link_snapshot(tree):
    """Map node id -> (parent, left, right, key, handle) for change tracking."""
    return {id(node): (node.parent, node.left, node.right, node.key,
                       node.handle)
            for node in tree.nodes()}


@pytest.fixture
def rng():
    return random.Random(12345)
