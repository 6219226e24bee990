"""Hand-planted colorings that break exactly one validity condition each.

All fixtures live on the cycle 0..5 (boundary in id order) or 0..3.
"""

from linforest.generator import gen_cycle
from linforest.instance import Instance


def _c(*colors):
    return dict(enumerate(colors))


def fixtures():
    c6 = gen_cycle(6)
    return {
        # 0 is precolored 2 but gets 1; both classes are independent sets
        "C1": (Instance(c6, (0,), frozenset(), None, {0: 2}), _c(1, 2, 1, 2, 1, 2)),
        # all-2 on the 4-cycle is a monochromatic cycle
        "C2": (Instance(gen_cycle(4), (), frozenset(), None, {}), _c(2, 2, 2, 2)),
        # 1 is precolored 1, so its neighbour 2 must not be 1
        "C3": (Instance(c6, (1,), frozenset(), None, {1: 1}), _c(2, 1, 1, 2, 1, 2)),
        # 0 is precolored 1 with Q-neighbour 1; its other boundary neighbour 5
        # reaches 1 along the color-2 path 5 4 3 2 1
        "C4": (Instance(c6, (0,), frozenset({1}), None, {0: 1}), _c(1, 2, 2, 2, 2, 2)),
        # z = 0 is colored 1 with both neighbours colored 1
        "C5": (Instance(c6, (), frozenset(), 0, {}), _c(1, 1, 2, 2, 2, 1)),
    }
