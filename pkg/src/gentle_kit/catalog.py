"""Small named algebras used in examples, tests and the ``builtin:`` CLI prefix."""
from __future__ import annotations

from gentle_kit.core import BoundQuiver


def e1() -> BoundQuiver:
    return BoundQuiver.build(
        "1234",
        [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "2", "4")],
        [("a", "d")],
        "E1",
    )


def e2() -> BoundQuiver:
    return BoundQuiver.build(
        ["x", "u2", "w1", "w3"],
        [("alpha", "x", "u2"), ("beta", "w1", "x"), ("gamma", "x", "w3")],
        [("beta", "alpha")],
        "E2",
    )


def e3() -> BoundQuiver:
    return BoundQuiver.build("12", [("a", "1", "2"), ("b", "2", "1")], [("a", "b"), ("b", "a")], "E3")


def kronecker() -> BoundQuiver:
    return BoundQuiver.build("12", [("a", "1", "2"), ("b", "1", "2")], [], "Kronecker")


def chain(n: int) -> BoundQuiver:
    """Linear quiver 1 -> 2 -> ... -> n with no relations."""
    vs = [str(i) for i in range(1, n + 1)]
    return BoundQuiver.build(vs, [(f"a{i}", vs[i - 1], vs[i]) for i in range(1, n)], [], f"T{n}")


def three_cycle() -> BoundQuiver:
    return BoundQuiver.build(
        "123",
        [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        [("a", "b"), ("b", "c"), ("c", "a")],
        "C3",
    )


def single_vertex() -> BoundQuiver:
    return BoundQuiver.build(["v"], [], [], "point")


BUILTINS = {
    "E1": e1,
    "E2": e2,
    "E3": e3,
    "kronecker": kronecker,
    "C3": three_cycle,
    "point": single_vertex,
}


def builtin(name: str) -> BoundQuiver:
    if name in BUILTINS:
        return BUILTINS[name]()
    if name.startswith("T") and name[1:].isdigit():
        return chain(int(name[1:]))
    raise KeyError(name)
