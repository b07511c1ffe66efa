"""Canonical small examples used by the tests and the command line."""

from __future__ import annotations

import os

from .actions import ModuleAlgebra, RightModule, adjoint_self_action, trivial_action
from .errors import UnknownFixture
from .groups import PermGroup, function_algebra, group_algebra, sweedler_h4
from .hopf import Algebra, Hopf
from .linalg import QQ


def point_algebra(field=QQ) -> Algebra:
    one = field.one
    return Algebra(1, [[{0: one}]], {0: one}, field, "C")


def f1(field=QQ) -> ModuleAlgebra:
    """H = C acting trivially on B = C."""
    return trivial_action(point_algebra(field), Hopf.trivial(field))


def f2(field=QQ) -> ModuleAlgebra:
    """C[Z/2] acting on C(Z/2) by swapping the two point masses."""
    h = group_algebra(PermGroup.cyclic(2), field)
    b = function_algebra(PermGroup.cyclic(2), field).alg
    one = field.one
    module = RightModule.from_function(h, 2, lambda i, j: {i ^ j: one}, "swap")
    return ModuleAlgebra(b, module, "C(Z/2)")


def f3(field=QQ) -> ModuleAlgebra:
    """H4 acting on itself by the right adjoint action."""
    return adjoint_self_action(sweedler_h4(field))


def f4(field=QQ):
    """C(S3) → C(Z/2), restriction to the subgroup generated by the transposition (0 1)."""
    from .homogeneous import subgroup_of_group
    g = PermGroup.symmetric(3)
    return subgroup_of_group(g, [0, g.index[(1, 0, 2)]], field, "s3-z2")


MODULE_ALGEBRAS = {"F1": f1, "F2": f2, "F3": f3}


def _worked_index(field=QQ):
    from .index import worked_index_module
    return worked_index_module(field)


def _worked_index_z2(field=QQ):
    from .index import worked_index_z2_module
    return worked_index_z2_module(field)


# fixture name → (file name, constructor)
FIXTURES = {
    "trivial": ("trivial.json", f1),
    "f1": ("f1.json", f1),
    "f2": ("f2.json", f2),
    "f3": ("f3.json", f3),
    "sweedler-h4": ("h4.json", sweedler_h4),
    "s3-z2": ("s3_z2.json", f4),
    "worked-index": ("worked_index.json", _worked_index),
    "worked-index-z2": ("worked_index_z2.json", _worked_index_z2),
}


def build_fixture(name: str):
    if name not in FIXTURES:
        raise UnknownFixture("%r (known: %s)" % (name, ", ".join(sorted(FIXTURES))))
    return FIXTURES[name][1]()


def fixture_document(name: str) -> dict:
    from .serialize import to_document
    return to_document(build_fixture(name))


def fixtures_emit(names, outdir: str) -> list:
    """Write the named fixtures (all when ``names`` is empty) and return the paths written."""
    from .serialize import dumps
    names = list(names) or list(FIXTURES)
    for name in names:
        if name not in FIXTURES:
            raise UnknownFixture("%r (known: %s)" % (name, ", ".join(sorted(FIXTURES))))
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for name in names:
        path = os.path.join(outdir, FIXTURES[name][0])
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps(fixture_document(name)))
        paths.append(path)
    return paths
