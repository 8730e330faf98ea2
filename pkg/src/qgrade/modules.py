"""Graded type D and type A module presentations and their box tensor gradings.

Only gradings are modelled: a presentation lists generators with grading
representatives and idempotents, and the operations (type D arrows, type A
actions) whose gradings must be consistent.  Type D gradings are stored in the
coordinates of the circle itself, i.e. after applying R.

The ``idempotent`` of a generator is the set of matched pairs (indices into
the sorted matching) whose alpha arcs it occupies.  Type A generators use it
as their algebra idempotent directly; type D generators use the complement.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import grgroup
from .errors import (
    CircleMismatch,
    GradingSetMismatch,
    ParseError,
    UnknownAlgebraElement,
    UnknownGenerator,
    UnknownWord,
)
from .grgroup import DoubleCoset, GradingElement, RelativeGrading, SubgroupSpan
from .pmc import PointedMatchedCircle, torus
from .serialize import load_json, parse_element

_TORUS_WORDS = ("1", "2", "3", "12", "23", "123")


def torus_algebra_grading(word: str) -> GradingElement:
    """Grading of rho_word in the torus algebra: the product of (-1/2; e_i) in word order."""
    word = str(word)
    if word.startswith("rho"):
        word = word[3:]
    if word not in _TORUS_WORDS:
        raise UnknownWord(f"{word!r} is not one of rho1, rho2, rho3, rho12, rho23, rho123")
    circle = torus()
    pieces = [grgroup.element(circle, Fraction(-1, 2), [int(i == int(c)) for i in (1, 2, 3)]) for c in word]
    return grgroup.product(pieces, circle)


def torus_idempotents(word: str) -> tuple[int, int]:
    """(left, right) algebra idempotents of rho_word, as matched-pair indices."""
    word = word[3:] if word.startswith("rho") else word
    circle = torus()
    first, last = int(word[0]), int(word[-1]) + 1
    return circle.pair_of(first), circle.pair_of(last)


@dataclass(frozen=True)
class ModuleGenerator:
    name: str
    idempotent: frozenset
    grading: GradingElement


@dataclass(frozen=True)
class Operation:
    source: str
    algebra: tuple
    target: str

    def __str__(self) -> str:
        return f"{self.source} -[{','.join(self.algebra)}]-> {self.target}"


@dataclass(frozen=True)
class GradedModulePresentation:
    side: str
    pmc: PointedMatchedCircle
    subgroup: SubgroupSpan
    algebra: dict  # name -> GradingElement
    generators: tuple
    operations: tuple
    torus_algebra: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.side not in ("A", "D"):
            raise ParseError(f"side must be 'A' or 'D', not {self.side!r}")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ParseError("generator names are not unique")
        for op in self.operations:
            for name in (op.source, op.target):
                if name not in names:
                    raise UnknownGenerator(f"operation {op} mentions unknown generator {name!r}")
            for a in op.algebra:
                if a not in self.algebra:
                    raise UnknownAlgebraElement(f"operation {op} uses {a!r}, which has no grading")
            if self.side == "D" and len(op.algebra) != 1:
                raise ParseError(f"type D arrow {op} must carry exactly one algebra element")

    def generator(self, name: str) -> ModuleGenerator:
        for g in self.generators:
            if g.name == name:
                return g
        raise UnknownGenerator(f"no generator named {name!r}")


def _algebra_table(raw, circle: PointedMatchedCircle, where: str) -> tuple[dict, bool]:
    if raw == "torus":
        if circle != torus():
            raise ParseError(f"{where}: the built-in torus algebra needs the genus-one circle")
        return {f"rho{w}": torus_algebra_grading(w) for w in _TORUS_WORDS}, True
    if not isinstance(raw, list):
        raise ParseError(f"{where}: expected \"torus\" or a list of algebra gradings")
    table = {}
    for i, entry in enumerate(raw):
        try:
            table[entry["name"]] = parse_element(entry["grading"], circle, f"{where}[{i}].grading")
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{where}[{i}]: needs 'name' and 'grading'") from exc
    return table, False


def presentation_from_dict(data: dict, name: str = "") -> GradedModulePresentation:
    try:
        circle = PointedMatchedCircle.from_dict(data["pmc"])
        side = data["side"]
        subgroup = grgroup.span_subgroup(
            [parse_element(g, circle, f"subgroup[{i}]") for i, g in enumerate(data.get("subgroup", []))], circle
        )
        algebra, builtin = _algebra_table(data.get("algebra", "torus"), circle, "algebra")
        gens = []
        for i, g in enumerate(data["generators"]):
            idem = frozenset(int(k) for k in g.get("idempotent", []))
            if any(not 0 <= k < len(circle.matching) for k in idem):
                raise ParseError(f"generators[{i}].idempotent: index out of range")
            gens.append(ModuleGenerator(g["name"], idem, parse_element(g["grading"], circle, f"generators[{i}].grading")))
        ops = []
        for i, op in enumerate(data.get("operations", [])):
            alg = op["algebra"]
            alg = (alg,) if isinstance(alg, str) else tuple(alg)
            ops.append(Operation(op["from"], alg, op["to"]))
    except KeyError as exc:
        raise ParseError(f"{name or 'module'}: missing field {exc.args[0]!r}") from exc
    except TypeError as exc:
        raise ParseError(f"{name or 'module'}: {exc}") from exc
    return GradedModulePresentation(side, circle, subgroup, algebra, tuple(gens), tuple(ops), builtin, name or data.get("name", ""))


def load_presentation(path: str | Path) -> GradedModulePresentation:
    return presentation_from_dict(load_json(path), name=Path(path).name)


# ----------------------------------------------------------------- consistency
@dataclass(frozen=True)
class OperationCheck:
    operation: Operation
    passed: bool
    membership: grgroup.Membership
    idempotents_ok: bool | None  # None when not checkable (custom algebra)


@dataclass(frozen=True)
class ConsistencyReport:
    module: str
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _algebra_idempotent(m: GradedModulePresentation, gen: ModuleGenerator) -> frozenset:
    if m.side == "A":
        return gen.idempotent
    return frozenset(range(len(m.pmc.matching))) - gen.idempotent


def _idempotents_ok(m: GradedModulePresentation, op: Operation) -> bool | None:
    if not m.torus_algebra:
        return None
    src = _algebra_idempotent(m, m.generator(op.source))
    tgt = _algebra_idempotent(m, m.generator(op.target))
    current = src
    for a in op.algebra:
        left, right = torus_idempotents(a)
        if current != {left}:
            return False
        current = frozenset({right})
    return current == tgt


def check_graded_D(m: GradedModulePresentation) -> ConsistencyReport:
    """Each arrow x -> a (x) y needs gr(a) gr(y) in lambda^-1 gr(x) P."""
    if m.side != "D":
        raise ParseError("check_graded_D needs a type D presentation")
    checks = []
    lam_inv = grgroup.lambda_pow(m.pmc, -1)
    for op in m.operations:
        x, y = m.generator(op.source), m.generator(op.target)
        lhs = grgroup.mul(m.algebra[op.algebra[0]], y.grading)
        res = grgroup.in_left_coset(m.subgroup, lhs, grgroup.mul(lam_inv, x.grading))
        checks.append(OperationCheck(op, res.holds, res, _idempotents_ok(m, op)))
    return ConsistencyReport(m.name, tuple(checks))


def check_graded_A(m: GradedModulePresentation) -> ConsistencyReport:
    """Each action m_{k+1}(x, a_1..a_k) = y needs gr(y) in P lambda^{k-1} gr(x) gr(a_1)...gr(a_k)."""
    if m.side != "A":
        raise ParseError("check_graded_A needs a type A presentation")
    checks = []
    for op in m.operations:
        x, y = m.generator(op.source), m.generator(op.target)
        k = len(op.algebra)
        rhs = grgroup.product(
            [grgroup.lambda_pow(m.pmc, k - 1), x.grading, *(m.algebra[a] for a in op.algebra)], m.pmc
        )
        res = grgroup.in_right_coset(m.subgroup, y.grading, rhs)
        checks.append(OperationCheck(op, res.holds, res, _idempotents_ok(m, op)))
    return ConsistencyReport(m.name, tuple(checks))


def check(m: GradedModulePresentation) -> ConsistencyReport:
    return check_graded_D(m) if m.side == "D" else check_graded_A(m)


# ----------------------------------------------------------------------- tensor
@dataclass(frozen=True)
class TensorGenerator:
    left_name: str
    right_name: str
    grading: DoubleCoset

    @property
    def name(self) -> str:
        return f"{self.left_name}*{self.right_name}"


def tensor_generators(mA: GradedModulePresentation, mD: GradedModulePresentation) -> list[TensorGenerator]:
    """Pairs occupying complementary arcs, graded by the double coset P_A gr(x) gr(y) P_D."""
    if mA.side != "A" or mD.side != "D":
        raise ParseError("tensor_generators needs a type A and a type D presentation, in that order")
    if mA.pmc != mD.pmc:
        raise CircleMismatch("the two modules are presented over different circles")
    every = frozenset(range(len(mA.pmc.matching)))
    out = []
    for x in mA.generators:
        for y in mD.generators:
            if x.idempotent | y.idempotent == every and not x.idempotent & y.idempotent:
                rep = grgroup.mul(x.grading, y.grading)
                out.append(TensorGenerator(x.name, y.name, DoubleCoset(mA.subgroup, rep, mD.subgroup)))
    return out


def relative_Q_grading(t1: TensorGenerator, t2: TensorGenerator) -> RelativeGrading:
    """q with gr(t2) = lambda^q gr(t1)."""
    a, b = t1.grading, t2.grading
    if not (grgroup.same_subgroup(a.left, b.left) and grgroup.same_subgroup(a.right, b.right)):
        raise GradingSetMismatch(f"{t1.name} and {t2.name} are graded by different coset spaces")
    return grgroup.relative_lambda(a, b)


@dataclass(frozen=True)
class GradingClass:
    base: str
    offsets: dict  # name -> Fraction or None (indeterminate)


def grading_table(tensors: Sequence[TensorGenerator], base: str | None = None) -> list[GradingClass]:
    """Split tensor generators into lambda-orbit classes with offsets from a base.

    The base of a class is its lexicographically first name unless ``base``
    names a member.  The offset of t is q with gr(t) = lambda^q gr(base).
    """
    by_name = {t.name: t for t in tensors}
    if base is not None and base not in by_name:
        raise UnknownGenerator(f"base {base!r} is not a tensor generator")
    names = sorted(by_name)
    classes: list[list[str]] = []
    for name in names:
        for cls in classes:
            if relative_Q_grading(by_name[cls[0]], by_name[name]).kind != "distinct":
                cls.append(name)
                break
        else:
            classes.append([name])
    table = []
    for cls in classes:
        root = base if base in cls else cls[0]
        offsets = {}
        for name in cls:
            r = relative_Q_grading(by_name[root], by_name[name])
            offsets[name] = r.q if r.is_same else None
        table.append(GradingClass(root, offsets))
    return table


def data_path(name: str) -> Path:
    """Path of a bundled fixture file."""
    return Path(__file__).parent / "data" / name
